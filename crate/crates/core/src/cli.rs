//! The `negkit` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 malformed input data, 3 the
//! prediction ids do not join with the gold corpus.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::augment::{
    write_augmented, AugmentReport, AugmentationPolicy, Augmenter, AuxLexicon, LexiconError,
    Transformation, VerbList,
};
use crate::corpus::{
    read_corpus, write_examples, Corpus, Example, IngestReport, Label, ReadError, ReadOptions,
};
use crate::evaluate::{
    compare, read_predictions, render_tables, subset_eval, EvalError, EvalReport, ModelEval,
    Percent, PredictionSet, FULL_SUBSET, NEGATION_SUBSET,
};
use crate::negation::{is_negated_example, negation_stats, split_by_negation, NegationStats};

pub const EXIT_IO: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_JOIN: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "negkit",
    version,
    about = "Negation-artifact analysis and augmentation for NLI corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a corpus into its negation-only subset and the complement.
    Filter(FilterArgs),
    /// Print negation cue statistics for a corpus as one JSON record.
    Stats(StatsArgs),
    /// Generate negated examples with adjusted labels.
    Augment(AugmentArgs),
    /// Generate contrast pairs (augment with --kinds contrast_negate_premise).
    Contrast(ContrastArgs),
    /// Score prediction files against a gold corpus.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Corpus file, one JSON record per line.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Skip and count malformed records instead of failing.
    #[arg(long)]
    pub skip_malformed: bool,
    /// Fail on records with gold label -1 instead of skipping them.
    #[arg(long)]
    pub fail_on_unlabeled: bool,
}

impl InputArgs {
    fn read_options(&self) -> ReadOptions {
        ReadOptions {
            skip_unlabeled: !self.fail_on_unlabeled,
            skip_malformed: self.skip_malformed,
        }
    }
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Where to write the negation-only subset.
    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,
    /// Where to write the examples without negation.
    #[arg(long, value_name = "PATH")]
    pub complement_output: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct GenerationArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Where to write the augmented corpus.
    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,
    /// Auxiliary verb list (one form per line, '#' comments). Defaults to the bundled list.
    #[arg(long, value_name = "PATH")]
    pub aux_lexicon: Option<PathBuf>,
    /// Verb lemma list for the main-verb heuristic. Defaults to the bundled list.
    #[arg(long, value_name = "PATH")]
    pub verb_list: Option<PathBuf>,
    /// Label remapping as gold=new pairs, e.g. entailment=contradiction. Only mapped labels are augmented.
    #[arg(long, value_name = "MAP", default_value = "entailment=contradiction")]
    pub label_map: String,
    /// Rewrite bare main verbs with do/does/did ("does not bark") instead of a plain "not".
    #[arg(long)]
    pub do_support: bool,
    /// Also transform examples that already contain a negation cue.
    #[arg(long)]
    pub allow_negated: bool,
    /// Maximum number of generated examples per source example.
    #[arg(long, value_name = "N")]
    pub max_per_source: Option<usize>,
    /// Write the source examples before the generated ones.
    #[arg(long)]
    pub merge: bool,
    /// Hand-written examples (corpus format) appended to the output.
    #[arg(long, value_name = "PATH")]
    pub manual: Option<PathBuf>,
    /// Also write a copy of this corpus with the --manual examples appended.
    #[arg(long, value_name = "PATH", requires_all = ["manual", "inject_output"])]
    pub inject_into: Option<PathBuf>,
    /// Destination for --inject-into.
    #[arg(long, value_name = "PATH", requires = "inject_into")]
    pub inject_output: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[command(flatten)]
    pub generation: GenerationArgs,
    /// Transformations to apply: auto_negate_hypothesis, contrast_negate_premise, adversarial_negate_hypothesis.
    #[arg(
        long,
        value_name = "KINDS",
        value_delimiter = ',',
        default_value = "auto_negate_hypothesis"
    )]
    pub kinds: Vec<Transformation>,
}

#[derive(Debug, Args)]
pub struct ContrastArgs {
    #[command(flatten)]
    pub generation: GenerationArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubsetChoice {
    /// Full set and negation-only subset.
    Both,
    /// Full set only.
    All,
    /// Negation-only subset only.
    Negation,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Gold corpus file.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Prediction files; the first is the baseline for deltas.
    #[arg(value_name = "PREDICTIONS", required = true)]
    pub predictions: Vec<PathBuf>,
    /// Display name per prediction file, in order. Defaults to the file stem.
    #[arg(long, value_name = "NAME")]
    pub model_name: Vec<String>,
    /// Which subsets to score.
    #[arg(long, value_enum, default_value = "both")]
    pub subset: SubsetChoice,
    /// Pair predictions with gold examples by line position instead of id.
    #[arg(long)]
    pub positional_join: bool,
    /// Write machine-readable report records here.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Overwrite an existing --output file.
    #[arg(long)]
    pub force: bool,
    /// Skip and count malformed gold records instead of failing.
    #[arg(long)]
    pub skip_malformed: bool,
}

fn corpus_name(path: &Path) -> String {
    path.file_stem().map_or_else(
        || "corpus".to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(format!("cannot open {}: {e}", path.display())))
}

fn load_corpus(
    path: &Path,
    opts: ReadOptions,
    err: &mut dyn Write,
) -> Result<(Corpus, IngestReport), CliError> {
    let (corpus, report) =
        read_corpus(open(path)?, &corpus_name(path), opts).map_err(|e| match e {
            ReadError::Io(e) => CliError::io(format!("{}: {e}", path.display())),
            other => CliError::malformed(format!("{}: {other}", path.display())),
        })?;
    let _ = writeln!(err, "{}: {report}", path.display());
    Ok((corpus, report))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn create_output(path: &Path, force: bool, inputs: &[&Path]) -> Result<BufWriter<File>, CliError> {
    if inputs.iter().any(|input| same_file(input, path)) {
        return Err(CliError::io(format!(
            "refusing to overwrite input file {}",
            path.display()
        )));
    }
    if path.exists() && !force {
        return Err(CliError::io(format!(
            "{} exists; pass --force to overwrite",
            path.display()
        )));
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(format!("cannot create {}: {e}", path.display())))
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::io(format!("writing {}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(format!("writing output: {e}")))
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Filter(args) => cmd_filter(&args, out, err),
        Command::Stats(args) => cmd_stats(&args, out, err),
        Command::Augment(args) => cmd_augment(&args.generation, &args.kinds, out, err),
        Command::Contrast(args) => cmd_augment(
            &args.generation,
            &[Transformation::ContrastNegatePremise],
            out,
            err,
        ),
        Command::Evaluate(args) => cmd_evaluate(&args, out, err),
    }
}

pub fn cmd_filter(
    args: &FilterArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let input = args.input.input.as_path();
    let (corpus, _) = load_corpus(input, args.input.read_options(), err)?;
    let (negated, complement) = split_by_negation(&corpus);

    let mut sink = create_output(&args.output, args.force, &[input])?;
    write_examples(negated.iter(), &mut sink).map_err(io_err(&args.output))?;
    if let Some(path) = &args.complement_output {
        let mut sink = create_output(path, args.force, &[input])?;
        write_examples(complement.iter(), &mut sink).map_err(io_err(path))?;
    }

    let line = if corpus.is_empty() {
        "kept 0 of 0\n".to_string()
    } else {
        let share = Percent::ratio(negated.len() as u64, corpus.len() as u64);
        format!("kept {} of {} ({share}%)\n", negated.len(), corpus.len())
    };
    emit(out, &line)
}

#[derive(Serialize)]
struct StatsRecord<'a> {
    corpus: &'a str,
    #[serde(flatten)]
    stats: NegationStats,
    skipped_unlabeled: usize,
}

pub fn cmd_stats(
    args: &StatsArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let (corpus, ingest) = load_corpus(&args.input.input, args.input.read_options(), err)?;
    let record = StatsRecord {
        corpus: corpus.name(),
        stats: negation_stats(&corpus),
        skipped_unlabeled: ingest.skipped_unlabeled,
    };
    let line = serde_json::to_string(&record).expect("stats serialize") + "\n";
    emit(out, &line)
}

/// Parses `gold=new` pairs separated by commas.
pub fn parse_label_map(spec: &str) -> Result<BTreeMap<Label, Label>, String> {
    let mut map = BTreeMap::new();
    for pair in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (from, to) = pair
            .split_once('=')
            .ok_or_else(|| format!("label map entry {pair:?} is not gold=new"))?;
        let from: Label = from.trim().parse().map_err(|e| format!("{e}"))?;
        let to: Label = to.trim().parse().map_err(|e| format!("{e}"))?;
        if map.insert(from, to).is_some() {
            return Err(format!("label {from} mapped twice"));
        }
    }
    if map.is_empty() {
        return Err("label map is empty".into());
    }
    Ok(map)
}

fn lexicon_error(e: LexiconError) -> CliError {
    match e {
        LexiconError::Io { .. } => CliError::io(e.to_string()),
        other => CliError::malformed(other.to_string()),
    }
}

#[derive(Serialize)]
struct AugmentRecord {
    #[serde(flatten)]
    report: AugmentReport,
    manual: usize,
    written: usize,
}

pub fn cmd_augment(
    args: &GenerationArgs,
    kinds: &[Transformation],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let input = args.input.input.as_path();
    let lexicon = match &args.aux_lexicon {
        Some(path) => AuxLexicon::from_file(path).map_err(lexicon_error)?,
        None => AuxLexicon::default(),
    };
    let verbs = match &args.verb_list {
        Some(path) => VerbList::from_file(path).map_err(lexicon_error)?,
        None => VerbList::default(),
    };
    let policy = AugmentationPolicy {
        label_map: parse_label_map(&args.label_map).map_err(CliError::malformed)?,
        skip_already_negated: !args.allow_negated,
        max_per_source: args.max_per_source,
        do_support: args.do_support,
    };
    if policy.maps_contradiction_to_entailment() {
        let _ = writeln!(
            err,
            "WARNING: mapping contradiction to entailment; a negated contradiction hypothesis is \
             often neutral rather than entailed, so these labels are unreliable"
        );
    }

    let (corpus, _) = load_corpus(input, args.input.read_options(), err)?;
    let manual = match &args.manual {
        Some(path) => load_corpus(path, ReadOptions::default(), err)?
            .0
            .into_examples(),
        None => Vec::new(),
    };

    let augmenter = Augmenter::new(lexicon, verbs, policy);
    let augmented = augmenter.augment_corpus(&corpus, kinds);

    let mut ids: HashSet<&str> = HashSet::new();
    let sources: &[Example] = if args.merge { corpus.examples() } else { &[] };
    let all_ids = sources
        .iter()
        .map(|e| e.id.as_str())
        .chain(augmented.examples.iter().map(|a| a.example.id.as_str()))
        .chain(manual.iter().map(|e| e.id.as_str()));
    for id in all_ids {
        if !ids.insert(id) {
            return Err(CliError::malformed(format!(
                "duplicate id {id:?} in augmented output"
            )));
        }
    }

    let mut inputs: Vec<&Path> = vec![input];
    inputs.extend(args.manual.as_deref());
    inputs.extend(args.inject_into.as_deref());
    let mut sink = create_output(&args.output, args.force, &inputs)?;
    let write_err = io_err(&args.output);
    let mut written = write_examples(sources, &mut sink).map_err(&write_err)?;
    written += write_augmented(&augmented.examples, &mut sink).map_err(&write_err)?;
    written += write_examples(&manual, &mut sink).map_err(&write_err)?;

    if let (Some(target), Some(dest)) = (&args.inject_into, &args.inject_output) {
        let (validation, _) = load_corpus(target, ReadOptions::default(), err)?;
        let mut examples = validation.into_examples();
        examples.extend(manual.iter().cloned());
        let injected = Corpus::new(corpus_name(dest), examples).map_err(|e| {
            CliError::malformed(format!("injecting into {}: {e}", target.display()))
        })?;
        let mut sink = create_output(dest, args.force, &inputs)?;
        write_examples(injected.iter(), &mut sink).map_err(io_err(dest))?;
    }

    let record = AugmentRecord {
        report: augmented.report,
        manual: manual.len(),
        written,
    };
    let line = serde_json::to_string(&record).expect("report serialize") + "\n";
    emit(out, &line)
}

fn load_predictions(
    path: &Path,
    model_name: String,
    gold: &Corpus,
    positional: bool,
) -> Result<PredictionSet, CliError> {
    let records = read_predictions(open(path)?, positional).map_err(|e| match e {
        EvalError::Io(e) => CliError::io(format!("{}: {e}", path.display())),
        other => CliError::malformed(format!("{}: {other}", path.display())),
    })?;
    if positional {
        let labels: Vec<Label> = records.into_iter().map(|(_, label)| label).collect();
        return Ok(PredictionSet::positional(model_name, gold, &labels));
    }
    let entries = records
        .into_iter()
        .map(|(id, label)| (id.unwrap_or_default(), label))
        .collect();
    PredictionSet::new(model_name, entries)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

fn score(
    gold: &Corpus,
    preds: &PredictionSet,
    subset: &str,
    filter: fn(&Example) -> bool,
    err: &mut dyn Write,
) -> Result<Option<EvalReport>, CliError> {
    match subset_eval(gold, preds, subset, filter) {
        Ok((report, coverage)) => {
            if !coverage.missing.is_empty() {
                let _ = writeln!(
                    err,
                    "warning: {} [{subset}]: {} gold examples have no prediction and are excluded",
                    preds.model_name(),
                    coverage.missing.len()
                );
            }
            Ok(Some(report))
        }
        Err(EvalError::NoPairs(_)) => {
            let _ = writeln!(err, "warning: {} [{subset}]: no examples to score", preds.model_name());
            Ok(None)
        }
        Err(EvalError::EmptyJoin) => Err(CliError {
            code: EXIT_JOIN,
            message: format!(
                "{}: no prediction id matches a gold id in {}; check the id scheme or pass --positional-join",
                preds.model_name(),
                gold.name()
            ),
        }),
        Err(other) => Err(CliError::malformed(other.to_string())),
    }
}

pub fn cmd_evaluate(
    args: &EvaluateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let opts = ReadOptions {
        skip_unlabeled: true,
        skip_malformed: args.skip_malformed,
    };
    let (gold, _) = load_corpus(&args.input, opts, err)?;

    let gold_ids: HashSet<&str> = gold.iter().map(|ex| ex.id.as_str()).collect();
    let mut models = Vec::with_capacity(args.predictions.len());
    for (i, path) in args.predictions.iter().enumerate() {
        let name = args
            .model_name
            .get(i)
            .cloned()
            .unwrap_or_else(|| corpus_name(path));
        let preds = load_predictions(path, name, &gold, args.positional_join)?;
        let extra = preds.ids().filter(|id| !gold_ids.contains(id)).count();
        if extra > 0 {
            let _ = writeln!(
                err,
                "warning: {}: {extra} predictions have no gold example",
                preds.model_name()
            );
        }
        let full = match args.subset {
            SubsetChoice::Both | SubsetChoice::All => {
                score(&gold, &preds, FULL_SUBSET, |_| true, err)?
            }
            SubsetChoice::Negation => None,
        };
        let negation = match args.subset {
            SubsetChoice::Both | SubsetChoice::Negation => {
                score(&gold, &preds, NEGATION_SUBSET, is_negated_example, err)?
            }
            SubsetChoice::All => None,
        };
        models.push(ModelEval {
            model_name: preds.model_name().to_string(),
            full,
            negation,
        });
    }

    let mut deltas = Vec::new();
    if let Some((baseline, candidates)) = models.split_first() {
        for candidate in candidates {
            for (base, cand) in [
                (&baseline.full, &candidate.full),
                (&baseline.negation, &candidate.negation),
            ] {
                if let (Some(base), Some(cand)) = (base, cand) {
                    deltas
                        .push(compare(base, cand).map_err(|e| CliError::malformed(e.to_string()))?);
                }
            }
        }
    }

    let rendered = render_tables(&models, &deltas);
    emit(out, &rendered.text)?;
    if let Some(path) = &args.output {
        let mut inputs: Vec<&Path> = vec![args.input.as_path()];
        inputs.extend(args.predictions.iter().map(PathBuf::as_path));
        let mut sink = create_output(path, args.force, &inputs)?;
        let write_err = io_err(path);
        for record in &rendered.records {
            serde_json::to_writer(&mut sink, record).map_err(|e| write_err(e.into()))?;
            sink.write_all(b"\n").map_err(&write_err)?;
        }
        sink.flush().map_err(&write_err)?;
    }
    Ok(())
}
