//! Text tables in the layout of the usual accuracy report, plus one
//! machine-readable record per table row.

use serde::Serialize;

use super::{DeltaReport, EvalReport, Percent, FULL_SUBSET, NEGATION_SUBSET};
use crate::corpus::Label;

/// A model's reports on the full set and on the negation-only subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelEval {
    pub model_name: String,
    pub full: Option<EvalReport>,
    pub negation: Option<EvalReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub model: String,
    pub subset: String,
    /// A label name, or `all` for the overall row.
    pub class: String,
    pub n: u64,
    pub n_correct: u64,
    pub accuracy_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub records: Vec<ReportRecord>,
}

type DeltaMetric = fn(&DeltaReport) -> Option<Percent>;

fn display_name(label: Label) -> &'static str {
    match label {
        Label::Entailment => "Entailment",
        Label::Neutral => "Neutral",
        Label::Contradiction => "Contradiction",
    }
}

fn rounded(p: Percent) -> f64 {
    p.tenths() as f64 / 10.0
}

fn pct_cell(p: Option<Percent>) -> String {
    p.map_or_else(|| "n/a".to_string(), |p| p.to_string())
}

fn table(title: &str, header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut out = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            out.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count()));
        }
        out.trim_end().to_string()
    };
    let mut out = format!("{title}\n{}\n", line(header));
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

fn strings(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

fn records_for(report: &EvalReport, out: &mut Vec<ReportRecord>) {
    out.push(ReportRecord {
        model: report.model_name.clone(),
        subset: report.subset_name.clone(),
        class: "all".into(),
        n: report.n_total,
        n_correct: report.n_correct,
        accuracy_pct: rounded(report.overall),
    });
    for class in &report.per_class {
        if let Some(acc) = class.accuracy {
            out.push(ReportRecord {
                model: report.model_name.clone(),
                subset: report.subset_name.clone(),
                class: class.label.name().into(),
                n: class.n,
                n_correct: class.n_correct,
                accuracy_pct: rounded(acc),
            });
        }
    }
}

fn size_and_accuracy(report: Option<&EvalReport>) -> [String; 2] {
    match report {
        Some(r) => [r.n_total.to_string(), r.overall.to_string()],
        None => ["0".into(), "n/a".into()],
    }
}

/// Renders the four accuracy tables and, when deltas are given, a table of
/// percentage-point differences against the baseline.
pub fn render_tables(models: &[ModelEval], deltas: &[DeltaReport]) -> Rendered {
    let mut text = String::new();

    let baseline = models.first();
    let title = match baseline {
        Some(m) => format!("Table 1: Baseline model accuracy ({})", m.model_name),
        None => "Table 1: Baseline model accuracy".to_string(),
    };
    let mut rows = Vec::new();
    if let Some(m) = baseline {
        for (name, report) in [
            ("Full Validation Set", &m.full),
            ("Negation-Only Subset", &m.negation),
        ] {
            let [n, acc] = size_and_accuracy(report.as_ref());
            rows.push(vec![name.to_string(), n, acc]);
        }
    }
    text.push_str(&table(
        &title,
        &strings(&["Dataset", "N", "Accuracy (%)"]),
        &rows,
    ));

    let per_model = |pick: fn(&ModelEval) -> Option<&EvalReport>| -> Vec<Vec<String>> {
        models
            .iter()
            .map(|m| {
                let [n, acc] = size_and_accuracy(pick(m));
                vec![m.model_name.clone(), n, acc]
            })
            .collect()
    };
    let header = strings(&["Model", "N", "Accuracy (%)"]);
    text.push('\n');
    text.push_str(&table(
        "Table 2: Model accuracy on negation-only subset",
        &header,
        &per_model(|m| m.negation.as_ref()),
    ));
    text.push('\n');
    text.push_str(&table(
        "Table 3: Overall model accuracy",
        &header,
        &per_model(|m| m.full.as_ref()),
    ));

    let mut header = strings(&["Label"]);
    header.extend(models.iter().map(|m| m.model_name.clone()));
    let rows: Vec<Vec<String>> = Label::ALL
        .iter()
        .map(|&label| {
            let mut row = vec![display_name(label).to_string()];
            row.extend(
                models
                    .iter()
                    .map(|m| pct_cell(m.negation.as_ref().and_then(|r| r.class(label).accuracy))),
            );
            row
        })
        .collect();
    text.push('\n');
    text.push_str(&table(
        "Table 4: Per-class accuracy on negation-only subset",
        &header,
        &rows,
    ));

    if !deltas.is_empty() {
        let mut candidates: Vec<&str> = Vec::new();
        for d in deltas {
            if !candidates.contains(&d.candidate.as_str()) {
                candidates.push(&d.candidate);
            }
        }
        let mut header = strings(&["Subset", "Metric"]);
        header.extend(candidates.iter().map(|c| c.to_string()));
        let lookup = |subset: &str, candidate: &str| {
            deltas
                .iter()
                .find(|d| d.subset_name == subset && d.candidate == candidate)
        };
        let mut rows = Vec::new();
        for subset in [FULL_SUBSET, NEGATION_SUBSET] {
            if !deltas.iter().any(|d| d.subset_name == subset) {
                continue;
            }
            let mut metrics: Vec<(String, DeltaMetric)> =
                vec![("overall".into(), |d| Some(d.overall))];
            if subset == NEGATION_SUBSET {
                metrics.push(("entailment".into(), |d| d.class(Label::Entailment)));
                metrics.push(("neutral".into(), |d| d.class(Label::Neutral)));
                metrics.push(("contradiction".into(), |d| d.class(Label::Contradiction)));
            }
            for (metric, get) in metrics {
                let mut row = vec![subset.to_string(), metric];
                row.extend(candidates.iter().map(|c| {
                    lookup(subset, c)
                        .and_then(get)
                        .map_or_else(|| "n/a".into(), Percent::signed)
                }));
                rows.push(row);
            }
        }
        let title = format!(
            "Deltas vs {} (percentage points)",
            deltas.first().map_or("baseline", |d| d.baseline.as_str())
        );
        text.push('\n');
        text.push_str(&table(&title, &header, &rows));
    }

    let mut records = Vec::new();
    for m in models {
        for report in [&m.full, &m.negation].into_iter().flatten() {
            records_for(report, &mut records);
        }
    }
    Rendered { text, records }
}
