#!/usr/bin/env python3
"""Download SNLI and write one JSONL file per split for negkit.

Needs network access and the `datasets` package (pip install datasets).
Writes data/snli/{train,validation,test}.jsonl relative to the repository
root, or to --out. Each line carries id, premise, hypothesis and label;
unlabeled pairs keep label -1 so that negkit can count and skip them.
"""

import argparse
import json
from pathlib import Path


def main() -> None:
    root = Path(__file__).resolve().parent.parent
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=root / "data" / "snli")
    parser.add_argument("--dataset", default="stanfordnlp/snli")
    args = parser.parse_args()

    from datasets import load_dataset

    args.out.mkdir(parents=True, exist_ok=True)
    dataset = load_dataset(args.dataset)
    for split, rows in dataset.items():
        path = args.out / f"{split}.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for i, row in enumerate(rows, start=1):
                record = {
                    "id": f"{split}:{i}",
                    "premise": row["premise"],
                    "hypothesis": row["hypothesis"],
                    "label": row["label"],
                }
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        print(f"{path}: {len(rows)} rows")


if __name__ == "__main__":
    main()
