"""Seed a bank directory with the worked example documents and run the
pipeline plus the German projection, so the service has data to show.

Usage:  python demos/seed_bank.py [BANK_DIR]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.bank import Bank, DocumentId
from meaningbank.pipeline import AppConfig, project_doc, run_full

EN = "He came back at 5 o'clock"
DE = "Er kam um fünf Uhr zurück"
ALIGNMENT = "0-0 1-1 2-4 3-2 4-3"


def seed(root) -> Bank:
    bank = Bank(root)
    config = AppConfig()

    doc = DocumentId("00", 3178)
    bank.write_raw(doc, "en", EN)
    bank.write_raw(doc, "de", DE)
    bank.write_automatic(doc, "de", "align", ALIGNMENT + "\n")
    run_full(bank, doc, "en", config.models("en"))
    results = project_doc(bank, doc, "en", "de",
                          config.models("en"), config.models("de"))

    second = DocumentId("00", 77)
    bank.write_raw(second, "en", "He saw a table.")
    run_full(bank, second, "en", config.models("en"))

    print(f"seeded {root}: primary document projects "
          f"{[r.status for r in results]}")
    return bank


if __name__ == "__main__":
    seed(sys.argv[1] if len(sys.argv) > 1 else "bank")
