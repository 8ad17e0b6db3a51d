"""Projecting the pivot annotation onto a German translation.

The German word order moves the particle to the end; the projection copies
semtags, symbols and categories over the word alignment, re-derives, and
verifies that the same box results.

Run:  python demos/02_projection.py
"""

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.bank import Bank, DocumentId
from meaningbank.drs import alpha_equal, clausal
from meaningbank.pipeline import AppConfig, project_doc, run_full

EN = "He came back at 5 o'clock"
DE = "Er kam um fünf Uhr zurück"
ALIGNMENT = "0-0 1-1 2-4 3-2 4-3"  # He-Er came-kam back-zurück at-um time-time

config = AppConfig()
with tempfile.TemporaryDirectory() as tmp:
    bank = Bank(tmp)
    doc = DocumentId("00", 3178)
    bank.write_raw(doc, "en", EN)
    bank.write_raw(doc, "de", DE)
    bank.write_automatic(doc, "de", "align", ALIGNMENT + "\n")

    boxes = run_full(bank, doc, "en", config.models("en"))
    print("pivot box:")
    print(clausal(boxes[0]))

    results = project_doc(bank, doc, "en", "de",
                          config.models("en"), config.models("de"))
    result = results[0]
    print(f"projection status: {result.status}")
    print("projected target annotation:")
    for ann in result.annotations:
        print(f"  {ann.token.surface:<10} {ann.semtag.lower():<5} "
              f"{str(ann.symbol):<8} {ann.category}")
    print("\ntarget box:")
    print(clausal(result.drs))
    print("alpha-equal to the pivot box:", alpha_equal(boxes[0], result.drs))
