"""Human corrections, layer statuses, and annotation conflicts.

A layer starts Bronze (untouched model output), turns Silver when the first
correction lands, and Gold once marked manually checked.  Rerunning the
pipeline over a gold layer compares the fresh automatic output against the
gold values and queues one conflict per difference for adjudication.

Run:  python demos/03_corrections_and_conflicts.py
"""

import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.bank import Bank, DocumentId
from meaningbank.pipeline import AppConfig, reannotate_doc, run_full

config = AppConfig()
with tempfile.TemporaryDirectory() as tmp:
    bank = Bank(Path(tmp) / "bank")
    doc = DocumentId("00", 42)
    bank.write_raw(doc, "en", "He came back at 5 o'clock")
    run_full(bank, doc, "en", config.models("en"))

    show = lambda: print(
        f"  semtag layer: {bank.effective(doc, 'en', 'semtag')} "
        f"[{bank.layer_status(doc, 'en', 'semtag')}]")
    print("after the automatic run:")
    show()

    print("\nan annotator corrects token 2 to a plain concept:")
    bank.add_bow(doc, "en", "semtag", 2, "CON", "alice")
    show()

    print("\nafter review the layer is flagged gold:")
    bank.set_gold(doc, "en", "semtag", True, "alice")
    show()

    print("\nreannotation reruns the models; the automatic tag for 'back' "
          "still disagrees with the gold correction, so a conflict is queued:")
    conflicts = reannotate_doc(bank, doc, "en", config.models("en"))
    for c in conflicts:
        print(f"  conflict {c.id}: position {c.position}, "
              f"gold={c.gold_value!r} vs new={c.new_value!r}")

    print("\nan expert keeps the gold value; the decision lands as a new "
          "correction:")
    resolved = bank.resolve_conflict(doc, conflicts[0].id, conflicts[0].gold_value,
                                     "bob")
    print(f"  {resolved.id} -> {resolved.state}, kept {resolved.kept!r}")
    show()

    print("\ncorpus statistics:")
    print(bank.stats_tsv())
