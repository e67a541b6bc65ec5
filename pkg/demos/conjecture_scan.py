"""Scan computed multiplier images against their conjectured closed forms.

The catalog groups' filtrations appear to follow periodic patterns in
dyadic windows of the class.  This script recomputes a stretch of each
table and compares it with the formula, flagging any disagreement.
"""

from lpres import dwyer_range, load_catalog, minimum_class, predicted_dwyer

RANGES = {
    "grigorchuk": 12,
    "twisted_twin": 8,
    "grigorchuk_supergroup": 6,
    "basilica": 9,
    "bsv": 7,
}


def scan(name, max_class):
    print("%s up to class %d" % (name, max_class))
    start = minimum_class(name)
    mismatches = 0
    for step in dwyer_range(load_catalog(name), max_class):
        if step.nclass < start:
            continue
        predicted = predicted_dwyer(name, step.nclass)
        ok = predicted == step.invariants
        mismatches += 0 if ok else 1
        print(
            "  c=%2d computed %-22s formula %-22s %s"
            % (step.nclass, step.invariants.render(), predicted.render(), "ok" if ok else "DISAGREES")
        )
    print("  %s" % ("all classes agree" if not mismatches else "%d disagreements" % mismatches))
    print()


if __name__ == "__main__":
    for name, max_class in RANGES.items():
        scan(name, max_class)
