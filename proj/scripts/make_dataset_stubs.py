#!/usr/bin/env python3
"""Generate format-faithful stand-ins for the two similarity benchmarks.

The original files are not redistributable here, so the repo ships files
with the exact published layout and row structure: a 130-pair verb file in
"word1 word2 score" form, and a 999-row tab-separated file (header + 10
columns) containing 111 A / 666 N / 222 V pairs. Loader and count tests run
against these; point the tools at the real files for real evaluations.

Usage: python3 scripts/make_dataset_stubs.py [outdir]
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from make_minicorpus import ADJECTIVES, CORE_VERBS, NOUNS, TAIL_VERBS  # noqa: E402

SEED = 977


def sample_pairs(rng, pool, n, taken):
    out = []
    while len(out) < n:
        a, b = rng.sample(pool, 2)
        key = (min(a, b), max(a, b))
        if key in taken:
            continue
        taken.add(key)
        out.append((a, b))
    return out


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/datasets")
    outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    verbs = CORE_VERBS + TAIL_VERBS

    taken = set()
    with open(outdir / "verbsim.txt", "w", encoding="utf-8") as f:
        for a, b in sample_pairs(rng, verbs, 130, taken):
            f.write(f"{a} {b} {rng.uniform(0.0, 10.0):.2f}\n")

    header = ["word1", "word2", "POS", "SimLex999", "conc(w1)", "conc(w2)",
              "concQ", "Assoc(USF)", "SimAssoc333", "SD(SimLex)"]
    rows = []
    taken = set()
    for a, b in sample_pairs(rng, ADJECTIVES, 111, taken):
        rows.append((a, b, "A"))
    for a, b in sample_pairs(rng, NOUNS, 666, taken):
        rows.append((a, b, "N"))
    for a, b in sample_pairs(rng, verbs, 222, taken):
        rows.append((a, b, "V"))
    rng.shuffle(rows)
    with open(outdir / "simlex999.tsv", "w", encoding="utf-8") as f:
        f.write("\t".join(header) + "\n")
        for a, b, pos in rows:
            cells = [a, b, pos, f"{rng.uniform(0.0, 10.0):.2f}",
                     f"{rng.uniform(1.0, 5.0):.2f}",
                     f"{rng.uniform(1.0, 5.0):.2f}",
                     str(rng.randint(1, 4)),
                     f"{rng.uniform(0.0, 9.0):.2f}",
                     str(rng.randint(0, 1)),
                     f"{rng.uniform(0.3, 2.0):.2f}"]
            f.write("\t".join(cells) + "\n")

    print(f"wrote {outdir}/verbsim.txt (130 pairs) and "
          f"{outdir}/simlex999.tsv (999 rows, 222 V)")


if __name__ == "__main__":
    main()
