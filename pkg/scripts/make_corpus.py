"""Write the black-hole corpus (plus a grid and a scale-free graph) as edge lists.

    python scripts/make_corpus.py corpus/
"""
import argparse

from specsparse.genlab import CorpusEntry, blackhole_corpus, write_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="corpus")
    ap.add_argument("--blackhole-only", action="store_true")
    args = ap.parse_args()
    entries = blackhole_corpus()
    if not args.blackhole_only:
        entries += [CorpusEntry("grid40", "grid", {"w": 40, "h": 40}, "grid"),
                    CorpusEntry("sf2000", "scalefree", {"n": 2000, "edges_per_step": 2, "seed": 1},
                                "scalefree")]
    for path in write_corpus(entries, args.out):
        print(path)


if __name__ == "__main__":
    main()
