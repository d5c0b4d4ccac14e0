"""Rewrite the golden corpus from the current pipeline.

Run after an intentional change to a model; review the diff before committing.
"""
import argparse

from nodalprym.quotients.golden import CORPUS_ROOT, write_corpus


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--range", default="4..8", help="degrees A..B")
    p.add_argument("--root", default=str(CORPUS_ROOT))
    args = p.parse_args()
    a, b = (int(s) for s in args.range.split(".."))
    for path in write_corpus(range(a, b + 1), args.root):
        print(path)


if __name__ == "__main__":
    main()
