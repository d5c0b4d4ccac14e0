"""Print the Hurwitz genera of every diagram quotient, one row per n."""
import argparse

from nodalprym.decomp import build_ledger
from nodalprym.quotients.genus import genus_diagram

COLUMNS = ["C", "Ctilde", "X", "Xtilde", "Etilde", "Y", "Ytilde", "Z", "Ztilde",
           "Ytilde/tau1", "Ytilde/tau2", "Ytilde/H", "Ztilde/sigma1", "Ztilde/sigma2", "Ztilde/H"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max", type=int, default=12)
    args = p.parse_args()
    print("n  " + " ".join(f"{c:>13}" for c in COLUMNS) + "  ledger")
    for n in range(4, args.max + 1):
        g = genus_diagram(n)
        cells = " ".join(f"{g[c]:>13}" if c in g else f"{'-':>13}" for c in COLUMNS)
        dims = "+".join(map(str, build_ledger(n).dims))
        print(f"{n:<2} {cells}  {dims}")


if __name__ == "__main__":
    main()
