"""Build (E0, D) for every catalog algebra and print dimensions, Betti numbers and the ledger tally."""
import argparse
import time

from rumin.lie import CATALOG_NAMES, builtin
from rumin.subcomplex import build_subcomplex


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(CATALOG_NAMES))
    args = ap.parse_args()
    for name in args.names:
        t = time.perf_counter()
        r = build_subcomplex(builtin(name))
        passed = sum(e.ok for e in r.ledger.values())
        print(f"{name:12s} E0 {tuple(r.dims_E0)}  Betti {tuple(r.betti)}  oracle {tuple(r.oracle_betti)}  "
              f"ledger {passed}/{len(r.ledger)}  {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
