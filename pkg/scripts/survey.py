"""Sweep the catalog and print quotients plus property verdicts per prime.

Usage:
    python3 scripts/survey.py            # every catalog group of order <= 400
    python3 scripts/survey.py S5 A6      # named groups only
    python3 scripts/survey.py --max 2000 # raise the order cut

One line per (group, prime dividing |G|): the two quotient shapes, the
five property verdicts, and the count comparison.  Everything is exact;
a run is an experiment only in the sense that the row set is whatever
the arguments select.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from indres.catalog import BUILDERS, build
from indres.correspondence import (
    PROPERTIES,
    check_property,
    isaacs_navarro_check,
    make_instance,
    quotients_q1_q2,
)
from indres.groupcore import prime_factors


def survey(names, max_order):
    for name in names:
        G = build(name)
        if G.order() > max_order:
            continue
        for p in prime_factors(G.order()):
            t0 = time.perf_counter()
            inst = make_instance(G, p, name=name)
            q1, q2, per_block = quotients_q1_q2(inst)
            verdicts = {
                w: check_property(inst, w).holds for w in PROPERTIES
            }
            counts_ok, _, _ = isaacs_navarro_check(inst)
            flags = " ".join(
                w if ok else w.upper() + "!" for w, ok in verdicts.items()
            )
            print(
                f"{name:8s} p={p:<2d} |G|={G.order():<6d} "
                f"Q1={str(q1):18s} Q2={str(q2):18s} "
                f"[{flags}] counts={'ok' if counts_ok else 'MISMATCH'} "
                f"({time.perf_counter() - t0:.2f}s)"
            )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", help="catalog names; default: all")
    ap.add_argument("--max", type=int, default=400, dest="max_order")
    args = ap.parse_args()
    names = args.groups or sorted(BUILDERS)
    for name in names:
        if name not in BUILDERS:
            ap.error(f"unknown group {name!r}; choices: {', '.join(sorted(BUILDERS))}")
    survey(names, args.max_order)


if __name__ == "__main__":
    main()
