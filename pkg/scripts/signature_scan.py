#!/usr/bin/env python3
"""Scan Levine-Tristram profiles of a family of multiples.

For a base knot B and multiples m_1 < m_2 < ... this prints the full
value set {sigma_{j/n}(m_i B)} at each level n, the (min, max) ledger,
and whether the strict ordering chain
    max J_i < min J_{i+1}
holds -- the hypothesis the certification pipeline needs.  Handy for
choosing families before running the (much slower) obstruction sweep.

Example:
    python3 scripts/signature_scan.py --base "mirror(torus(2,5))" \
        --multiples 1,3,7,15 --levels 3,5,7
"""

import argparse
from fractions import Fraction

import knotcert as kc
from knotcert.knots import parse_knot


def scan_level(base, multiples, n):
    family = [parse_knot(f"{m}*{base}") for m in multiples]
    check = kc.check_ordering_hypothesis(family, n)
    js = range(1, (n + 1) // 2)
    print(f"level n = {n}  (sampling j/n for j in {list(js)})")
    for m, e, (lo, hi) in zip(multiples, family, check.per_knot):
        vals = [kc.levine_tristram(e, Fraction(j, n)) for j in js]
        print(f"  m = {m:>4}: values {vals}  ledger ({lo}, {hi})")
    for i, hi_i, lo_next, ok in check.rows:
        rel = "<" if ok else "!<"
        print(f"  chain {i} -> {i + 1}: {hi_i} {rel} {lo_next}")
    print(f"  ordering {'holds' if check.holds else 'FAILS'}\n")
    return check.holds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--base", default="mirror(torus(2,3))",
                    help="base knot expression (default: mirror trefoil)")
    ap.add_argument("--multiples", default="1,3,7,15",
                    help="comma-separated positive multiples")
    ap.add_argument("--levels", default="3,5,7",
                    help="comma-separated levels n to sample at")
    args = ap.parse_args()

    multiples = [int(s) for s in args.multiples.split(",") if s.strip()]
    assert multiples == sorted(multiples), "multiples should be increasing"
    levels = [int(s) for s in args.levels.split(",") if s.strip()]

    print(f"base: {args.base}\nfamily: {multiples}\n")
    verdicts = [scan_level(args.base, multiples, n) for n in levels]
    good = [n for n, ok in zip(levels, verdicts) if ok]
    print(f"ordering holds at levels: {good or 'none'}")


if __name__ == "__main__":
    main()
