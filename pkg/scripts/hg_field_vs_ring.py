"""Compare the bounded preimage problem for 1 (x) u over Laurent coefficients and at fixed q.

With coefficients in Q[q, q^-1] the system specialised at q = 1 has no
solution, which rules out a preimage at that bound. With q fixed to a
number other than 1 the same finite system can become solvable.

    python3 scripts/hg_field_vs_ring.py [--bound 4] [--q0 1/2]
"""

import argparse
from fractions import Fraction

from qrpw.principal import hg_preimage_search, specialized_solvable

PAIRS = [(1, 2), (1, 3), (2, 1), (2, 3)]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=4)
    parser.add_argument("--q0", type=Fraction, default=Fraction(1, 2))
    args = parser.parse_args()
    print(f"{'(k,l)':7s} {'Laurent':10s} {'q = 1':8s} q = {args.q0}")
    for k, l in PAIRS:
        ring = hg_preimage_search(k, l, 1, args.bound).verdict
        at_one = specialized_solvable(k, l, 1, args.bound, Fraction(1)) is not None
        at_q0 = specialized_solvable(k, l, 1, args.bound, args.q0) is not None
        print(f"({k},{l})   {ring:10s} {'solvable' if at_one else 'none':8s} {'solvable' if at_q0 else 'none'}")


if __name__ == "__main__":
    main()
