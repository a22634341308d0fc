#!/usr/bin/env python3
"""Growth trends on the degenerate locus and on thin slices.

Emits plot-ready CSV: degenerate-locus pair counts against the B^(4/3) shape,
and slice counts (|y_j| pinned to the box edge) against the P^2 shape.
"""

import argparse
import sys

from senary.cubic import count_degenerate, slice_count


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heights", default="8,64,512,4096,32768")
    parser.add_argument("--slice-bounds", default="2,4,8,16,24")
    args = parser.parse_args(argv)

    print("kind,bound,count,normalized")
    for B in (int(v) for v in args.heights.split(",")):
        c = count_degenerate(B).count
        print(f"degenerate,{B},{c},{c / B ** (4 / 3):.4f}")
    for P in (int(v) for v in args.slice_bounds.split(",")):
        c = slice_count(P, {P}).count
        print(f"slice,{P},{c},{c / P**2:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
