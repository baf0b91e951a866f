"""Solutions of the linearized pentagon versus Lie elements killed by confluence.

For each degree both spaces are computed independently and their dimensions
compared; the nonzero degrees 2, 3, 5, 7 match one generator in each of
degrees 3, 5, 7 (plus the quadratic term in degree 2).
"""
import sys
import time

from pentaconf.associator import equivalence_check


def main(top=6):
    print("deg  pentagon  confluence  equal")
    for d in range(2, top + 1):
        t = time.perf_counter()
        r = equivalence_check(d)
        print("%3d  %8d  %10d  %5s   (%.1fs)" % (d, r.dim_pentagon_side, r.dim_confluence_side, r.equal, time.perf_counter() - t))


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
