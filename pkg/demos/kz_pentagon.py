"""Build the KZ associator numerically and test it against the pentagon.

The same series with f0 and f1 exchanged fails the pentagon, which shows the
check is sensitive to orientation.
"""
import sys

from pentaconf.associator import classify
from pentaconf.mzvnum import kz_series, max_abs, tolerance_zero
from pentaconf.p5 import residual


def main(N=4, digits=60):
    phi = kz_series(N, digits)
    print("coefficient of f0f1:", phi.coefficient("01").decimal(25))
    for kind in ("pentagon", "two_cycle"):
        mx, bound = max_abs(residual(kind, phi).terms.values())
        print("%-9s residual %.2e (bound %.2e)" % (kind, mx, bound))
    swapped = kz_series(N, digits, swap=True)
    mx, _ = max_abs(residual("pentagon", swapped).terms.values())
    print("pentagon residual with f0 <-> f1: %.3f" % mx)
    print("classification:", classify(phi, tolerance_zero(1e-45)).classification)


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
