"""Dimensions of the five-point algebra computed three ways.

Integrable bar words, monomials modulo the ideal, and the normal-word count
from the rewriting system all give 3^(d+1) - 2^(d+1).
"""
import sys

from pentaconf import bar5, p5


def main(top=4):
    print("deg  integrable  quotient  normal  formula")
    for d in range(1, top + 1):
        print("%3d  %10d  %8d  %6d  %7d" % (
            d,
            len(bar5.integrable_basis(d)),
            5 ** d - p5.reference_ideal_rank(d),
            len(p5.normal_words(d)),
            p5.hilbert_dimension(d),
        ))


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
