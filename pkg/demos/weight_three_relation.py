"""Walk the weight-3 confluence relation from the standard relations to zeta values.

Prints the standard relations of degree 3, their images under lambda, and
checks numerically that the image is zeta(2,1) - zeta(3) = 0.
"""
from pentaconf.confluence import icf_basis, ist_basis, map_lambda
from pentaconf.mzvnum import L_num


def main():
    ist = ist_basis(3)
    print("standard relations of degree 3: %d" % ist.rank)
    for r in ist.rows:
        img = map_lambda(r)
        if img:
            print("  %s  ->  %s" % (r, img))
    (rel,) = icf_basis(3).rows
    print("confluence relation of weight 3:", rel)
    v = L_num(rel, 50)
    print("L(relation) = %s  (error bound %.1e)" % (v.decimal(10), float(v.error())))


if __name__ == "__main__":
    main()
