"""Genus-two polynomials and their t -> infinity limits.

Run with ``python demos/genus_two_limits.py``.
"""

from macdual import diffop
from macdual.dualitycheck import check_split, check_toda, check_whittaker, whittaker_limit
from macdual.eigensolve import eigen_poly, eigenvalue
from macdual.rootdata import GENUS_TWO, WeightLabel, labels_up_to


def main():
    labs = labels_up_to(GENUS_TWO, 2)
    print(f"{len(labs)} genus-two labels with max entry <= 2:")
    for lab in labs:
        E = [str(eigenvalue(lab, l)) for l in (1, 2, 3)]
        print(f"  {lab.lam}: eigenvalues {', '.join(E)}")

    lab = WeightLabel(GENUS_TWO, (2, 1, 1))
    P = eigen_poly(lab)
    print("\nP_(2,1,1) has", len(P.expansion), "orbit-sum terms; its limit is")
    print("  ", whittaker_limit(P.to_laurent()))
    print("Factorizes into univariate limits:", check_whittaker(GENUS_TWO, lab.lam).passed)

    print("\nOperator limits:")
    print("  D_12 limit    :", diffop.op_t_limit(diffop.genus_two(1, 2), -1))
    print("  split identity:", check_split().passed)
    print("  Pieri -> Toda :", check_toda(GENUS_TWO).passed)


if __name__ == "__main__":
    main()
