"""Askey-Wilson and Koornwinder polynomials at the preset parameter rows.

Run with ``python demos/koornwinder_presets.py``.
"""

from macdual.dualitycheck import check_duality_poly, check_involution, check_norm
from macdual.eigensolve import eigen_poly
from macdual.rootdata import Kind, WeightLabel, labels_up_to
from macdual.scalar import PRESETS

K1, K2 = Kind("K", 1), Kind("K", 2)


def main():
    generic = PRESETS["generic"]
    print("Generic monomial point (a, b, c, d) =", tuple(str(v) for v in generic))
    print("Dual parameters:", tuple(str(v) for v in generic.dual()))
    print("Involution check:", check_involution(generic).passed)

    P1 = eigen_poly(WeightLabel(K1, (1,)), generic)
    print("\nAskey-Wilson p_1 = (x + 1/x) + c with c =", P1.coefficient((0,)))

    print("\nPer-row sweep for N = 2, |lambda| <= 2 (duality and both normalization identities):")
    for name in ("DN1", "BN1", "CN1", "A2N-1", "DN+12", "A2N2", "generic"):
        k = PRESETS[name]
        labs = [l.lam for l in labels_up_to(K2, 2)]
        dual_ok = all(check_duality_poly(K2, l, m, k).passed for l in labs for m in labs)
        norm_ok = all(check_norm(K2, l, k).passed for l in labs)
        print(f"  {name:8} duality={dual_ok}  norm={norm_ok}")


if __name__ == "__main__":
    main()
