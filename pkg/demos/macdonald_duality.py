"""Two-variable Macdonald polynomials, their eigenvalues, and the duality table.

Run with ``python demos/macdonald_duality.py``.
"""

from macdual import diffop
from macdual.dualitycheck import check_duality_poly, check_pieri
from macdual.eigensolve import eigen_poly, eigenvalue
from macdual.rootdata import Kind, WeightLabel, labels_up_to, rho_vector

A2 = Kind("A", 2)


def main():
    print("The first Macdonald operator for N = 2:")
    print("  ", diffop.macdonald(2, 1))

    print("\nMonic eigenpolynomials, expanded on orbit sums m_mu:")
    for lab in labels_up_to(A2, 3):
        P = eigen_poly(lab)
        terms = " + ".join(f"({c}) m{mu}" for mu, c in P.ordered_items())
        print(f"  P{lab.lam} = {terms}")
        print(f"      eigenvalue of D_1: {eigenvalue(lab, 1)}")

    print("\nNormalized values P_lam(q^mu t^rho) / P_lam(t^rho) are symmetric in (lam, mu):")
    labs = [l.lam for l in labels_up_to(A2, 2)]
    for lam in labs:
        row = ["ok" if check_duality_poly(A2, lam, mu).passed else "FAIL" for mu in labs]
        print(f"  {str(lam):8}", " ".join(f"{r:4}" for r in row))

    print("\nPieri rule e_1 P_(1,0) read off the explicit Pieri operator:")
    r = check_pieri(A2, (1, 0), 1)
    print("  verdict:", "pass" if r.passed else "fail", r.witness)
    P = eigen_poly(WeightLabel(A2, (2, 1)))
    print("\nValue of P_(2,1) at t^rho:", P.evaluate(rho_vector(A2)))


if __name__ == "__main__":
    main()
