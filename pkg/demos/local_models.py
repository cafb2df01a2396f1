"""Classify a handful of homogeneous local models and show their Milnor numbers.

Run with ``python3 demos/local_models.py``.
"""

from krtool.errors import KRError
from krtool.local_model import HomogPoly2, classify, milnor_number, symmetry_order

MODELS = [
    ("x^2 + y^2", 2, [1, 0, 1]),
    ("x^2 - y^2", 2, [1, 0, -1]),
    ("x y", 2, [0, 1, 0]),
    ("x^3 - 3 x y^2", 3, [1, 0, -3, 0]),
    ("(x^2 + y^2)^2", 4, [1, 0, 2, 0, 1]),
    ("(x^2 + y^2)(x^2 + 2 y^2)", 4, [1, 0, 3, 0, 2]),
    ("(x^2 + 2 y^2)(2 x^2 + y^2)", 4, [2, 0, 5, 0, 2]),
    ("x^2 y", 3, [0, 1, 0, 0]),
]


def main():
    print(f"{'model':28s} {'type':8s} {'n_z':>4s} {'mu':>4s} {'symmetry':>9s}")
    for label, d, coeffs in MODELS:
        g = HomogPoly2.germ(d, coeffs)
        try:
            lt = classify(g)
            mu = milnor_number(g).mu_real
        except KRError as exc:
            print(f"{label:28s} rejected: {exc.describe()}")
            continue
        mu_text = "inf" if mu is None else str(mu)
        n_z = "" if lt.n_z is None else str(lt.n_z)
        print(f"{label:28s} {lt.label:8s} {n_z:>4s} {mu_text:>4s} {str(symmetry_order(g)):>9s}")


if __name__ == "__main__":
    main()
