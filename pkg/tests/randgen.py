"""Seeded random inputs shared by the test modules."""

from __future__ import annotations

from smtlab.poly import Poly, monomials_of_degree


def random_poly(rng, nvars, degree, max_terms=3, bound=3):
    monos = monomials_of_degree(nvars, degree)
    chosen = rng.sample(monos, min(len(monos), rng.randint(1, max_terms)))
    return Poly({m: rng.randint(-bound, bound) for m in chosen}, degree=degree, nvars=nvars)


def random_ideal(rng, nvars, ngens, max_deg=3):
    gens = []
    for _ in range(ngens):
        p = random_poly(rng, nvars, rng.randint(1, max_deg))
        if not p.is_zero():
            gens.append(p)
    return gens or [Poly.variable(0, nvars)]


def linear_form(coeffs):
    n = len(coeffs)
    return Poly({tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)},
                degree=1, nvars=n)


def random_linear_form(rng, nvars, bound=4):
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in range(nvars)]
        if any(coeffs):
            return linear_form(coeffs)


def degenerate_hyperplanes(rng, nvars, q):
    """Hyperplanes where some members are combinations of a few earlier ones,
    so the family sits in l-subgeneral position for various l > N."""
    forms = []
    while len(forms) < q:
        if len(forms) >= 2 and rng.random() < 0.35:
            a, b = rng.sample(forms[: max(2, len(forms) // 2)], 2)
            s, t = rng.randint(1, 3), rng.choice([-2, -1, 1, 2])
            f = a.scale(s) + b.scale(t)
            if not f.is_zero():
                forms.append(f)
        else:
            forms.append(random_linear_form(rng, nvars))
    return forms
