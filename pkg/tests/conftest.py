import random

from newtonpoly.polyring import MultiPoly


def random_poly(rng: random.Random, varset, max_terms=6, max_exp=2, coeff_bound=99):
    """Small random polynomial for identity checks (degrees and coefficients bounded)."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in varset)
        terms[mono] = terms.get(mono, 0) + rng.randint(-coeff_bound, coeff_bound)
    return MultiPoly(varset, terms)
