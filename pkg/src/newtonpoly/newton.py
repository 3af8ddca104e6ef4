"""Newton iterate pair via the recurrence, plus coprimality certification.

The pair (P_n, Q_n) is grown by the squaring recurrence

    P_{n+1} = a P_n^2 - c Q_n^2
    Q_{n+1} = 2a P_n Q_n + b Q_n^2        (P_0, Q_0) = (x, 1)

entirely in Z[a,b,c][x].  Relative primality of the pair is certified two
ways: an exact Sylvester resultant (nonzero as a polynomial) for small n, and
randomized integer specializations of (a, b, c) followed by a univariate GCD
over the rationals for all n.  A single specialization witness with GCD
degree 0 already proves the symbolic pair coprime; the resultant route is an
independent exact certificate kept where the matrices stay small.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ResourceCapError, StructuralError
from .polyring import ABCX, MultiPoly, VariableSet, divexact

DEFAULT_CAP = 8
EXACT_RESULTANT_MAX_N = 3

# Degenerate discriminant triples probed (never asserted) by coprimality_check.
DEGENERATE_PROBES = ((1, 2, 1), (1, -2, 1), (4, 4, 1), (9, 6, 1), (1, 0, 0))


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Exact rational coefficients of f(x) = a x^2 + b x + c, with a != 0."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0:
            raise DomainError("a = 0: not a quadratic")

    @property
    def discriminant(self) -> Fraction:
        return self.b * self.b - 4 * self.a * self.c

    def require_distinct_roots(self) -> None:
        if self.discriminant == 0:
            raise DomainError("discriminant b^2 - 4ac = 0: double root")

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (self.a, self.b, self.c))


_A = MultiPoly.variable(ABCX, "a")
_B = MultiPoly.variable(ABCX, "b")
_C = MultiPoly.variable(ABCX, "c")
_X = MultiPoly.variable(ABCX, "x")


@dataclass(frozen=True)
class NewtonPair:
    """(P_n, Q_n) with the degree and leading-coefficient shape pinned down.

    deg_x P = 2^n with leading x-coefficient a^(2^n - 1);
    deg_x Q = 2^n - 1 with leading x-coefficient 2^n a^(2^n - 1).
    """

    n: int
    p: MultiPoly
    q: MultiPoly

    def __post_init__(self) -> None:
        if self.n < 0:
            raise StructuralError(f"iteration index must be nonnegative, got {self.n}")
        if self.p.varset != ABCX or self.q.varset != ABCX:
            raise StructuralError("pair polynomials must live over (a, b, c, x)")
        size = 2 ** self.n
        if self.p.degree_in("x") != size:
            raise StructuralError(f"deg_x P = {self.p.degree_in('x')}, expected {size}")
        if self.q.degree_in("x") != size - 1:
            raise StructuralError(f"deg_x Q = {self.q.degree_in('x')}, expected {size - 1}")
        if self.p.coefficients_in("x")[size] != MultiPoly.term(ABCX, 1, a=size - 1):
            raise StructuralError("leading x-coefficient of P is not a^(2^n - 1)")
        if self.q.coefficients_in("x")[size - 1] != MultiPoly.term(ABCX, size, a=size - 1):
            raise StructuralError("leading x-coefficient of Q is not 2^n a^(2^n - 1)")
        if self.n == 0 and (self.p != _X or self.q != MultiPoly.one(ABCX)):
            raise StructuralError("the 0th pair must be exactly (x, 1)")

    def to_dict(self) -> dict:
        return {"n": self.n, "p": self.p.to_dict(), "q": self.q.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "NewtonPair":
        try:
            return cls(int(data["n"]), MultiPoly.from_dict(data["p"]),
                       MultiPoly.from_dict(data["q"]))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed pair JSON: {exc}") from exc


def newton_step(coeffs: QuadraticCoeffs, z: Fraction | int) -> Fraction:
    """One exact Newton step z - f(z)/f'(z); pole at the critical point -b/2a."""
    z = Fraction(z)
    denominator = 2 * coeffs.a * z + coeffs.b
    if denominator == 0:
        critical = -coeffs.b / (2 * coeffs.a)
        raise DomainError(f"Newton step undefined at the critical point z = {critical}")
    return z - (coeffs.a * z * z + coeffs.b * z + coeffs.c) / denominator


def iterate_value(coeffs: QuadraticCoeffs, z0: Fraction | int, n: int) -> Fraction:
    """n-fold Newton step starting from z0; raises DomainError if any step poles."""
    z = Fraction(z0)
    for _ in range(n):
        z = newton_step(coeffs, z)
    return z


def iterate_pair(n: int, cap: int = DEFAULT_CAP) -> NewtonPair:
    """The exact symbolic pair (P_n, Q_n) grown by the squaring recurrence."""
    if n < 0:
        raise ValueError(f"iteration index must be nonnegative, got {n}")
    if n > cap:
        raise ResourceCapError(
            f"n = {n} exceeds the cap {cap}; coefficients grow doubly exponentially")
    p, q = _X, MultiPoly.one(ABCX)
    for _ in range(n):
        p, q = _A * p * p - _C * q * q, 2 * _A * p * q + _B * q * q
    return NewtonPair(n, p, q)


def eval_pair(pair: NewtonPair, coeffs: QuadraticCoeffs, x0: Fraction | int) -> Fraction:
    """P_n(x0)/Q_n(x0) at the given coefficients, exactly."""
    point = {"a": coeffs.a, "b": coeffs.b, "c": coeffs.c, "x": Fraction(x0)}
    denominator = pair.q.evaluate(point)
    if denominator == 0:
        raise DomainError(f"Q_{pair.n} vanishes at x0 = {x0} for these coefficients")
    return pair.p.evaluate(point) / denominator


# ---------------------------------------------------------------- resultants

def _bareiss_determinant(matrix: list[list[MultiPoly]], varset: VariableSet) -> MultiPoly:
    """Fraction-free determinant over Z[a,b,c]; divisions are exact by construction."""
    size = len(matrix)
    if size == 0:
        return MultiPoly.one(varset)
    m = [row[:] for row in matrix]
    sign = 1
    previous_pivot = MultiPoly.one(varset)
    for k in range(size - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, size):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(varset)
        pivot = m[k][k]
        for i in range(k + 1, size):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = divexact(row_i[j] * pivot - head * m[k][j], previous_pivot)
            row_i[k] = MultiPoly.zero(varset)
        previous_pivot = pivot
    return m[size - 1][size - 1] * sign


def sylvester_resultant(p: MultiPoly, q: MultiPoly, var: str = "x") -> MultiPoly:
    """Res_var(p, q) as a polynomial in the remaining variables."""
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of a zero polynomial is not defined here")
    p_coeffs = list(reversed(p.coefficients_in(var)))   # leading first
    q_coeffs = list(reversed(q.coefficients_in(var)))
    deg_p, deg_q = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = deg_p + deg_q
    varset = p.varset
    zero = MultiPoly.zero(varset)
    rows: list[list[MultiPoly]] = []
    for i in range(deg_q):
        rows.append([zero] * i + p_coeffs + [zero] * (size - deg_p - 1 - i))
    for i in range(deg_p):
        rows.append([zero] * i + q_coeffs + [zero] * (size - deg_q - 1 - i))
    return _bareiss_determinant(rows, varset)


# ---------------------------------------------------------------- specialization GCD

def _dense_univariate(poly: MultiPoly) -> list[Fraction]:
    """Ascending coefficient list of a polynomial over the single variable x."""
    if len(poly.varset) != 1:
        raise StructuralError(f"expected a univariate polynomial, got {poly.varset.names}")
    out = [Fraction(0)] * (poly.total_degree + 1)
    for mono, coeff in poly.sorted_terms():
        out[mono[0]] = Fraction(coeff)
    return out


def _strip(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _gcd_degree(u: list[Fraction], v: list[Fraction]) -> int:
    """Degree of gcd over Q of two dense univariate polynomials (Euclid)."""
    u, v = _strip(list(u)), _strip(list(v))
    while v:
        # u mod v by long division
        while len(u) >= len(v):
            factor = u[-1] / v[-1]
            shift = len(u) - len(v)
            for i, coefficient in enumerate(v):
                u[i + shift] -= factor * coefficient
            _strip(u)
            if not u:
                break
        u, v = v, u
    return len(u) - 1 if u else -1


@dataclass(frozen=True)
class TrialWitness:
    a: int
    b: int
    c: int
    gcd_degree: int

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "gcd_degree": self.gcd_degree}


@dataclass(frozen=True)
class CoprimalityReport:
    """Certificate that P_n and Q_n share no factor, per the two routes."""

    n: int
    method: str                     # "exact-resultant" or "randomized-substitution"
    trials: int
    seed: int
    witnesses: tuple[TrialWitness, ...]
    verdict: str                    # "pass" or "fail"
    resultant: MultiPoly | None = None
    resultant_nonzero: bool | None = None
    degenerate_probes: tuple[TrialWitness, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "method": self.method,
            "trials": self.trials,
            "seed": self.seed,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "verdict": self.verdict,
            "resultant": None if self.resultant is None else self.resultant.to_dict(),
            "resultant_nonzero": self.resultant_nonzero,
            "degenerate_probes": [w.to_dict() for w in self.degenerate_probes],
        }


def _specialized_gcd_degree(pair: NewtonPair, a: int, b: int, c: int) -> int:
    bindings = {"a": a, "b": b, "c": c}
    return _gcd_degree(
        _dense_univariate(pair.p.substitute(bindings)),
        _dense_univariate(pair.q.substitute(bindings)),
    )


def coprimality_check(pair: NewtonPair, trials: int = 10, seed: int = 42) -> CoprimalityReport:
    """Certify gcd(P_n, Q_n) = 1 by specialization trials (+ exact resultant for small n).

    Random integer triples (a, b, c) are drawn from [-50, 50]; draws with a = 0
    or b^2 - 4ac = 0 are redrawn, since the zero-discriminant case is exactly
    the exception the theory allows.  A fixed set of degenerate triples is also
    probed and recorded for inspection, without affecting the verdict.
    """
    if trials < 1:
        raise ValueError("at least one trial is required")
    rng = random.Random(seed)
    witnesses: list[TrialWitness] = []
    for _ in range(trials):
        while True:
            a = rng.randint(-50, 50)
            b = rng.randint(-50, 50)
            c = rng.randint(-50, 50)
            if a != 0 and b * b - 4 * a * c != 0:
                break
        witnesses.append(TrialWitness(a, b, c, _specialized_gcd_degree(pair, a, b, c)))

    resultant = None
    resultant_nonzero = None
    if pair.n <= EXACT_RESULTANT_MAX_N:
        resultant = sylvester_resultant(pair.p, pair.q, "x")
        resultant_nonzero = not resultant.is_zero
        method = "exact-resultant"
    else:
        method = "randomized-substitution"

    probes = tuple(
        TrialWitness(a, b, c, _specialized_gcd_degree(pair, a, b, c))
        for a, b, c in DEGENERATE_PROBES)

    ok = all(w.gcd_degree == 0 for w in witnesses) and resultant_nonzero is not False
    return CoprimalityReport(
        n=pair.n, method=method, trials=trials, seed=seed,
        witnesses=tuple(witnesses), verdict="pass" if ok else "fail",
        resultant=resultant, resultant_nonzero=resultant_nonzero,
        degenerate_probes=probes)
