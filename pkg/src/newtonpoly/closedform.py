"""Closed-form construction of the Newton iterate pair via explicit double sums.

This is the second, independent route to (P_n, Q_n): each coefficient is read
off directly as a signed product of two binomial coefficients, never touching
the recurrence.  The same loops can run in audit mode, which emits one
provenance record per contribution so the binomial structure of every
coefficient can be inspected downstream (that structure is what bounds the
prime factors of the coefficients).

Also houses the power-difference identity

    x^n - y^n = (x - y) * sum_i (-1)^i C(n-i-1, i) (x+y)^(n-2i-1) (xy)^i

and its machine checks, which the closed-form derivation leans on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ResourceCapError
from .newton import DEFAULT_CAP
from .polyring import ABCX, XY, Monomial, MultiPoly


class BinomialTable:
    """Pascal-triangle cache of exact binomial coefficients.

    Out-of-range arguments (k < 0 or k > n) give 0, the convention the
    closed-form sums rely on to truncate themselves.
    """

    def __init__(self) -> None:
        self._rows: list[list[int]] = [[1]]

    @property
    def max_cached(self) -> int:
        return len(self._rows) - 1

    def row(self, n: int) -> list[int]:
        self._ensure(n)
        return list(self._rows[n])

    def _ensure(self, n: int) -> None:
        while len(self._rows) <= n:
            prev = self._rows[-1]
            row = [1]
            row.extend(prev[i - 1] + prev[i] for i in range(1, len(prev)))
            row.append(1)
            self._rows.append(row)

    def binomial(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError(f"binomial row must be nonnegative, got {n}")
        if k < 0 or k > n:
            return 0
        self._ensure(n)
        return self._rows[n][k]


_TABLE = BinomialTable()


def binomial(n: int, k: int) -> int:
    """Exact C(n, k), with C(n, k) = 0 outside 0 <= k <= n."""
    return _TABLE.binomial(n, k)


@dataclass(frozen=True)
class AuditRecord:
    """Provenance of one closed-form contribution: which (k, j) produced it."""

    poly: str            # "P" or "Q"
    n: int
    k: int
    j: int
    coeff: int           # signed contribution, including the (-1)^j and any leading minus
    monomial: Monomial   # exponent vector over (a, b, c, x)

    def to_dict(self) -> dict:
        return {
            "poly": self.poly,
            "n": self.n,
            "k": self.k,
            "j": self.j,
            "coeff": str(self.coeff),
            "monomial": list(self.monomial),
        }


def _p_contributions(n: int) -> Iterator[tuple[int, int, int, Monomial]]:
    # Exponent order over ABCX is (a, b, c, x).
    size = 2 ** n
    yield (size, 0, 1, (size - 1, 0, 0, size))
    for k in range(size - 1):
        outer = binomial(size, k)
        for j in range(size - k - 1):
            inner = binomial(size - k - j - 2, j)
            if inner == 0:
                continue
            coeff = -((-1) ** j) * outer * inner
            yield (k, j, coeff, (k + j, size - k - 2 * j - 2, j + 1, k))


def _q_contributions(n: int) -> Iterator[tuple[int, int, int, Monomial]]:
    size = 2 ** n
    for k in range(size):
        outer = binomial(size, k)
        for j in range(size - k):
            inner = binomial(size - k - j - 1, j)
            if inner == 0:
                continue
            coeff = ((-1) ** j) * outer * inner
            yield (k, j, coeff, (k + j, size - k - 2 * j - 1, j, k))


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"iteration index must be nonnegative, got {n}")
    if n > cap:
        raise ResourceCapError(f"n = {n} exceeds the cap {cap}; raise the cap explicitly")


def closed_p(n: int, cap: int = DEFAULT_CAP) -> MultiPoly:
    """Numerator P_n over (a, b, c, x), built term-by-term from the double sum."""
    _check_cap(n, cap)
    terms: dict[Monomial, int] = {}
    for _k, _j, coeff, mono in _p_contributions(n):
        terms[mono] = terms.get(mono, 0) + coeff
    return MultiPoly(ABCX, terms)


def closed_q(n: int, cap: int = DEFAULT_CAP) -> MultiPoly:
    """Denominator Q_n over (a, b, c, x), built term-by-term from the double sum."""
    _check_cap(n, cap)
    terms: dict[Monomial, int] = {}
    for _k, _j, coeff, mono in _q_contributions(n):
        terms[mono] = terms.get(mono, 0) + coeff
    return MultiPoly(ABCX, terms)


def closed_audit(n: int, cap: int = DEFAULT_CAP) -> list[AuditRecord]:
    """Provenance records for every closed-form contribution to P_n and Q_n.

    The records reconstruct the polynomials exactly: summing the signed
    contributions per monomial gives back closed_p(n) / closed_q(n).
    """
    _check_cap(n, cap)
    records = [AuditRecord("P", n, k, j, coeff, mono) for k, j, coeff, mono in _p_contributions(n)]
    records.extend(
        AuditRecord("Q", n, k, j, coeff, mono) for k, j, coeff, mono in _q_contributions(n))
    return records


# ---------------------------------------------------------------- power-difference identity

_X = MultiPoly.variable(XY, "x")
_Y = MultiPoly.variable(XY, "y")


def power_difference(n: int) -> MultiPoly:
    """x^n - y^n over (x, y)."""
    return MultiPoly.variable(XY, "x", n) - MultiPoly.variable(XY, "y", n)


def lemma1_rhs(n: int) -> MultiPoly:
    """Expanded (x - y) * sum_i (-1)^i C(n-i-1, i) (x+y)^(n-2i-1) (xy)^i, n >= 1."""
    if n < 1:
        raise ValueError(f"identity index must be positive, got {n}")
    plus = _X + _Y
    plus_powers = [MultiPoly.one(XY)]
    for _ in range(n - 1):
        plus_powers.append(plus_powers[-1] * plus)
    acc = MultiPoly.zero(XY)
    for i in range(n):
        coeff = binomial(n - i - 1, i)
        if coeff == 0:
            continue
        term = plus_powers[n - 2 * i - 1] * ((-1) ** i * coeff)
        acc = acc + term * MultiPoly.term(XY, 1, x=i, y=i)
    return (_X - _Y) * acc


@dataclass(frozen=True)
class IdentityCheckReport:
    """Outcome of checking an exact identity over a range of indices."""

    name: str
    max_n: int
    passed: bool
    first_failure: int | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_n": self.max_n,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


def lemma1_check(max_n: int) -> IdentityCheckReport:
    """Assert lemma1_rhs(n) == x^n - y^n as canonical polynomials for 1 <= n <= max_n."""
    for n in range(1, max_n + 1):
        if lemma1_rhs(n) != power_difference(n):
            return IdentityCheckReport("power-difference identity", max_n, False, n)
    return IdentityCheckReport("power-difference identity", max_n, True)


def lemma1_recurrence_check(max_n: int) -> IdentityCheckReport:
    """Structural check of the induction step T(n) = (x+y) T(n-1) - xy T(n-2).

    T is the generated right-hand side, with T(0) = 0; checked for 2 <= n <= max_n.
    """
    plus = _X + _Y
    xy = MultiPoly.term(XY, 1, x=1, y=1)
    prev2 = MultiPoly.zero(XY)
    prev1 = lemma1_rhs(1)
    for n in range(2, max_n + 1):
        current = lemma1_rhs(n)
        if current != plus * prev1 - xy * prev2:
            return IdentityCheckReport("induction-step recurrence", max_n, False, n)
        prev2, prev1 = prev1, current
    return IdentityCheckReport("induction-step recurrence", max_n, True)
