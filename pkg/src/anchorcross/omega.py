"""Exact sparse polynomials in the symbolic weight base omega.

All edge weights and crossing totals in this package are OmegaPoly values
with rational coefficients.  Comparisons are "at large omega": lexicographic
by descending exponent, which agrees with the numeric sign for every omega
above a computable bound.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeffish = Union[int, Fraction]
PolyLike = Union["OmegaPoly", int, Fraction]


class OmegaPoly:
    """Immutable sparse polynomial: finite map exponent -> nonzero Fraction."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Coeffish] | Iterable[tuple[int, Coeffish]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            if exp < 0:
                raise ValueError("negative exponent %r" % (exp,))
            c = Fraction(coeff)
            if c:
                acc[exp] = acc.get(exp, Fraction(0)) + c
        object.__setattr__(self, "_terms", tuple(sorted(
            ((e, c) for e, c in acc.items() if c), reverse=True)))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "OmegaPoly":
        return _ZERO

    @staticmethod
    def const(c: Coeffish) -> "OmegaPoly":
        return OmegaPoly([(0, c)])

    @staticmethod
    def omega(exp: int, coeff: Coeffish = 1) -> "OmegaPoly":
        """coeff * omega**exp"""
        return OmegaPoly([(exp, coeff)])

    @staticmethod
    def coerce(value: PolyLike) -> "OmegaPoly":
        if isinstance(value, OmegaPoly):
            return value
        return OmegaPoly.const(value)

    # -- inspection ------------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        """Terms as (exponent, coefficient), highest exponent first."""
        return self._terms

    def coeff(self, exp: int) -> Fraction:
        for e, c in self._terms:
            if e == exp:
                return c
        return Fraction(0)

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return self._terms[0][0] if self._terms else -1

    def leading_coeff(self) -> Fraction:
        return self._terms[0][1] if self._terms else Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_positive_large_omega(self) -> bool:
        """True iff the value is > 0 for all sufficiently large omega."""
        return bool(self._terms) and self._terms[0][1] > 0

    def large_omega_bound(self) -> int:
        """An integer B such that for every omega > B the numeric sign of
        eval(self, omega) equals the lexicographic sign."""
        if not self._terms:
            return 1
        lead = abs(self._terms[0][1])
        rest = sum(abs(c) for _, c in self._terms[1:])
        return int(rest / lead) + 1

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: PolyLike) -> "OmegaPoly":
        other = OmegaPoly.coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return OmegaPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "OmegaPoly":
        return OmegaPoly([(e, -c) for e, c in self._terms])

    def __sub__(self, other: PolyLike) -> "OmegaPoly":
        return self + (-OmegaPoly.coerce(other))

    def __rsub__(self, other: PolyLike) -> "OmegaPoly":
        return OmegaPoly.coerce(other) - self

    def __mul__(self, other: PolyLike) -> "OmegaPoly":
        other = OmegaPoly.coerce(other)
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return OmegaPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "OmegaPoly":
        if n < 0:
            raise ValueError("negative power")
        out = OmegaPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def eval(self, omega: int) -> Fraction:
        """Exact substitution omega -> integer (omega >= 1)."""
        if omega < 1:
            raise ValueError("omega must be >= 1")
        return sum((c * Fraction(omega) ** e for e, c in self._terms), Fraction(0))

    # -- comparison -------------------------------------------------------------

    def cmp_large_omega(self, other: PolyLike) -> int:
        """Sign of (self - other) for all sufficiently large omega: -1, 0, +1."""
        diff = self - other
        if not diff._terms:
            return 0
        return 1 if diff._terms[0][1] > 0 else -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (OmegaPoly, int, Fraction)):
            return self._terms == OmegaPoly.coerce(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __lt__(self, other: PolyLike) -> bool:
        return self.cmp_large_omega(other) < 0

    def __le__(self, other: PolyLike) -> bool:
        return self.cmp_large_omega(other) <= 0

    def __gt__(self, other: PolyLike) -> bool:
        return self.cmp_large_omega(other) > 0

    def __ge__(self, other: PolyLike) -> bool:
        return self.cmp_large_omega(other) >= 0

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            if e == 0:
                parts.append(str(c))
            else:
                mono = "w" if e == 1 else "w^%d" % e
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append("%s*%s" % (c, mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


_ZERO = OmegaPoly()

W = OmegaPoly.omega  # shorthand: W(41) == omega**41


# Module-level operation names used throughout the package and the CLI.

def poly_add(a: PolyLike, b: PolyLike) -> OmegaPoly:
    return OmegaPoly.coerce(a) + b


def poly_mul(a: PolyLike, b: PolyLike) -> OmegaPoly:
    return OmegaPoly.coerce(a) * b


def poly_eval(p: PolyLike, omega: int) -> Fraction:
    return OmegaPoly.coerce(p).eval(omega)


def poly_cmp_large_omega(a: PolyLike, b: PolyLike) -> int:
    return OmegaPoly.coerce(a).cmp_large_omega(b)
