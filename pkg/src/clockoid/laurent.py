"""Exact Laurent polynomials in one variable W with integer coefficients.

The class is deliberately small: clock-state weights only need ring
arithmetic, equality, and a canonical text form.  Coefficients are Python
ints, so there is no overflow and no rounding anywhere.
"""

from __future__ import annotations

import re

_MONOMIAL_RE = re.compile(
    r"""^\s*
        (?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*\*?\s*
        (?P<var>W(\^(?P<exp>[+-]?\d+))?)?
        \s*$""",
    re.VERBOSE,
)


class LaurentPoly:
    """An immutable Laurent polynomial sum(c_e * W^e) with integer c_e.

    Internally a dict exponent -> coefficient with no zero entries, so the
    representation is canonical and equality/hash are structural.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for exp, c in dict(coeffs).items():
                if c:
                    clean[int(exp)] = int(c)
        self._coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def var(cls) -> "LaurentPoly":
        """The variable W itself."""
        return cls({1: 1})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse a polynomial like ``"W^2 + W - W^-1"`` or ``"-2W^3 + 1"``.

        Each term follows the monomial grammar: optional sign, optional
        integer coefficient, optional ``W`` or ``W^e``.  ``"0"`` is the zero
        polynomial.
        """
        s = text.strip()
        if s in ("0", "+0", "-0"):
            return cls.zero()
        # Split into signed terms; keep the sign glued to its term.
        terms = re.findall(r"[+-]?[^+-]+(?:\^-\d+)?", _normalize_exponents(s))
        result = cls.zero()
        consumed = ""
        for term in terms:
            consumed += term
            result = result + cls.parse_monomial(_denormalize(term))
        if _normalize_exponents(s).replace(" ", "") != consumed.replace(" ", ""):
            raise ValueError(f"cannot parse polynomial: {text!r}")
        return result

    @classmethod
    def parse_monomial(cls, text: str) -> "LaurentPoly":
        """Parse a single monomial: ``1``, ``-1``, ``W``, ``-W``, ``W^-1``,
        ``3W^2``, ``0`` ..."""
        m = _MONOMIAL_RE.match(text)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse monomial: {text!r}")
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("sign") == "-":
            coeff = -coeff
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        return cls({exp: coeff})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    # -- inspection --------------------------------------------------------

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def items(self):
        """(exponent, coefficient) pairs, exponent descending."""
        return sorted(self._coeffs.items(), key=lambda ec: -ec[0])

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def substitute_one(self) -> int:
        """Evaluate at W = 1 (sum of coefficients)."""
        return sum(self._coeffs.values())

    # -- formatting --------------------------------------------------------

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for i, (exp, coeff) in enumerate(self.items()):
            mag = _format_term(abs(coeff), exp)
            if i == 0:
                parts.append(mag if coeff > 0 else "-" + mag)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + mag)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _format_term(mag: int, exp: int) -> str:
    if exp == 0:
        return str(mag)
    var = "W" if exp == 1 else f"W^{exp}"
    return var if mag == 1 else f"{mag}{var}"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    return NotImplemented


def _normalize_exponents(s: str) -> str:
    # Protect "^-" so the term splitter does not treat the exponent's sign
    # as a new term.
    return s.replace("^-", "^~")


def _denormalize(s: str) -> str:
    return s.replace("^~", "^-")
