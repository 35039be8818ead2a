"""Exact scalar arithmetic for the whole library.

Coefficients live in the ring  Q(sqrt2)[alpha_0, alpha_1, ...][ell, ell^-1]
restricted to total degree <= 1 in the alpha symbols.  Every formula in the
constructions implemented here is linear in the arbitrary constants alpha_g,
so multiplying two alpha-carrying scalars is a programming error and raises.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Union[int, Fraction]


class AlphaLinearityError(TypeError):
    """Raised when a product would be quadratic in the alpha symbols."""


class Q2:
    """Element a + b*sqrt(2) of the quadratic field Q(sqrt 2)."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def of(x: "Q2 | Rational") -> "Q2":
        return x if isinstance(x, Q2) else Q2(x)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        other = Q2.of(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __neg__(self) -> "Q2":
        return Q2(-self.a, -self.b)

    def __add__(self, other) -> "Q2":
        other = Q2.of(other)
        return Q2(self.a + other.a, self.b + other.b)

    def __sub__(self, other) -> "Q2":
        other = Q2.of(other)
        return Q2(self.a - other.a, self.b - other.b)

    def __mul__(self, other) -> "Q2":
        other = Q2.of(other)
        return Q2(self.a * other.a + 2 * self.b * other.b,
                  self.a * other.b + self.b * other.a)

    __radd__ = __add__
    __rmul__ = __mul__

    def inverse(self) -> "Q2":
        # 1/(a+b√2) = (a−b√2)/(a²−2b²); the norm vanishes only at 0.
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        return Q2(self.a / norm, -self.b / norm)

    def __truediv__(self, other) -> "Q2":
        return self * Q2.of(other).inverse()

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(2)."""
        if self.b == 0:
            return 0 if self.a == 0 else (1 if self.a > 0 else -1)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        bigger_rational = self.a * self.a > 2 * self.b * self.b
        if self.a > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __repr__(self) -> str:
        return f"Q2({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        sep = "+" if self.b > 0 else "-"
        return f"{self.a}{sep}{abs(self.b)}*sqrt2"


SQRT2 = Q2(0, 1)
HALF_SQRT2 = Q2(0, Fraction(1, 2))  # 1/sqrt2 = sqrt2/2

Coeff = Union[Q2, int, Fraction]

# A term key is (alpha symbol index or None, power of ell).
TermKey = tuple[Optional[int], int]


class ScalarExpr:
    """Sparse sum of terms  c * alpha_i * ell^k  with c in Q(sqrt2).

    Degree in the alpha symbols is at most one per term; products that would
    exceed that raise AlphaLinearityError.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[TermKey, Q2]] = None):
        self.terms: dict[TermKey, Q2] = {}
        if terms:
            for key, val in terms.items():
                v = Q2.of(val)
                if v:
                    self.terms[key] = v

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ScalarExpr":
        return ScalarExpr()

    @staticmethod
    def const(c: Coeff, ell: int = 0) -> "ScalarExpr":
        return ScalarExpr({(None, ell): Q2.of(c)})

    @staticmethod
    def alpha(i: int, c: Coeff = 1, ell: int = 0) -> "ScalarExpr":
        return ScalarExpr({(i, ell): Q2.of(c)})

    @staticmethod
    def of(x: "ScalarExpr | Coeff") -> "ScalarExpr":
        return x if isinstance(x, ScalarExpr) else ScalarExpr.const(x)

    def copy(self) -> "ScalarExpr":
        return ScalarExpr(dict(self.terms))

    # -- ring operations ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        other = ScalarExpr.of(other)
        return self.terms == other.terms

    def __neg__(self) -> "ScalarExpr":
        return ScalarExpr({k: -v for k, v in self.terms.items()})

    def __add__(self, other) -> "ScalarExpr":
        other = ScalarExpr.of(other)
        out = dict(self.terms)
        for key, val in other.terms.items():
            acc = out.get(key)
            acc = val if acc is None else acc + val
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        res = ScalarExpr()
        res.terms = out
        return res

    def __sub__(self, other) -> "ScalarExpr":
        return self + (-ScalarExpr.of(other))

    def __mul__(self, other) -> "ScalarExpr":
        other = ScalarExpr.of(other)
        out: dict[TermKey, Q2] = {}
        for (a1, e1), c1 in self.terms.items():
            for (a2, e2), c2 in other.terms.items():
                if a1 is not None and a2 is not None:
                    raise AlphaLinearityError(
                        f"product of alpha_{a1} and alpha_{a2} terms is not "
                        "representable in the alpha-linear scalar ring")
                key = (a1 if a1 is not None else a2, e1 + e2)
                c = c1 * c2
                acc = out.get(key)
                acc = c if acc is None else acc + c
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        res = ScalarExpr()
        res.terms = out
        return res

    __radd__ = __add__
    __rmul__ = __mul__

    def scaled(self, c: Coeff, ell: int = 0) -> "ScalarExpr":
        c = Q2.of(c)
        return ScalarExpr({(a, e + ell): v * c for (a, e), v in self.terms.items()})

    # -- queries -----------------------------------------------------------

    def alpha_components(self) -> dict[Optional[int], "ScalarExpr"]:
        """Split into one ScalarExpr per alpha symbol (None = alpha-free)."""
        out: dict[Optional[int], ScalarExpr] = {}
        for (a, e), v in self.terms.items():
            out.setdefault(a, ScalarExpr()).terms[(a, e)] = v
        return out

    def specialize_alphas(self, ratios: Iterable[Coeff], base: int = 0) -> "ScalarExpr":
        """Substitute alpha_i -> ratios[i] * alpha_base."""
        rats = [Q2.of(r) for r in ratios]
        out = ScalarExpr()
        for (a, e), v in self.terms.items():
            if a is None:
                out = out + ScalarExpr({(None, e): v})
            else:
                out = out + ScalarExpr({(base, e): v * rats[a]})
        return out

    def substitute_alpha_values(self, values: Iterable[Coeff]) -> "ScalarExpr":
        """Substitute numeric values for every alpha symbol."""
        vals = [Q2.of(v) for v in values]
        out = ScalarExpr()
        for (a, e), v in self.terms.items():
            coeff = v if a is None else v * vals[a]
            out = out + ScalarExpr({(None, e): coeff})
        return out

    def single_term(self) -> tuple[TermKey, Q2]:
        if len(self.terms) != 1:
            raise ValueError(f"expected a single-term scalar, got {self}")
        return next(iter(self.terms.items()))

    def sorted_terms(self) -> list[tuple[TermKey, Q2]]:
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0] is not None, kv[0][0] or 0, kv[0][1]))

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"ScalarExpr({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, e), v in self.sorted_terms():
            part = str(v)
            if a is not None:
                part += f"*a{a}"
            if e:
                part += f"*l^{e}" if e != 1 else "*l"
            bits.append(part)
        return " + ".join(bits)

    def latex(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, e), v in self.sorted_terms():
            part = str(v) if not v.is_rational or abs(v.a) != 1 or a is None else ("-" if v.a < 0 else "")
            if a is not None:
                part += rf"\alpha_{{{a}}}"
            if e:
                part += rf"\ell^{{{e}}}"
            bits.append(part)
        out = bits[0]
        for b in bits[1:]:
            out += b if b.startswith("-") else "+" + b
        return out


def scalar_quotient(target: ScalarExpr, base: ScalarExpr) -> Optional[tuple[Q2, int]]:
    """Return (c, k) with target == c * ell^k * base, or None.

    Used for comparisons that are only defined up to one global prefactor.
    The quotient must be alpha-free for a match to count.
    """
    if base.is_zero():
        return None if target else (Q2(1), 0)
    if target.is_zero():
        return None
    (a0, e0), c0 = base.sorted_terms()[0]
    candidates = [((a, e), c) for (a, e), c in target.terms.items() if a == a0]
    if not candidates:
        return None
    (_, e1), c1 = sorted(candidates, key=lambda kv: kv[0][1])[0]
    k = e1 - e0
    c = c1 / c0
    if base.scaled(c, k) == target:
        return (c, k)
    return None
