"""Exact graded-commutative exterior algebra over concrete component symbols.

The algebra is freely generated by 1-form symbols (vielbein e^a, spin
connection w^ab, and the extra fields k^ab, h^a) together with their exterior
derivatives, which are 2-form symbols.  Odd symbols anticommute, even symbols
commute, and every monomial is kept in a canonical sorted order with the
Koszul sign applied at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .lie_algebra import LieAlgebra
from .scalars import Q2, ScalarExpr

_FIELD_ORDER = {"w": 0, "e": 1, "k": 2, "h": 3}


@dataclass(frozen=True)
class FormSymbol:
    """One concrete component symbol, e.g. w^{01}, e^2, or their d-images."""

    field: str
    indices: tuple[int, ...]
    differentiated: bool = False

    def __post_init__(self):
        if self.field not in _FIELD_ORDER:
            raise ValueError(f"unknown field symbol {self.field!r}")
        if self.field in ("w", "k"):
            if len(self.indices) != 2 or not self.indices[0] < self.indices[1]:
                raise ValueError(f"{self.field} needs an ordered index pair")
        else:
            if len(self.indices) != 1:
                raise ValueError(f"{self.field} needs exactly one index")

    @property
    def degree(self) -> int:
        return 2 if self.differentiated else 1

    @property
    def sort_key(self) -> tuple:
        return (_FIELD_ORDER[self.field], self.differentiated, self.indices)

    def d(self) -> Optional["FormSymbol"]:
        if self.differentiated:
            return None
        return FormSymbol(self.field, self.indices, True)

    def __str__(self) -> str:
        name = ("d" if self.differentiated else "") + self.field
        return name + "".join(map(str, self.indices))


@lru_cache(maxsize=None)
def sym(field: str, *indices: int, d: bool = False) -> FormSymbol:
    """Interned symbol constructor; pair fields fold index order into a sign
    elsewhere, so this demands already-ordered indices."""
    return FormSymbol(field, tuple(indices), d)


def pair_symbol(field: str, a: int, b: int, d: bool = False) -> tuple[int, Optional[FormSymbol]]:
    """(sign, symbol) for an antisymmetric-pair component with free index order."""
    if a == b:
        return 0, None
    if a < b:
        return 1, sym(field, a, b, d=d)
    return -1, sym(field, b, a, d=d)


Monomial = tuple[FormSymbol, ...]


def canonical_monomial(seq: Sequence[FormSymbol]) -> tuple[int, Optional[Monomial]]:
    """Sort a symbol product into canonical order.

    Returns (sign, monomial); sign 0 with None when an odd symbol repeats.
    The sign counts transpositions of odd symbols only, since even symbols
    move freely.
    """
    odd_keys = [s.sort_key for s in seq if s.degree % 2 == 1]
    sign = 1
    for i in range(len(odd_keys)):
        for j in range(i + 1, len(odd_keys)):
            if odd_keys[i] == odd_keys[j]:
                return 0, None
            if odd_keys[i] > odd_keys[j]:
                sign = -sign
    return sign, tuple(sorted(seq, key=lambda s: s.sort_key))


def monomial_degree(m: Monomial) -> int:
    return sum(s.degree for s in m)


class ScalarForm:
    """Finite sum of canonical monomials with ScalarExpr coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[Monomial, ScalarExpr]] = None):
        self.terms: dict[Monomial, ScalarExpr] = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    @staticmethod
    def zero() -> "ScalarForm":
        return ScalarForm()

    @staticmethod
    def unit() -> "ScalarForm":
        return ScalarForm({(): ScalarExpr.const(1)})

    @staticmethod
    def of_symbol(s: FormSymbol, coeff: ScalarExpr | Q2 | int = 1) -> "ScalarForm":
        return ScalarForm({(s,): ScalarExpr.of(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarForm) and self.terms == other.terms

    def add_term(self, m: Monomial, c: ScalarExpr) -> None:
        acc = self.terms.get(m)
        acc = c if acc is None else acc + c
        if acc.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = acc

    def __add__(self, other: "ScalarForm") -> "ScalarForm":
        out = ScalarForm(dict(self.terms))
        for m, c in other.terms.items():
            out.add_term(m, c)
        return out

    def __sub__(self, other: "ScalarForm") -> "ScalarForm":
        return self + other.scaled(Q2(-1))

    def __neg__(self) -> "ScalarForm":
        return self.scaled(Q2(-1))

    def scaled(self, c: ScalarExpr | Q2 | int) -> "ScalarForm":
        c = ScalarExpr.of(c)
        if c.is_zero():
            return ScalarForm()
        out = ScalarForm()
        for m, v in self.terms.items():
            out.add_term(m, v * c)
        return out

    def degrees(self) -> set[int]:
        return {monomial_degree(m) for m in self.terms}

    def recanonicalized(self) -> "ScalarForm":
        """Rebuild every monomial from scratch; must be the identity."""
        out = ScalarForm()
        for m, c in self.terms.items():
            sign, mono = canonical_monomial(m)
            if sign:
                out.add_term(mono, c.scaled(Q2(sign)))
        return out

    def sorted_items(self) -> list[tuple[Monomial, ScalarExpr]]:
        return sorted(self.terms.items(), key=lambda kv: tuple(s.sort_key for s in kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.sorted_items():
            mono = "^".join(str(s) for s in m) if m else "1"
            bits.append(f"({c}) {mono}")
        return " + ".join(bits)


def monomial_name(m: Monomial) -> str:
    return "^".join(str(s) for s in m) if m else "1"


def parse_symbol(text: str) -> FormSymbol:
    d = text.startswith("d")
    body = text[1:] if d else text
    field, digits = body[0], body[1:]
    return FormSymbol(field, tuple(int(ch) for ch in digits), d)


def scalar_form_to_json_dict(f: ScalarForm) -> dict:
    monomials = []
    for m, c in f.sorted_items():
        coeff = []
        for (a, e), v in c.sorted_terms():
            item = {"alpha": a, "ell_pow": e, "q": str(v.a)}
            if v.b:
                item["q_sqrt2"] = str(v.b)
            coeff.append(item)
        monomials.append({"monomial": monomial_name(m), "coeff": coeff})
    return {"monomials": monomials}


def scalar_form_from_json_dict(d: dict) -> ScalarForm:
    from fractions import Fraction as _Fr
    out = ScalarForm()
    for item in d["monomials"]:
        name = item["monomial"]
        mono = () if name == "1" else tuple(parse_symbol(t) for t in name.split("^"))
        expr = ScalarExpr()
        for c in item["coeff"]:
            q = Q2(_Fr(c["q"]), _Fr(c.get("q_sqrt2", 0)))
            expr = expr + ScalarExpr({(c["alpha"], c["ell_pow"]): q})
        out.add_term(mono, expr)
    return out


def scalar_form_latex(f: ScalarForm) -> str:
    """Flat monomial listing; the JSON monomial map stays the tested truth."""
    if f.is_zero():
        return "0"
    def sym_tex(s: FormSymbol) -> str:
        field = {"w": r"\omega", "e": "e", "k": "k", "h": "h"}[s.field]
        idx = "".join(map(str, s.indices))
        core = field + "^{" + idx + "}"
        return (r"\mathrm{d}" + core) if s.differentiated else core
    lines = []
    for m, c in f.sorted_items():
        mono = r" \wedge ".join(sym_tex(s) for s in m) if m else "1"
        lines.append(f"({c.latex()})\\, {mono}")
    return "\n  + ".join(lines)


def wedge(f: "ScalarForm", g: "ScalarForm") -> ScalarForm:
    """Graded-commutative product."""
    out = ScalarForm()
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            sign, mono = canonical_monomial(m1 + m2)
            if sign:
                out.add_term(mono, (c1 * c2).scaled(Q2(sign)))
    return out


def exterior_d(f: "ScalarForm") -> ScalarForm:
    """Graded Leibniz derivation with d(base) = d-image, d(d-image) = 0."""
    out = ScalarForm()
    for m, c in f.terms.items():
        before_odd = 0
        for i, s in enumerate(m):
            ds = s.d()
            if ds is not None:
                sign, mono = canonical_monomial(m[:i] + (ds,) + m[i + 1:])
                if sign:
                    leibniz = -1 if before_odd % 2 else 1
                    out.add_term(mono, c.scaled(Q2(sign * leibniz)))
            before_odd += s.degree % 2
    return out


class LieValuedForm:
    """Map from generator index to ScalarForm component."""

    __slots__ = ("components",)

    def __init__(self, components: Optional[dict[int, ScalarForm]] = None):
        self.components: dict[int, ScalarForm] = {}
        if components:
            for i, f in components.items():
                if not f.is_zero():
                    self.components[i] = f

    @staticmethod
    def zero() -> "LieValuedForm":
        return LieValuedForm()

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return isinstance(other, LieValuedForm) and self.components == other.components

    def add_component(self, i: int, f: ScalarForm) -> None:
        acc = self.components.get(i)
        acc = f if acc is None else acc + f
        if acc.is_zero():
            self.components.pop(i, None)
        else:
            self.components[i] = acc

    def __add__(self, other: "LieValuedForm") -> "LieValuedForm":
        out = LieValuedForm({i: f for i, f in self.components.items()})
        for i, f in other.components.items():
            out.add_component(i, f)
        return out

    def __sub__(self, other: "LieValuedForm") -> "LieValuedForm":
        return self + other.scaled(Q2(-1))

    def scaled(self, c: ScalarExpr | Q2 | int) -> "LieValuedForm":
        out = LieValuedForm()
        for i, f in self.components.items():
            out.add_component(i, f.scaled(c))
        return out

    def d(self) -> "LieValuedForm":
        out = LieValuedForm()
        for i, f in self.components.items():
            out.add_component(i, exterior_d(f))
        return out

    def wedge_scalar(self, g: ScalarForm) -> "LieValuedForm":
        out = LieValuedForm()
        for i, f in self.components.items():
            out.add_component(i, wedge(f, g))
        return out


def lie_bracket_form(f: LieValuedForm, g: LieValuedForm, L: LieAlgebra) -> LieValuedForm:
    """[f, g]^C = C_{AB}^C f^A wedge g^B over all ordered generator pairs."""
    out = LieValuedForm()
    for a, fa in f.components.items():
        for b, gb in g.components.items():
            row = L.pair(a, b)
            if not row:
                continue
            prod = wedge(fa, gb)
            if prod.is_zero():
                continue
            for c, coeff in row.items():
                out.add_component(c, prod.scaled(coeff))
    return out


def curvature(A: LieValuedForm, L: LieAlgebra) -> LieValuedForm:
    """F = dA + (1/2)[A, A]."""
    return A.d() + lie_bracket_form(A, A, L).scaled(Q2(Fraction(1, 2)))


def contract(T, forms: Sequence[LieValuedForm]) -> ScalarForm:
    """Full multilinear contraction of a symmetric invariant tensor with
    Lie-valued forms; all reordering signs come from the wedge products."""
    if len(forms) != T.rank:
        raise ValueError("number of forms must equal the tensor rank")
    out = ScalarForm()
    comp_lists = [list(f.components.items()) for f in forms]
    for combo in itertools.product(*comp_lists):
        idxs = tuple(i for i, _ in combo)
        val = T.get(idxs)
        if val.is_zero():
            continue
        prod = combo[0][1]
        for _, sf in combo[1:]:
            prod = wedge(prod, sf)
            if prod.is_zero():
                break
        else:
            out = out + prod.scaled(val)
    return out
