"""Parser and expander for Lagrangians written in the curvature basis.

Golden expressions are written in a small text grammar:

    term  +- term ...
    term  := coefficient-atoms factor-list
    atoms := rational ('3', '3/10'), ell powers ('l^2', 'l^-3'),
             one alpha group ('a0' or '(a0+a1)' or '(a1-a2)')
    factor:= NAME '[' indices ']' with NAME in
             {eps, R, T, e, k, h, w, Dk, Dh}
    index := letter, or '_'letter for a lowered (metric-contracted) index

Every term carries exactly one eps[...] with D distinct letters; a letter
either pairs an eps slot with one factor slot, or appears twice among factors
with exactly one lowered occurrence (summed against the diagonal metric).

Expansion instantiates all concrete indices over 0..D-1 with the metric
diag(-1, +1, ..., +1), substitutes

    R[ab]  = d w^ab + eta_cc w^ac w^cb
    T[a]   = d e^a  + eta_cc w^ac e^c
    Dk[ab] = d k^ab + eta_cc (w^ac k^cb - w^bc k^ca)
    Dh[a]  = d h^a  + eta_cc w^ac h^c

and canonicalizes, producing a ScalarForm directly comparable with
transgression output.  The covariant-derivative conventions above are the
ones induced by the rotation-generator bracket; tests pin them against the
Lie-valued engine.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .forms import ScalarForm, pair_symbol, sym, wedge
from .invariant_tensor import perm_sign
from .lie_algebra import lorentz_eta
from .scalars import Q2, ScalarExpr


class TargetParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        snippet = text[max(0, pos - 20):pos + 20]
        super().__init__(f"{message} at position {pos}: ...{snippet!r}...")


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ell>l(?:\^(?P<ellexp>-?\d+))?)
  | (?P<alpha>a\d+)
  | (?P<name>[A-Za-z]+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<lbrack>\[)
  | (?P<rbrack>\])
  | (?P<plus>\+)
  | (?P<minus>-)
  | (?P<comma>,)
  | (?P<under>_)
""", re.VERBOSE)

_FACTOR_ARITY = {"R": 2, "Dk": 2, "k": 2, "w": 2, "T": 1, "e": 1, "h": 1, "Dh": 1}


@dataclass
class _Token:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise TargetParseError("unrecognized character", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Token(kind, m.group(), pos))
        pos = m.end()
    return out


@dataclass
class _Factor:
    name: str
    indices: list[tuple[bool, str]]  # (lowered, letter)
    pos: int


@dataclass
class _Term:
    sign: int
    rational: Fraction
    ell: int
    alphas: Optional[list[tuple[int, int]]]  # [(sign, alpha index)], None = no alpha
    factors: list[_Factor]
    pos: int

    def coefficient(self) -> ScalarExpr:
        base = Q2(self.rational * self.sign)
        if self.alphas is None:
            return ScalarExpr.const(base, self.ell)
        out = ScalarExpr.zero()
        for s, a in self.alphas:
            out = out + ScalarExpr.alpha(a, base * Q2(s), self.ell)
        return out


def _parse_terms(text: str) -> list[_Term]:
    tokens = _tokenize(text)
    terms: list[_Term] = []
    i = 0
    n = len(tokens)
    sign = 1
    if i < n and tokens[i].kind in ("plus", "minus"):
        sign = -1 if tokens[i].kind == "minus" else 1
        i += 1
    while i < n:
        term = _Term(sign, Fraction(1), 0, None, [], tokens[i].pos)
        got_anything = False
        while i < n and tokens[i].kind not in ("plus", "minus"):
            tok = tokens[i]
            if tok.kind == "number":
                term.rational *= Fraction(tok.value)
                i += 1
            elif tok.kind == "ell":
                exp = tok.value.split("^")
                term.ell += int(exp[1]) if len(exp) == 2 else 1
                i += 1
            elif tok.kind == "alpha":
                if term.alphas is not None:
                    raise TargetParseError("second alpha group in one term", tok.pos, text)
                term.alphas = [(1, int(tok.value[1:]))]
                i += 1
            elif tok.kind == "lparen":
                if term.alphas is not None:
                    raise TargetParseError("second alpha group in one term", tok.pos, text)
                i += 1
                group: list[tuple[int, int]] = []
                gsign = 1
                while i < n and tokens[i].kind != "rparen":
                    t = tokens[i]
                    if t.kind == "plus":
                        gsign = 1
                    elif t.kind == "minus":
                        gsign = -1
                    elif t.kind == "alpha":
                        group.append((gsign, int(t.value[1:])))
                    else:
                        raise TargetParseError("only alpha symbols allowed in groups",
                                               t.pos, text)
                    i += 1
                if i == n:
                    raise TargetParseError("unclosed alpha group", tok.pos, text)
                i += 1  # skip rparen
                if not group:
                    raise TargetParseError("empty alpha group", tok.pos, text)
                term.alphas = group
            elif tok.kind == "name":
                name = tok.value
                if name != "eps" and name not in _FACTOR_ARITY:
                    raise TargetParseError(f"unknown factor {name!r}", tok.pos, text)
                i += 1
                if i == n or tokens[i].kind != "lbrack":
                    raise TargetParseError(f"{name} needs '[indices]'", tok.pos, text)
                i += 1
                idx: list[tuple[bool, str]] = []
                lowered = False
                while i < n and tokens[i].kind != "rbrack":
                    t = tokens[i]
                    if t.kind == "under":
                        lowered = True
                    elif t.kind == "comma":
                        pass
                    elif t.kind in ("name", "ell", "alpha"):
                        for ch in t.value:
                            if not ch.isalpha():
                                raise TargetParseError("indices must be letters", t.pos, text)
                            idx.append((lowered, ch))
                            lowered = False
                    else:
                        raise TargetParseError("bad index token", t.pos, text)
                    i += 1
                if i == n:
                    raise TargetParseError("unclosed index bracket", tok.pos, text)
                i += 1  # skip rbrack
                term.factors.append(_Factor(name, idx, tok.pos))
            else:
                raise TargetParseError(f"unexpected token {tok.value!r}", tok.pos, text)
            got_anything = True
        if not got_anything:
            raise TargetParseError("empty term", tokens[i - 1].pos if i else 0, text)
        terms.append(term)
        if i < n:
            sign = -1 if tokens[i].kind == "minus" else 1
            i += 1
            if i == n:
                raise TargetParseError("dangling sign", tokens[i - 1].pos, text)
    return terms


def _validate_term(term: _Term, dimension: int, text: str) -> tuple[list[str], list[str]]:
    """Returns (eps letters in order, dummy letters)."""
    eps = [f for f in term.factors if f.name == "eps"]
    if len(eps) != 1:
        raise TargetParseError("each term needs exactly one eps[...]", term.pos, text)
    eps_letters = [ch for (lowered, ch) in eps[0].indices]
    if len(eps_letters) != dimension or len(set(eps_letters)) != dimension:
        raise TargetParseError(f"eps needs {dimension} distinct letters", eps[0].pos, text)
    if any(lowered for (lowered, _) in eps[0].indices):
        raise TargetParseError("eps indices cannot be lowered", eps[0].pos, text)
    counts: dict[str, list[tuple[bool, str]]] = {}
    for f in term.factors:
        if f.name == "eps":
            continue
        if len(f.indices) != _FACTOR_ARITY[f.name]:
            raise TargetParseError(f"{f.name} takes {_FACTOR_ARITY[f.name]} indices",
                                   f.pos, text)
        for lowered, ch in f.indices:
            counts.setdefault(ch, []).append((lowered, f.name))
    dummies = []
    for ch, occ in counts.items():
        if ch in eps_letters:
            if len(occ) != 1 or occ[0][0]:
                raise TargetParseError(
                    f"eps letter {ch!r} must appear exactly once, upper", term.pos, text)
        else:
            lowered_count = sum(1 for lo, _ in occ if lo)
            if len(occ) != 2 or lowered_count != 1:
                raise TargetParseError(
                    f"letter {ch!r} must pair one lowered with one upper occurrence",
                    term.pos, text)
            dummies.append(ch)
    for ch in eps_letters:
        if ch not in counts:
            raise TargetParseError(f"eps letter {ch!r} unused in factors", term.pos, text)
    return eps_letters, sorted(dummies)


@lru_cache(maxsize=None)
def _concrete_factor(name: str, indices: tuple[int, ...], dimension: int) -> ScalarForm:
    eta = lorentz_eta(dimension)
    if name == "e":
        return ScalarForm.of_symbol(sym("e", indices[0]))
    if name == "h":
        return ScalarForm.of_symbol(sym("h", indices[0]))
    if name in ("k", "w"):
        s, symbol = pair_symbol(name, indices[0], indices[1])
        return ScalarForm({(symbol,): ScalarExpr.const(s)}) if s else ScalarForm.zero()
    if name == "T":
        a = indices[0]
        out = ScalarForm.of_symbol(sym("e", a, d=True))
        for c in range(dimension):
            s, w = pair_symbol("w", a, c)
            if s:
                out = out + wedge(ScalarForm({(w,): ScalarExpr.const(s * eta[c])}),
                                  ScalarForm.of_symbol(sym("e", c)))
        return out
    if name == "Dh":
        a = indices[0]
        out = ScalarForm.of_symbol(sym("h", a, d=True))
        for c in range(dimension):
            s, w = pair_symbol("w", a, c)
            if s:
                out = out + wedge(ScalarForm({(w,): ScalarExpr.const(s * eta[c])}),
                                  ScalarForm.of_symbol(sym("h", c)))
        return out
    if name == "R":
        a, b = indices
        s0, dw = pair_symbol("w", a, b, d=True)
        out = ScalarForm({(dw,): ScalarExpr.const(s0)}) if s0 else ScalarForm.zero()
        for c in range(dimension):
            s1, w1 = pair_symbol("w", a, c)
            s2, w2 = pair_symbol("w", c, b)
            if s1 and s2:
                out = out + wedge(ScalarForm({(w1,): ScalarExpr.const(s1 * eta[c])}),
                                  ScalarForm({(w2,): ScalarExpr.const(s2)}))
        return out
    if name == "Dk":
        a, b = indices
        s0, dk = pair_symbol("k", a, b, d=True)
        out = ScalarForm({(dk,): ScalarExpr.const(s0)}) if s0 else ScalarForm.zero()
        for c in range(dimension):
            s1, w1 = pair_symbol("w", a, c)
            s2, k2 = pair_symbol("k", c, b)
            if s1 and s2:
                out = out + wedge(ScalarForm({(w1,): ScalarExpr.const(s1 * eta[c])}),
                                  ScalarForm({(k2,): ScalarExpr.const(s2)}))
            s3, w3 = pair_symbol("w", b, c)
            s4, k4 = pair_symbol("k", c, a)
            if s3 and s4:
                out = out + wedge(ScalarForm({(w3,): ScalarExpr.const(-s3 * eta[c])}),
                                  ScalarForm({(k4,): ScalarExpr.const(s4)}))
        return out
    raise ValueError(f"no expansion for factor {name!r}")


def expand_target(text: str, dimension: int) -> ScalarForm:
    """Parse and fully expand a curvature-basis expression to concrete
    monomials over 0..dimension-1 Lorentz indices."""
    if dimension not in (3, 5):
        raise ValueError("dimension must be 3 or 5")
    eta = lorentz_eta(dimension)
    out = ScalarForm.zero()
    for term in _parse_terms(text):
        eps_letters, dummies = _validate_term(term, dimension, text)
        coeff = term.coefficient()
        factors = [f for f in term.factors if f.name != "eps"]
        for values in itertools.permutations(range(dimension)):
            eps_sign = perm_sign(values)
            assign0 = dict(zip(eps_letters, values))
            for dvals in itertools.product(range(dimension), repeat=len(dummies)):
                assign = dict(assign0)
                weight = 1
                for ch, v in zip(dummies, dvals):
                    assign[ch] = v
                    weight *= eta[v]
                prod = ScalarForm({(): ScalarExpr.const(1)})
                for f in factors:
                    concrete = tuple(assign[ch] for (_, ch) in f.indices)
                    piece = _concrete_factor(f.name, concrete, dimension)
                    prod = wedge(prod, piece)
                    if prod.is_zero():
                        break
                if prod.is_zero():
                    continue
                out = out + prod.scaled(coeff.scaled(Q2(eps_sign * weight)))
    return out
