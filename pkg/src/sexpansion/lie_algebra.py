"""Lie algebras over exact scalars, given by sparse structure constants.

Constants are stored canonically on pairs (A, B) with A < B; the (B, A)
entries are synthesized by sign on lookup, so antisymmetry holds by
construction and check_axioms is really a Jacobi verification.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .scalars import Q2

PairTable = dict[tuple[int, int], dict[int, Q2]]


@dataclass(frozen=True)
class Label:
    """Structured generator name: base symbol, index tuple, expansion tags.

    Tags accumulate outermost-first: tags[0] is the tag added by the most
    recent expansion step.
    """

    base: str
    index: tuple[int, ...] = ()
    tags: tuple[int, ...] = ()

    def tagged(self, tag: int) -> "Label":
        return Label(self.base, self.index, (tag,) + self.tags)

    def __str__(self) -> str:
        s = self.base
        if self.index:
            s += "(" + ",".join(map(str, self.index)) + ")"
        for t in self.tags:
            s += f"@{t}"
        return s


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    """Structure constants C_{AB}^C over Q(sqrt2), indexed densely."""

    def __init__(self, name: str, labels: Sequence[Label],
                 constants: PairTable):
        self.name = name
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.constants: PairTable = {}
        for (a, b), targets in constants.items():
            if a == b:
                if any(Q2.of(c) for c in targets.values()):
                    raise LieAlgebraError(f"nonzero bracket [T_{a}, T_{a}]")
                continue
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            row = self.constants.setdefault(key, {})
            for c, coeff in targets.items():
                v = Q2.of(coeff) if sign == 1 else -Q2.of(coeff)
                acc = row.get(c)
                acc = v if acc is None else acc + v
                if acc:
                    row[c] = acc
                elif c in row:
                    del row[c]
            if not row:
                del self.constants[key]
        for (a, b) in self.constants:
            if not (0 <= a < self.dim and 0 <= b < self.dim):
                raise LieAlgebraError("constant index out of range")
            if any(not (0 <= c < self.dim) for c in self.constants[(a, b)]):
                raise LieAlgebraError("constant target out of range")

    # -- bracket ------------------------------------------------------------

    def pair(self, a: int, b: int) -> dict[int, Q2]:
        """Constants of [T_a, T_b] as a sparse target map."""
        if a == b:
            return {}
        if a < b:
            return self.constants.get((a, b), {})
        return {c: -v for c, v in self.constants.get((b, a), {}).items()}

    def bracket(self, x: Sequence[Q2 | Fraction | int],
                y: Sequence[Q2 | Fraction | int]) -> list[Q2]:
        if len(x) != self.dim or len(y) != self.dim:
            raise LieAlgebraError("coefficient vector length mismatch")
        out = [Q2(0) for _ in range(self.dim)]
        for (a, b), targets in self.constants.items():
            coeff = Q2.of(x[a]) * Q2.of(y[b]) - Q2.of(x[b]) * Q2.of(y[a])
            if not coeff:
                continue
            for c, v in targets.items():
                out[c] = out[c] + coeff * v
        return out

    def basis_vector(self, i: int) -> list[Q2]:
        v = [Q2(0)] * self.dim
        v[i] = Q2(1)
        return v

    def constants_equal(self, other: "LieAlgebra") -> bool:
        if self.dim != other.dim:
            return False
        keys = set(self.constants) | set(other.constants)
        return all(self.pair(a, b) == other.pair(a, b) for (a, b) in keys)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        triples = []
        for (a, b) in sorted(self.constants):
            for c in sorted(self.constants[(a, b)]):
                v = self.constants[(a, b)][c]
                entry = {"A": a, "B": b, "C": c, "c": str(v.a)}
                if v.b:
                    entry["c_sqrt2"] = str(v.b)
                triples.append(entry)
        return {
            "name": self.name,
            "dim": self.dim,
            "labels": [{"base": l.base, "index": list(l.index),
                        "tags": list(l.tags)} for l in self.labels],
            "constants": triples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @staticmethod
    def from_json_dict(d: dict) -> "LieAlgebra":
        labels = [Label(l["base"], tuple(l["index"]), tuple(l.get("tags", ())))
                  for l in d["labels"]]
        constants: PairTable = {}
        for t in d["constants"]:
            coeff = Q2(Fraction(t["c"]), Fraction(t.get("c_sqrt2", 0)))
            constants.setdefault((t["A"], t["B"]), {})[t["C"]] = coeff
        return LieAlgebra(d["name"], labels, constants)

    @staticmethod
    def from_json(s: str) -> "LieAlgebra":
        return LieAlgebra.from_json_dict(json.loads(s))

    def commutator_lines(self) -> list[str]:
        """Human-readable nonzero brackets, one line each."""
        lines = []
        for (a, b) in sorted(self.constants):
            parts = []
            for c in sorted(self.constants[(a, b)]):
                v = self.constants[(a, b)][c]
                parts.append(f"{v} {self.labels[c]}")
            lines.append(f"[{self.labels[a]}, {self.labels[b]}] = " + " + ".join(parts))
        return lines


# -- axiom verification ------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    antisymmetry_ok: bool
    jacobi_ok: bool
    violation: Optional[tuple[int, int, int]] = None

    def __bool__(self):
        return self.ok


def check_axioms(L: LieAlgebra) -> AxiomReport:
    """Exhaustive Jacobi verification.

    Antisymmetry holds structurally for this storage format, so the report
    marks it true; the Jacobi identity is checked on all index triples with
    A < B < D (the Jacobiator is alternating once antisymmetry holds).
    """
    for a, b, d in itertools.combinations(range(L.dim), 3):
        acc: dict[int, Q2] = {}
        for (x, y, z) in ((a, b, d), (b, d, a), (d, a, b)):
            for c, c1 in L.pair(x, y).items():
                for e, c2 in L.pair(c, z).items():
                    v = acc.get(e, Q2(0)) + c1 * c2
                    if v:
                        acc[e] = v
                    elif e in acc:
                        del acc[e]
        if acc:
            return AxiomReport(False, True, False, (a, b, d))
    return AxiomReport(True, True, True)


# -- exact linear algebra over Q(sqrt2) ---------------------------------------


def mat_mul(m1: list[list[Q2]], m2: list[list[Q2]]) -> list[list[Q2]]:
    n, k, m = len(m1), len(m2), len(m2[0])
    out = [[Q2(0)] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = Q2(0)
            for t in range(k):
                acc = acc + m1[i][t] * m2[t][j]
            out[i][j] = acc
    return out


def mat_identity(n: int) -> list[list[Q2]]:
    return [[Q2(1) if i == j else Q2(0) for j in range(n)] for i in range(n)]


def mat_inverse(m: list[list[Q2]]) -> list[list[Q2]]:
    n = len(m)
    a = [[Q2.of(x) for x in row] for row in m]
    inv = mat_identity(n)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise LieAlgebraError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = a[col][col].inverse()
        a[col] = [x * scale for x in a[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def mat_rank(rows: list[list[Q2]]) -> int:
    a = [[Q2.of(x) for x in row] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        scale = a[row][col].inverse()
        a[row] = [x * scale for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        row += 1
        rank += 1
        if row == len(a):
            break
    return rank


def symmetric_signature(m: list[list[Q2]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix, exactly.

    Congruence reduction: symmetric row+column elimination, with the usual
    rank-two trick when no nonzero diagonal pivot is available.
    """
    n = len(m)
    a = [[Q2.of(x) for x in row] for row in m]
    pos = neg = 0
    used = 0
    while used < n:
        piv = next((i for i in range(used, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(used, n)
                        for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                break
            i, j = off
            # row/col add makes a nonzero diagonal entry at i
            for t in range(n):
                a[i][t] = a[i][t] + a[j][t]
            for t in range(n):
                a[t][i] = a[t][i] + a[t][j]
            piv = i
        if piv != used:
            a[used], a[piv] = a[piv], a[used]
            for t in range(n):
                a[t][used], a[t][piv] = a[t][piv], a[t][used]
        d = a[used][used]
        if d.sign() > 0:
            pos += 1
        else:
            neg += 1
        for r in range(used + 1, n):
            if a[r][used]:
                f = a[r][used] / d
                for t in range(n):
                    a[r][t] = a[r][t] - f * a[used][t]
                for t in range(n):
                    a[t][r] = a[t][r] - f * a[t][used]
        used += 1
    return pos, neg, n - pos - neg


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class KillingProfile:
    signature: tuple[int, int, int]
    derived_dim: int
    center_dim: int


def killing_matrix(L: LieAlgebra) -> list[list[Q2]]:
    n = L.dim
    k = [[Q2(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            acc = Q2(0)
            for c in range(n):
                row = L.pair(a, c)
                if not row:
                    continue
                for d, c1 in row.items():
                    c2 = L.pair(b, d).get(c)
                    if c2 is not None:
                        acc = acc + c1 * c2
            k[a][b] = acc
            k[b][a] = acc
    return k


def killing_profile(L: LieAlgebra) -> KillingProfile:
    sig = symmetric_signature(killing_matrix(L))
    bracket_images = []
    for (a, b), targets in L.constants.items():
        vec = [Q2(0)] * L.dim
        for c, v in targets.items():
            vec[c] = v
        bracket_images.append(vec)
    derived = mat_rank(bracket_images) if bracket_images else 0
    # center: x with x^A C_{AB}^C = 0 for all B, C
    rows = []
    for b in range(L.dim):
        cols: dict[int, dict[int, Q2]] = {}
        for a in range(L.dim):
            for c, v in L.pair(a, b).items():
                cols.setdefault(c, {})[a] = v
        for c, amap in cols.items():
            rows.append([amap.get(a, Q2(0)) for a in range(L.dim)])
    center = L.dim - (mat_rank(rows) if rows else 0)
    return KillingProfile((sig[0], sig[1], sig[2]), derived, center)


def change_basis(L: LieAlgebra, m: list[list[Q2]],
                 name: Optional[str] = None,
                 labels: Optional[Sequence[Label]] = None) -> LieAlgebra:
    """Transform to the basis T'_i = sum_A m[A][i] T_A."""
    n = L.dim
    if len(m) != n or any(len(row) != n for row in m):
        raise LieAlgebraError("basis matrix shape mismatch")
    m = [[Q2.of(x) for x in row] for row in m]
    minv = mat_inverse(m)
    cols = [[m[a][i] for a in range(n)] for i in range(n)]
    sparse_cols = [[(a, col[a]) for a in range(n) if col[a]] for col in cols]
    constants: PairTable = {}
    for i in range(n):
        for j in range(i + 1, n):
            acc: dict[int, Q2] = {}
            for a, ma in sparse_cols[i]:
                for b, mb in sparse_cols[j]:
                    row = L.pair(a, b)
                    if not row:
                        continue
                    f = ma * mb
                    for c, v in row.items():
                        w = acc.get(c, Q2(0)) + f * v
                        if w:
                            acc[c] = w
                        elif c in acc:
                            del acc[c]
            if not acc:
                continue
            out: dict[int, Q2] = {}
            for c, v in acc.items():
                for k in range(n):
                    if minv[k][c]:
                        w = out.get(k, Q2(0)) + minv[k][c] * v
                        if w:
                            out[k] = w
                        elif k in out:
                            del out[k]
            if out:
                constants[(i, j)] = out
    return LieAlgebra(name or f"{L.name}'",
                      list(labels) if labels is not None else list(L.labels),
                      constants)


# -- named algebras -----------------------------------------------------------


_EPS3 = {}
for _p in itertools.permutations((1, 2, 3)):
    _sign = 1
    _lst = list(_p)
    for _i in range(3):
        for _j in range(_i + 1, 3):
            if _lst[_i] > _lst[_j]:
                _sign = -_sign
    _EPS3[_p] = _sign


def eps3(i: int, j: int, k: int) -> int:
    """Levi-Civita symbol on {1,2,3}."""
    return _EPS3.get((i, j, k), 0)


def _so3_like(name: str, kk_sign: int) -> LieAlgebra:
    """Rotations J_i plus a second triplet K_i with [K,K] = kk_sign * eps J."""
    labels = [Label("J", (i,)) for i in (1, 2, 3)] + [Label("K", (i,)) for i in (1, 2, 3)]
    constants: PairTable = {}
    for i, j in itertools.combinations((1, 2, 3), 2):
        k = next(t for t in (1, 2, 3) if t not in (i, j))
        e = eps3(i, j, k)
        constants[(i - 1, j - 1)] = {k - 1: Q2(e)}            # [J,J] = eps J
        constants[(i + 2, j + 2)] = {k - 1: Q2(kk_sign * e)}  # [K,K] = +-eps J
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i == j:
                continue
            k = next(t for t in (1, 2, 3) if t not in (i, j))
            e = eps3(i, j, k)
            a, b = i - 1, j + 2
            constants.setdefault((a, b) if a < b else (b, a), {})
            row = constants[(a, b)] if a < b else constants[(b, a)]
            row[k + 2] = Q2(e if a < b else -e)               # [J_i, K_j] = eps K
    return LieAlgebra(name, labels, constants)


def make_so3() -> LieAlgebra:
    labels = [Label("J", (i,)) for i in (1, 2, 3)]
    constants: PairTable = {}
    for i, j in itertools.combinations((1, 2, 3), 2):
        k = next(t for t in (1, 2, 3) if t not in (i, j))
        constants[(i - 1, j - 1)] = {k - 1: Q2(eps3(i, j, k))}
    return LieAlgebra("so3", labels, constants)


def make_so31() -> LieAlgebra:
    return _so3_like("so31", -1)


def make_so4() -> LieAlgebra:
    return _so3_like("so4", +1)


def lorentz_eta(d: int) -> list[int]:
    return [-1] + [1] * (d - 1)


def pair_basis(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d) for b in range(a + 1, d)]


def rotation_coeff(eta: Sequence[int], ab: tuple[int, int], cd: tuple[int, int],
                   ef: tuple[int, int]) -> Q2:
    """Component of [J_ab, J_cd] on J_ef (e < f), from the quadratic
    delta/eta expression, with the full antisymmetric double sum folded
    onto the e < f basis."""
    a, b = ab
    c, d = cd

    def term(x, y, p, q, e, f):
        # eta_{xy} (delta_p^e delta_q^f - delta_q^e delta_p^f), diagonal eta
        if x != y:
            return 0
        return eta[x] * (int(p == e and q == f) - int(q == e and p == f))

    acc = 0
    for (e, f), s in ((ef, 1), ((ef[1], ef[0]), -1)):
        v = (term(a, c, b, d, e, f) + term(b, d, a, c, e, f)
             + term(c, b, d, a, e, f) + term(d, a, c, b, e, f))
        acc += s * v
    return Q2(Fraction(-acc, 2))


def boost_coeff(eta: Sequence[int], ab: tuple[int, int], c: int, e: int) -> Q2:
    """Component of [J_ab, P_c] on P_e."""
    a, b = ab
    val = 0
    if a == c:
        val -= eta[a] * (1 if b == e else 0)
    if b == c:
        val += eta[b] * (1 if a == e else 0)
    return Q2(val)


def make_ads(d: int) -> LieAlgebra:
    """Anti-de-Sitter-type algebra in d spacetime dimensions: rotations J_ab
    (a < b), translations P_a, with [P_a, P_b] = J_ab and the metric
    diag(-1, +1, ..., +1)."""
    if d not in (3, 5):
        raise LieAlgebraError("only d in {3, 5} is wired up")
    eta = lorentz_eta(d)
    pairs = pair_basis(d)
    npairs = len(pairs)
    labels = [Label("J", p) for p in pairs] + [Label("P", (a,)) for a in range(d)]
    pidx = {p: i for i, p in enumerate(pairs)}
    constants: PairTable = {}
    for i, ab in enumerate(pairs):
        for j in range(i + 1, npairs):
            cd = pairs[j]
            row = {}
            for k, ef in enumerate(pairs):
                v = rotation_coeff(eta, ab, cd, ef)
                if v:
                    row[k] = v
            if row:
                constants[(i, j)] = row
    for i, ab in enumerate(pairs):
        for c in range(d):
            row = {}
            for e in range(d):
                v = boost_coeff(eta, ab, c, e)
                if v:
                    row[npairs + e] = v
            if row:
                constants[(i, npairs + c)] = row
    for a in range(d):
        for b in range(a + 1, d):
            constants[(npairs + a, npairs + b)] = {pidx[(a, b)]: Q2(1)}
    return LieAlgebra(f"ads{d}", labels, constants)


def make_named(name: str) -> LieAlgebra:
    builders = {
        "so3": make_so3,
        "so31": make_so31,
        "so4": make_so4,
        "ads3": lambda: make_ads(3),
        "ads5": lambda: make_ads(5),
    }
    if name not in builders:
        raise LieAlgebraError(f"unknown algebra name: {name!r}")
    return builders[name]()
