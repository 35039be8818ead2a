"""Symmetric invariant tensors with symbolic alpha coefficients.

Tensors are stored sparsely on sorted generator-index tuples; lookups sort
their argument, which is exactly the statement that the multilinear form is
symmetric under slot permutation (form-degree signs live in the exterior
algebra, never in the tensor).
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lie_algebra import LieAlgebra, pair_basis
from .scalars import Q2, ScalarExpr
from .semigroup import Semigroup


class TensorError(ValueError):
    pass


def perm_sign(values: Sequence[int]) -> int:
    """Sign of the permutation taking sorted(values) to values; 0 on repeats."""
    n = len(values)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if values[i] == values[j]:
                return 0
            if values[i] > values[j]:
                sign = -sign
    return sign


class InvariantTensor:
    def __init__(self, rank: int, entries: Optional[dict[tuple[int, ...], ScalarExpr]] = None):
        if rank < 2:
            raise TensorError("tensor rank must be >= 2")
        self.rank = rank
        self.entries: dict[tuple[int, ...], ScalarExpr] = {}
        if entries:
            for key, val in entries.items():
                self.set_entry(key, val)

    def set_entry(self, indices: Iterable[int], value: ScalarExpr) -> None:
        key = tuple(sorted(indices))
        if len(key) != self.rank:
            raise TensorError("index tuple length does not match rank")
        if value.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def get(self, indices: Iterable[int]) -> ScalarExpr:
        return self.entries.get(tuple(sorted(indices)), ScalarExpr.zero())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantTensor) and self.rank == other.rank \
            and self.entries == other.entries

    def scaled(self, c) -> "InvariantTensor":
        return InvariantTensor(self.rank,
                               {k: v * ScalarExpr.of(c) for k, v in self.entries.items()})

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        dump = []
        for key in sorted(self.entries):
            coeff = []
            for (a, e), v in self.entries[key].sorted_terms():
                item = {"alpha": a, "ell_pow": e, "q": str(v.a)}
                if v.b:
                    item["q_sqrt2"] = str(v.b)
                coeff.append(item)
            dump.append({"indices": list(key), "coeff": coeff})
        return {"rank": self.rank, "entries": dump}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @staticmethod
    def from_json_dict(d: dict) -> "InvariantTensor":
        t = InvariantTensor(d["rank"])
        for item in d["entries"]:
            expr = ScalarExpr()
            for c in item["coeff"]:
                q = Q2(Fraction(c["q"]), Fraction(c.get("q_sqrt2", 0)))
                expr = expr + ScalarExpr({(c["alpha"], c["ell_pow"]): q})
            t.set_entry(tuple(item["indices"]), expr)
        return t

    @staticmethod
    def from_json(s: str) -> "InvariantTensor":
        return InvariantTensor.from_json_dict(json.loads(s))


# -- epsilon tensors of the base algebras -------------------------------------


def epsilon_tensor(d: int, scale: Q2 = Q2(1)) -> InvariantTensor:
    """The rank-(2 + ...) epsilon invariant of the d-dimensional algebra:
    rank 3 on (J, J, P) slots for d = 5, rank 2 on (J, P) for d = 3.
    The customary 1/8 (resp. 1/4) normalization is absorbed unless a scale
    is passed explicitly."""
    pairs = pair_basis(d)
    pidx = {p: i for i, p in enumerate(pairs)}
    npairs = len(pairs)
    if d == 5:
        t = InvariantTensor(3)
        for (a, b) in pairs:
            rest = [x for x in range(d) if x not in (a, b)]
            for (c, dd) in itertools.combinations(rest, 2):
                e = next(x for x in rest if x not in (c, dd))
                sign = perm_sign((a, b, c, dd, e))
                if sign:
                    t.set_entry((pidx[(a, b)], pidx[(c, dd)], npairs + e),
                                ScalarExpr.const(scale * Q2(sign)))
        return t
    if d == 3:
        t = InvariantTensor(2)
        for (a, b) in pairs:
            c = next(x for x in range(d) if x not in (a, b))
            sign = perm_sign((a, b, c))
            t.set_entry((pidx[(a, b)], npairs + c),
                        ScalarExpr.const(scale * Q2(sign)))
        return t
    raise TensorError("epsilon tensor wired for d in {3, 5} only")


# -- lifting -------------------------------------------------------------------


def lift_h(n: int, target: LieAlgebra, base_tensor: InvariantTensor,
           n_alphas: Optional[int] = None) -> InvariantTensor:
    """Lift through the halved Z_{2n} expansion: the entry on tags
    (i_1..i_r) picks up alpha_g where g = sum of tags mod 2n, g running over
    the whole group."""
    if n < 1:
        raise TensorError("n must be >= 1")
    base_dim = target.dim // n
    if base_dim * n != target.dim:
        raise TensorError("target dimension is not divisible by n")
    out = InvariantTensor(base_tensor.rank)
    for combo in itertools.combinations_with_replacement(range(target.dim), base_tensor.rank):
        tags = [i // base_dim for i in combo]
        bases = [i % base_dim for i in combo]
        val = base_tensor.get(bases)
        if val.is_zero():
            continue
        gamma = sum(tags) % (2 * n)
        if n_alphas is not None and gamma >= n_alphas:
            continue
        out.set_entry(combo, ScalarExpr.alpha(gamma) * val)
    return out


def lift_0s(s: Semigroup, target: LieAlgebra, base_dim: int,
            base_tensor: InvariantTensor) -> InvariantTensor:
    """Lift through a zero-reduced expansion: entries carry alpha_g with g the
    semigroup product of the tags, and vanish when the product absorbs.

    The target may be any tag-carrying algebra built over s (a full reduction
    or a resonant subalgebra of one); tags are read from its labels.
    """
    if s.zero_index is None:
        raise TensorError("semigroup has no designated zero element")
    tags = []
    for lab in target.labels:
        if not lab.tags:
            raise TensorError("target generators carry no expansion tags")
        tags.append(lab.tags[0])
    out = InvariantTensor(base_tensor.rank)
    for combo in itertools.combinations_with_replacement(range(target.dim), base_tensor.rank):
        bases = [i % base_dim for i in combo]
        val = base_tensor.get(bases)
        if val.is_zero():
            continue
        gamma = s.product([tags[i] for i in combo])
        if gamma == s.zero_index:
            continue
        out.set_entry(combo, ScalarExpr.alpha(gamma) * val)
    return out


# -- invariance ----------------------------------------------------------------


class InvarianceReport:
    def __init__(self, ok: bool, violation=None, value: Optional[ScalarExpr] = None):
        self.ok = ok
        self.violation = violation
        self.value = value

    def __bool__(self):
        return self.ok


def verify_invariance(L: LieAlgebra, T: InvariantTensor) -> InvarianceReport:
    """Exhaustively check that the adjoint action annihilates the tensor.

    For every generator X = T_{A0} and every sorted slot tuple, the sum of the
    tensor with one slot rotated by ad_X must vanish identically in the alpha
    symbols (each alpha component separately, which the exact scalar ring does
    automatically).
    """
    r = T.rank
    dim = L.dim
    for a0 in range(dim):
        pairs = [L.pair(a0, x) for x in range(dim)]
        if not any(pairs):
            continue
        for combo in itertools.combinations_with_replacement(range(dim), r):
            total = ScalarExpr.zero()
            touched = False
            for p in range(r):
                row = pairs[combo[p]]
                if not row:
                    continue
                rest = combo[:p] + combo[p + 1:]
                for b, coeff in row.items():
                    val = T.get(rest + (b,))
                    if val.is_zero():
                        continue
                    touched = True
                    total = total + val.scaled(coeff)
            if touched and not total.is_zero():
                return InvarianceReport(False, (a0, combo), total)
    return InvarianceReport(True)


def rotate_tensor(T: InvariantTensor, m: list[list[Q2]]) -> InvariantTensor:
    """Pull the tensor back along the basis change T'_i = sum_A m[A][i] T_A."""
    n = len(m)
    rows = [[(i, m[a][i]) for i in range(n) if m[a][i]] for a in range(n)]
    acc: dict[tuple[int, ...], ScalarExpr] = {}
    for key, val in T.entries.items():
        if any(a >= n for a in key):
            raise TensorError("basis matrix too small for tensor indices")
        for perm in set(itertools.permutations(key)):
            for choice in itertools.product(*(rows[a] for a in perm)):
                tgt = tuple(i for i, _ in choice)
                if any(tgt[p] > tgt[p + 1] for p in range(len(tgt) - 1)):
                    continue  # only accumulate the sorted representative
                coeff = Q2(1)
                for _, c in choice:
                    coeff = coeff * c
                prev = acc.get(tgt, ScalarExpr.zero())
                acc[tgt] = prev + val.scaled(coeff)
    out = InvariantTensor(T.rank)
    for key, val in acc.items():
        out.set_entry(key, val)
    return out


# -- human-readable output ------------------------------------------------------


def _slot_name(base: str, arity: int, tags: tuple[int, ...]) -> str:
    name = base + ("[ab]" if arity == 2 else "[a]")
    if tags:
        name += "@" + ",".join(map(str, tags))
    return name


def family_table(T: InvariantTensor, L: LieAlgebra) -> list[tuple[tuple[str, ...], ScalarExpr]]:
    """Group entries into slot families (by base symbol, index arity and tags)
    and factor out the epsilon sign; each family must carry one common
    coefficient or a TensorError is raised."""
    fams: dict[tuple, ScalarExpr] = {}
    for key, val in sorted(T.entries.items()):
        fam = tuple((L.labels[i].base, len(L.labels[i].index), L.labels[i].tags)
                    for i in key)
        flat = []
        for i in key:
            flat.extend(L.labels[i].index)
        sign = perm_sign(flat)
        if sign == 0:
            raise TensorError("entry does not look like an epsilon contraction")
        coeff = val.scaled(Q2(sign))
        if fam in fams:
            if fams[fam] != coeff:
                raise TensorError(f"family {fam} has non-uniform coefficients")
        else:
            fams[fam] = coeff
    return [(tuple(_slot_name(*slot) for slot in fam), fams[fam])
            for fam in sorted(fams, key=str)]


def latex_family_table(T: InvariantTensor, L: LieAlgebra, eps_name: str = "abcde") -> str:
    lines = [r"\begin{array}{l}"]
    for names, coeff in family_table(T, L):
        slots = ", ".join(names)
        lines.append(rf"\langle {slots} \rangle = ({coeff.latex()})\,\varepsilon_{{{eps_name}}} \\")
    lines.append(r"\end{array}")
    return "\n".join(lines)
