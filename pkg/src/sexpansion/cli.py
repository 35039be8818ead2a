"""Batch front-end: expansion pipelines, tensor lifting, Lagrangian
construction, and golden-expression comparisons.

Every run is driven by a single JSON config file; flags only choose the
subcommand, output paths, formats, and extra comparisons.  Exit codes:
0 success, 1 verification failure, 2 usage or config errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .expansion import ExpansionError
from .fixtures import (algebra_by_name, build_connection, semigroup_by_name,
                       tensor_by_name)
from .forms import LieValuedForm, scalar_form_latex, scalar_form_to_json_dict
from .goldens import load_golden, per_term_report
from .invariant_tensor import (InvariantTensor, latex_family_table, lift_0s,
                               lift_h, verify_invariance)
from .lagrangian import chern_simons, compare_forms, subspace_separation
from .lie_algebra import LieAlgebra, check_axioms
from .pipeline import PipelineError, run_pipeline
from .scalars import Q2, ScalarExpr
from .semigroup import Semigroup, find_isomorphism
from .targets import TargetParseError


class UsageError(ValueError):
    pass


class VerificationFailure(Exception):
    pass


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        raise UsageError("--config is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}")


def _resolve_algebra(spec) -> LieAlgebra:
    if isinstance(spec, str):
        return algebra_by_name(spec)
    if isinstance(spec, dict) and "path" in spec:
        with open(spec["path"]) as fh:
            return LieAlgebra.from_json(fh.read())
    raise UsageError("algebra must be a fixture name or {'path': ...}")


def _resolve_semigroup(spec) -> Semigroup:
    if isinstance(spec, str):
        return semigroup_by_name(spec)
    if isinstance(spec, dict):
        if "path" in spec:
            with open(spec["path"]) as fh:
                return Semigroup.from_json(fh.read())
        return Semigroup.from_json_dict(spec)
    raise UsageError("semigroup must be a name, a descriptor, or {'path': ...}")


def _resolve_tensor(spec, algebra: LieAlgebra) -> InvariantTensor:
    if isinstance(spec, str):
        return tensor_by_name(spec)
    if isinstance(spec, dict) and "path" in spec:
        with open(spec["path"]) as fh:
            return InvariantTensor.from_json(fh.read())
    if isinstance(spec, dict) and "lift" in spec:
        base = tensor_by_name(spec["base"])
        lift = spec["lift"]
        if lift["kind"] == "h":
            return lift_h(int(lift["n"]), algebra, base)
        if lift["kind"] == "zero":
            s = _resolve_semigroup(lift["semigroup"])
            return lift_0s(s, algebra, int(lift["base_dim"]), base)
        raise UsageError(f"unknown lift kind {lift['kind']!r}")
    raise UsageError("tensor must be a name, {'path': ...}, or a lift spec")


class Output:
    def __init__(self, out_dir: Optional[str], fmt: str):
        self.dir = Path(out_dir) if out_dir else None
        self.fmt = fmt
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def emit_json(self, name: str, payload: dict) -> None:
        text = json.dumps(payload, indent=1) + "\n"
        self._write(name + ".json", text)

    def emit_text(self, name: str, text: str, ext: str = ".txt") -> None:
        self._write(name + ext, text if text.endswith("\n") else text + "\n")

    def emit_latex(self, name: str, text: str) -> None:
        self._write(name + ".tex", text if text.endswith("\n") else text + "\n")

    def _write(self, filename: str, text: str) -> None:
        if self.dir:
            (self.dir / filename).write_text(text)
        else:
            sys.stdout.write(f"--- {filename} ---\n{text}")


def cmd_expand(config: dict, out: Output) -> None:
    algebra = _resolve_algebra(config.get("algebra"))
    steps = config.get("steps", [])
    result = run_pipeline(algebra, steps)
    report = check_axioms(result)
    if not report.ok:
        raise VerificationFailure(
            f"axiom check failed on the pipeline result at triple {report.violation}")
    out.emit_json("algebra", result.to_json_dict())
    out.emit_text("commutators",
                  "\n".join([f"# {result.name}: dim {result.dim}"]
                            + result.commutator_lines())
                  or "# trivial algebra")


def cmd_invariants(config: dict, out: Output) -> None:
    algebra = _resolve_algebra(config.get("algebra"))
    tensor = _resolve_tensor(config.get("tensor"), algebra)
    if config.get("alphas") not in (None, "general"):
        ratios = [Fraction(str(r)) for r in config["alphas"]]
        tensor = InvariantTensor(tensor.rank, {
            k: v.specialize_alphas(ratios) for k, v in tensor.entries.items()})
    if config.get("verify", True):
        rep = verify_invariance(algebra, tensor)
        if not rep.ok:
            a0, combo = rep.violation
            raise VerificationFailure(
                "invariance fails: rotating slot tuple "
                f"{tuple(str(algebra.labels[i]) for i in combo)} by "
                f"{algebra.labels[a0]} leaves {rep.value}")
    out.emit_json("tensor", tensor.to_json_dict())
    if out.fmt in ("latex", "both"):
        eps_name = "abc" if algebra.dim <= 12 else "abcde"
        out.emit_latex("tensor_table", latex_family_table(tensor, algebra, eps_name))


def _lovelock_dictionary() -> dict[str, ScalarExpr]:
    half = Q2(Fraction(1, 2))
    third = Q2(Fraction(1, 3))
    tenth = Q2(Fraction(1, 10))
    return {
        "beta0": (ScalarExpr.alpha(0) + ScalarExpr.alpha(1)).scaled(half),
        "beta1": (ScalarExpr.alpha(1) + ScalarExpr.alpha(2)).scaled(third, -2),
        "beta2": (ScalarExpr.alpha(2) + ScalarExpr.alpha(3)).scaled(tenth, -4),
    }


def lovelock_json() -> dict:
    out = {}
    for name, expr in _lovelock_dictionary().items():
        out[name] = [{"alpha": a, "ell_pow": e, "q": str(v.a)}
                     for (a, e), v in expr.sorted_terms()]
    return out


def cmd_lagrangian(config: dict, out: Output, extra_compare: list[str]) -> None:
    dimension = config.get("dimension")
    if dimension not in (3, 5):
        raise UsageError("dimension must be 3 or 5")
    algebra = _resolve_algebra(config.get("algebra"))
    tensor = _resolve_tensor(config.get("tensor"), algebra)
    alphas = config.get("alphas", "general")
    if alphas != "general":
        ratios = [Fraction(str(r)) for r in alphas]
        tensor = InvariantTensor(tensor.rank, {
            k: v.specialize_alphas(ratios) for k, v in tensor.entries.items()})
    fields = tuple(config.get("fields", ["w", "e", "k", "h"]))
    method = config.get("method", "separated")
    if method == "separated":
        chain = [build_connection(algebra, [f for f in ("w", "e", "k", "h")
                                            if f in fields and f in subset])
                 for subset in (("w", "e", "k", "h"), ("w", "e"), ("w",))]
        chain.append(LieValuedForm.zero())
        lagrangian = subspace_separation(chain, tensor, dimension, algebra)
    elif method == "direct":
        lagrangian = chern_simons(build_connection(algebra, fields),
                                  tensor, dimension, algebra)
    else:
        raise UsageError("method must be 'separated' or 'direct'")

    payload = {
        "dimension": dimension,
        "algebra": algebra.name,
        "method": method,
        "fields": list(fields),
        "kappa": "symbolic overall prefactor, not folded into coefficients",
        "form": scalar_form_to_json_dict(lagrangian),
    }
    if dimension == 5:
        payload["lovelock"] = lovelock_json()
    out.emit_json("lagrangian", payload)
    if out.fmt in ("latex", "both"):
        out.emit_latex("lagrangian", scalar_form_latex(lagrangian))

    failures = []
    compare = list(config.get("compare", [])) + extra_compare
    lines = []
    for name in compare:
        golden = load_golden(name)
        if golden.dimension != dimension:
            raise UsageError(f"golden {name!r} is a {golden.dimension}d expression")
        rep = compare_forms(lagrangian, golden.form(),
                            up_to_scale=config.get("compare_up_to_scale", True))
        lines.append(f"[{name}] matched={rep.matched} "
                     f"scale={rep.scale and (str(rep.scale[0]), rep.scale[1])} "
                     f"diffs={len(rep.diffs)}")
        fam = per_term_report(lagrangian, golden, rep.scale)
        for t in fam.agreements:
            coeff = "(absorbed in earlier family)" if t.machine_coefficient is None \
                else str(t.machine_coefficient)
            lines.append(f"  {'ok ' if t.agrees else 'DIFF'} {t.term}")
            lines.append(f"       machine family coefficient: {coeff}")
        if fam.residual_monomials:
            lines.append(f"  {fam.residual_monomials} computed monomials outside "
                         "the printed families")
        if not rep.matched:
            failures.append(name)
            for d in rep.diffs[:20]:
                lines.append(f"    {d.monomial}: computed {d.computed} "
                             f"vs printed {d.expected}")
            if len(rep.diffs) > 20:
                lines.append(f"    ... {len(rep.diffs) - 20} more")
    if lines:
        out.emit_text("comparison", "\n".join(lines))
    if failures:
        raise VerificationFailure(
            "comparison mismatch for: " + ", ".join(failures))


def cmd_semigroup(config: dict, out: Output) -> None:
    action = config.get("action", "construct")
    if action == "construct":
        s = _resolve_semigroup(config.get("semigroup"))
        out.emit_json("semigroup", s.to_json_dict())
    elif action == "verify":
        try:
            _resolve_semigroup(config.get("semigroup"))
        except Exception as exc:
            raise VerificationFailure(f"invalid semigroup: {exc}")
        out.emit_text("verify", "ok")
    elif action == "isomorphism":
        s1 = _resolve_semigroup(config.get("first"))
        s2 = _resolve_semigroup(config.get("second"))
        perm = find_isomorphism(s1, s2)
        out.emit_json("isomorphism",
                      {"first": s1.name, "second": s2.name,
                       "isomorphic": perm is not None,
                       "bijection": list(perm) if perm else None})
        if perm is None:
            raise VerificationFailure("no isomorphism found")
    else:
        raise UsageError(f"unknown semigroup action {action!r}")


def cmd_check(config: dict, out: Output) -> None:
    algebra = _resolve_algebra(config.get("algebra"))
    rep = check_axioms(algebra)
    lines = [f"axioms: {'ok' if rep.ok else f'Jacobi fails at {rep.violation}'}"]
    ok = rep.ok
    if "tensor" in config:
        tensor = _resolve_tensor(config["tensor"], algebra)
        inv = verify_invariance(algebra, tensor)
        lines.append(f"invariance: {'ok' if inv.ok else f'fails, residue {inv.value}'}")
        ok = ok and inv.ok
    out.emit_text("check", "\n".join(lines))
    if not ok:
        raise VerificationFailure("check failed")


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="sexpansion",
        description="semigroup expansions, invariant tensors, and exact "
                    "Chern-Simons Lagrangians")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("expand", "invariants", "lagrangian", "semigroup", "check"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=False)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "latex", "both"), default="json")
        if name == "lagrangian":
            p.add_argument("--compare", action="append", default=[],
                           help="golden expression name (repeatable)")
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return 2
    try:
        config = _load_config(args.config)
        out = Output(args.out, args.format)
        if args.command == "expand":
            cmd_expand(config, out)
        elif args.command == "invariants":
            cmd_invariants(config, out)
        elif args.command == "lagrangian":
            cmd_lagrangian(config, out, args.compare)
        elif args.command == "semigroup":
            cmd_semigroup(config, out)
        elif args.command == "check":
            cmd_check(config, out)
    except (UsageError, TargetParseError, PipelineError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (ExpansionError, ValueError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
