"""Pipeline runner: ordered expansion/reduction steps driven by JSON configs.

A pipeline is a list of steps applied to a starting algebra.  Steps that need
the expansion semigroup (zero_reduce, resonant, sign_identify) remember it
from the preceding s_expand; configs stay declarative and reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .expansion import (ResonanceSpec, h_reduce, impose_sign_identification,
                        resonant_subalgebra, s_expand, zero_reduce)
from .lie_algebra import LieAlgebra
from .semigroup import Semigroup


class PipelineError(ValueError):
    pass


def _registry() -> dict:
    with resources.files("sexpansion.data").joinpath("registry.json").open() as fh:
        return json.load(fh)


def registry() -> dict:
    return _registry()


def resonance_spec_from_config(cfg: dict, base: LieAlgebra) -> ResonanceSpec:
    if "partition" in cfg:
        partition = list(cfg["partition"])
    elif "partition_by_base" in cfg:
        table = cfg["partition_by_base"]
        try:
            partition = [table[lab.base] for lab in base.labels]
        except KeyError as exc:
            raise PipelineError(f"partition does not cover base symbol {exc}")
    else:
        raise PipelineError("resonance config needs 'partition' or 'partition_by_base'")
    return ResonanceSpec.make(partition, cfg["subsets"])


@dataclass
class PipelineState:
    algebra: LieAlgebra
    base: Optional[LieAlgebra] = None
    semigroup: Optional[Semigroup] = None


def run_pipeline(start: LieAlgebra, steps: list[dict],
                 semigroup_loader=None) -> LieAlgebra:
    """Execute the steps in order; raises PipelineError on type errors."""
    if semigroup_loader is None:
        from .fixtures import semigroup_by_name
        semigroup_loader = semigroup_by_name
    state = PipelineState(start)
    for i, step in enumerate(steps):
        op = step.get("op")
        if op == "s_expand":
            sg = step["semigroup"]
            s = semigroup_loader(sg) if isinstance(sg, str) else Semigroup.from_json_dict(sg)
            state = PipelineState(s_expand(s, state.algebra),
                                  base=state.algebra, semigroup=s)
        elif op == "h_reduce":
            state = PipelineState(h_reduce(int(step["n"]), state.algebra))
        elif op == "zero_reduce":
            if state.semigroup is None:
                raise PipelineError(f"step {i}: zero_reduce without a preceding s_expand")
            if state.semigroup.zero_index is None:
                raise PipelineError(f"step {i}: expansion semigroup has no zero element")
            state = PipelineState(zero_reduce(state.algebra, state.semigroup))
        elif op == "resonant":
            if state.semigroup is None or state.base is None:
                raise PipelineError(f"step {i}: resonant without a preceding s_expand")
            cfg = step.get("resonance")
            if isinstance(cfg, str):
                cfg = _registry()["resonances"][cfg]
            elif cfg is None:
                cfg = step
            spec = resonance_spec_from_config(cfg, state.base)
            reduced = resonant_subalgebra(state.algebra, state.semigroup,
                                          state.base, spec)
            state = PipelineState(reduced, base=state.base, semigroup=state.semigroup)
        elif op == "sign_identify":
            if state.semigroup is None:
                raise PipelineError(f"step {i}: sign_identify without a preceding s_expand")
            pairing = {int(a): int(b) for a, b in step["pairing"]}
            pairing.update({b: a for a, b in list(pairing.items())})
            state = PipelineState(impose_sign_identification(
                state.algebra, state.semigroup, pairing))
        else:
            raise PipelineError(f"step {i}: unknown op {op!r}")
    return state.algebra


def run_named_pipeline(name: str) -> LieAlgebra:
    from .fixtures import algebra_by_name
    cfg = _registry()["pipelines"].get(name)
    if cfg is None:
        raise PipelineError(f"unknown pipeline {name!r}")
    return run_pipeline(algebra_by_name(cfg["algebra"]), cfg["steps"])
