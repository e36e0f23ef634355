"""JSON run configuration: strict parsing into module-level types.

Schema (all sections except `model` optional, defaults in parentheses):

    {
      "model": {
        "r":     [fn, fn],            two growth rates
        "alpha": [fn, fn],            two noise intensities
        "c":     [[c11, c12], [c21, c22]]
      },
      "harvest":  [h1, h2],           ([0, 0])
      "sim":      {"dt", "t_end", "x0", "seed", "scheme", "record_stride",
                   "floor"},          (SimConfig defaults)
      "ensemble": {"n_paths", "master_seed"},   (EnsembleConfig defaults)
      "output":   {"dir"}             (".")
    }

where fn is either {"constant": a, "harmonics": [{"amp", "k", "phase",
"kind"}, ...]} or {"table": [[t, value], ...]}. Unknown keys are rejected
with the offending JSON path. Structural problems raise ParseError;
constraint violations (negative dt, c11 <= 0, ...) raise ValidationError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DegenerateInput, InvalidConfig, ParseError, ValidationError
from .mc import EnsembleConfig
from .model import HarvestEffort, ModelParams
from .periodic import Harmonic, PeriodicFn
from .sde import Scheme, SimConfig


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs, as validated module types."""

    params: ModelParams
    harvest: HarvestEffort = HarvestEffort(0.0, 0.0)
    sim: SimConfig = SimConfig()
    ensemble: EnsembleConfig = field(default=None)  # type: ignore[assignment]
    output_dir: str = "."

    def __post_init__(self):
        if self.ensemble is None:
            object.__setattr__(self, "ensemble", EnsembleConfig(sim=self.sim))


def _object(node, path: str, allowed: tuple, required: tuple = ()) -> dict:
    if not isinstance(node, dict):
        raise ParseError(f"{path}: expected an object, got {type(node).__name__}")
    for key in node:
        if key not in allowed:
            raise ParseError(f"{path}.{key}: unknown key")
    for key in required:
        if key not in node:
            raise ParseError(f"{path}: missing required key {key!r}")
    return node


def _number(node, path: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ParseError(f"{path}: expected a number, got {type(node).__name__}")
    return float(node)


def _integer(node, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise ParseError(f"{path}: expected an integer, got {type(node).__name__}")
    return node


def _pair(node, path: str) -> tuple[float, float]:
    if not isinstance(node, list) or len(node) != 2:
        raise ParseError(f"{path}: expected a 2-element array")
    return (_number(node[0], f"{path}[0]"), _number(node[1], f"{path}[1]"))


def _validated(build, path: str):
    try:
        return build()
    except (DegenerateInput, InvalidConfig) as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def _periodic_fn(node, path: str) -> PeriodicFn:
    _object(node, path, allowed=("constant", "harmonics", "table"))
    if "table" in node:
        if "constant" in node or "harmonics" in node:
            raise ParseError(f"{path}: table excludes constant/harmonics")
        tab = node["table"]
        if not isinstance(tab, list):
            raise ParseError(f"{path}.table: expected an array of [t, value] pairs")
        pairs = [_pair(row, f"{path}.table[{i}]") for i, row in enumerate(tab)]
        return _validated(lambda: PeriodicFn(table=tuple(pairs)), f"{path}.table")
    constant = _number(node.get("constant", 0.0), f"{path}.constant")
    harmonics = []
    for i, hn in enumerate(node.get("harmonics", [])):
        hp = f"{path}.harmonics[{i}]"
        _object(hn, hp, allowed=("amp", "k", "phase", "kind"), required=("amp",))
        amp = _number(hn["amp"], f"{hp}.amp")
        k = _integer(hn.get("k", 1), f"{hp}.k")
        phase = _number(hn.get("phase", 0.0), f"{hp}.phase")
        kind = hn.get("kind", "sin")
        if kind not in ("sin", "cos"):
            raise ParseError(f"{hp}.kind: expected 'sin' or 'cos', got {kind!r}")
        harmonics.append(
            _validated(lambda a=amp, kk=k, p=phase, kd=kind: Harmonic(a, kk, p, kd), hp)
        )
    return _validated(
        lambda: PeriodicFn(constant=constant, harmonics=tuple(harmonics)), path
    )


def _fn_pair(node, path: str) -> tuple[PeriodicFn, PeriodicFn]:
    if not isinstance(node, list) or len(node) != 2:
        raise ParseError(f"{path}: expected an array of 2 function specs")
    return (_periodic_fn(node[0], f"{path}[0]"), _periodic_fn(node[1], f"{path}[1]"))


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    _object(
        doc, "$", allowed=("model", "harvest", "sim", "ensemble", "output"),
        required=("model",),
    )

    mn = _object(doc["model"], "$.model", allowed=("r", "alpha", "c"), required=("r", "alpha", "c"))
    r = _fn_pair(mn["r"], "$.model.r")
    alpha = _fn_pair(mn["alpha"], "$.model.alpha")
    cn = mn["c"]
    if not isinstance(cn, list) or len(cn) != 2:
        raise ParseError("$.model.c: expected a 2x2 array")
    c = tuple(_pair(row, f"$.model.c[{i}]") for i, row in enumerate(cn))
    params = _validated(lambda: ModelParams(r=r, alpha=alpha, c=c), "$.model")

    harvest = HarvestEffort(0.0, 0.0)
    if "harvest" in doc:
        h1, h2 = _pair(doc["harvest"], "$.harvest")
        harvest = _validated(lambda: HarvestEffort(h1, h2), "$.harvest")

    sim_kwargs = {}
    if "sim" in doc:
        sn = _object(
            doc["sim"], "$.sim",
            allowed=("dt", "t_end", "x0", "seed", "scheme", "record_stride", "floor"),
        )
        if "dt" in sn:
            sim_kwargs["dt"] = _number(sn["dt"], "$.sim.dt")
        if "t_end" in sn:
            sim_kwargs["t_end"] = _number(sn["t_end"], "$.sim.t_end")
        if "x0" in sn:
            sim_kwargs["x0"] = _pair(sn["x0"], "$.sim.x0")
        if "seed" in sn:
            sim_kwargs["seed"] = _integer(sn["seed"], "$.sim.seed")
        if "scheme" in sn:
            name = sn["scheme"]
            try:
                sim_kwargs["scheme"] = Scheme(name)
            except ValueError:
                raise ParseError(
                    f"$.sim.scheme: expected 'DirectEM' or 'LogEM', got {name!r}"
                ) from None
        if "record_stride" in sn:
            sim_kwargs["record_stride"] = _integer(sn["record_stride"], "$.sim.record_stride")
        if "floor" in sn:
            sim_kwargs["floor"] = _number(sn["floor"], "$.sim.floor")
    sim = _validated(lambda: SimConfig(**sim_kwargs), "$.sim")

    ens_kwargs = {"sim": sim}
    if "ensemble" in doc:
        en = _object(doc["ensemble"], "$.ensemble", allowed=("n_paths", "master_seed"))
        if "n_paths" in en:
            ens_kwargs["n_paths"] = _integer(en["n_paths"], "$.ensemble.n_paths")
        if "master_seed" in en:
            ens_kwargs["master_seed"] = _integer(en["master_seed"], "$.ensemble.master_seed")
    ensemble = _validated(lambda: EnsembleConfig(**ens_kwargs), "$.ensemble")

    output_dir = "."
    if "output" in doc:
        on = _object(doc["output"], "$.output", allowed=("dir",))
        if "dir" in on:
            if not isinstance(on["dir"], str):
                raise ParseError("$.output.dir: expected a string")
            output_dir = on["dir"]

    return RunConfig(
        params=params, harvest=harvest, sim=sim, ensemble=ensemble, output_dir=output_dir
    )


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def _fn_to_json(fn: PeriodicFn) -> dict:
    if fn.is_table:
        return {"table": [[t, v] for t, v in fn.table]}
    out = {"constant": fn.constant}
    if fn.harmonics:
        out["harmonics"] = [
            {"amp": h.amp, "k": h.k, "phase": h.phase, "kind": h.kind}
            for h in fn.harmonics
        ]
    return out


def config_to_json(rc: RunConfig) -> dict:
    """Serialize back to the schema; parse_config of the dump equals rc."""
    sim = rc.sim
    sim_doc = {
        "dt": sim.dt,
        "t_end": sim.t_end,
        "x0": list(sim.x0),
        "seed": sim.seed,
        "scheme": str(sim.scheme),
        "floor": sim.floor,
    }
    if sim.record_stride is not None:
        sim_doc["record_stride"] = sim.record_stride
    return {
        "model": {
            "r": [_fn_to_json(f) for f in rc.params.r],
            "alpha": [_fn_to_json(f) for f in rc.params.alpha],
            "c": [list(row) for row in rc.params.c],
        },
        "harvest": [rc.harvest.h1, rc.harvest.h2],
        "sim": sim_doc,
        "ensemble": {
            "n_paths": rc.ensemble.n_paths,
            "master_seed": rc.ensemble.master_seed,
        },
        "output": {"dir": rc.output_dir},
    }
