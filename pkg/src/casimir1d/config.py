"""Config-file parsing: JSON cavity descriptions to validated mirror stacks.

The file declares its unit system explicitly, then the cavity:

    {
      "units": {"system": "natural"},
      "cavity": {
        "tau": 1.0,
        "mirror1": {"layers": [{"model": {"type": "constant", "eps": 4.0},
                                "thickness_time": 1.0}]},
        "mirror2": {"analytic": {"type": "perfect"}}
      }
    }

Unknown fields, duplicate fields and invariant violations are rejected with
the offending field path in the message.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ConfigError
from .force import CavityConfig, UnitSystem
from .permittivity import (
    ConstantPermittivity,
    LorentzPermittivity,
    TabulatedPermittivity,
    validate_model,
)
from .scattering import (
    ConstantMirror,
    LayeredMirror,
    MagneticMirror,
    NarrowBandMirror,
    PerfectMirror,
    Slab,
)

__all__ = ["RunConfig", "parse_config", "canonical_config"]


@dataclass(frozen=True)
class RunConfig:
    """Parsed and validated cavity description plus the unit declaration."""

    units: UnitSystem
    tau: float
    mirror1: object
    mirror2: object

    def cavity(self, validate=True):
        return CavityConfig(self.mirror1, self.mirror2, self.tau, self.units, validate)


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ConfigError(f"duplicate field '{key}'")
        seen[key] = value
    return seen


def _require(obj, path, keys, optional=()):
    if not isinstance(obj, dict):
        raise ConfigError("expected an object", path)
    for key in obj:
        if key not in keys and key not in optional:
            raise ConfigError(f"unknown field '{key}'", path)
    for key in keys:
        if key not in obj:
            raise ConfigError(f"missing field '{key}'", path)


def _number(obj, path, minimum=None, strict=False):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise ConfigError("expected a finite number", path)
    v = float(obj)
    if minimum is not None and (v <= minimum if strict else v < minimum):
        op = ">" if strict else ">="
        raise ConfigError(f"must be {op} {minimum:g}", path)
    return v


def _parse_model(obj, path):
    _require(obj, path, ("type",), optional=("eps", "oscillators", "samples", "tail_decay"))
    kind = obj["type"]
    if kind == "constant":
        _require(obj, path, ("type", "eps"))
        eps = _number(obj["eps"], f"{path}.eps")
        if eps < 1.0:
            raise ConfigError("violates eps >= 1", f"{path}.eps")
        return ConstantPermittivity(eps)
    if kind == "lorentz":
        _require(obj, path, ("type", "oscillators"))
        if not isinstance(obj["oscillators"], list) or not obj["oscillators"]:
            raise ConfigError("expected a non-empty list of [strength, resonance, damping]",
                              f"{path}.oscillators")
        osc = []
        for i, triple in enumerate(obj["oscillators"]):
            loc = f"{path}.oscillators[{i}]"
            if not isinstance(triple, list) or len(triple) != 3:
                raise ConfigError("expected [strength, resonance, damping]", loc)
            s = _number(triple[0], loc)
            w = _number(triple[1], loc, minimum=0.0, strict=True)
            g = _number(triple[2], loc, minimum=0.0)
            osc.append((s, w, g))
        return LorentzPermittivity(tuple(osc))
    if kind == "tabulated_imag":
        _require(obj, path, ("type", "samples"), optional=("tail_decay",))
        if not isinstance(obj["samples"], list) or len(obj["samples"]) < 2:
            raise ConfigError("expected a list of at least two [p, eps] samples", f"{path}.samples")
        samples = []
        for i, pair in enumerate(obj["samples"]):
            loc = f"{path}.samples[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ConfigError("expected [p, eps]", loc)
            p = _number(pair[0], loc, minimum=0.0)
            e = _number(pair[1], loc)
            if e < 1.0:
                raise ConfigError("violates eps >= 1", loc)
            samples.append((p, e))
        tail = obj.get("tail_decay", True)
        if not isinstance(tail, bool):
            raise ConfigError("expected a boolean", f"{path}.tail_decay")
        try:
            return TabulatedPermittivity(tuple(samples), tail)
        except ValueError as exc:
            raise ConfigError(str(exc), f"{path}.samples") from exc
    raise ConfigError(f"unknown model type '{kind}'", f"{path}.type")


def _parse_layers(items, path):
    if not isinstance(items, list):
        raise ConfigError("expected a list of layers", path)
    slabs = []
    for i, layer in enumerate(items):
        loc = f"{path}[{i}]"
        _require(layer, loc, ("model", "thickness_time"))
        model = _parse_model(layer["model"], f"{loc}.model")
        report = validate_model(model)
        if not report.passed:
            raise ConfigError("; ".join(report.failures), f"{loc}.model")
        thick = _number(layer["thickness_time"], f"{loc}.thickness_time", minimum=0.0)
        slabs.append(Slab(model, thick))
    return LayeredMirror(tuple(slabs))


def _parse_stack(obj, path, allow_gain):
    _require(obj, path, (), optional=("layers", "analytic"))
    if ("layers" in obj) == ("analytic" in obj):
        raise ConfigError("expected exactly one of 'layers' or 'analytic'", path)
    if "layers" in obj:
        return _parse_layers(obj["layers"], f"{path}.layers")
    spec = obj["analytic"]
    loc = f"{path}.analytic"
    _require(spec, loc, ("type",), optional=("eta", "layers", "theta", "cutoff"))
    kind = spec["type"]
    if kind == "perfect":
        _require(spec, loc, ("type",))
        return PerfectMirror()
    if kind == "constant":
        _require(spec, loc, ("type", "eta"))
        eta = _number(spec["eta"], f"{loc}.eta")
        if abs(eta) > 1.0 and not allow_gain:
            raise ConfigError("violates |eta| <= 1 (passivity)", f"{loc}.eta")
        return ConstantMirror(eta, unchecked=allow_gain)
    if kind == "magnetic":
        _require(spec, loc, ("type", "layers"))
        return MagneticMirror(_parse_layers(spec["layers"], f"{loc}.layers"))
    if kind == "narrowband":
        _require(spec, loc, ("type", "theta"), optional=("cutoff",))
        theta = _number(spec["theta"], f"{loc}.theta", minimum=0.0)
        cutoff = _number(spec["cutoff"], f"{loc}.cutoff", minimum=0.0, strict=True) \
            if "cutoff" in spec else None
        try:
            return NarrowBandMirror(theta, cutoff)
        except ValueError as exc:
            raise ConfigError(str(exc), loc) from exc
    raise ConfigError(f"unknown analytic mirror type '{kind}'", f"{loc}.type")


def parse_config(text, allow_gain=False):
    """Parse and validate a config file; raises ConfigError with a location.

    ``allow_gain=True`` admits |eta| > 1 constant mirrors so that the
    passivity checker can be pointed at them (the `check` subcommand);
    everything else still rejects them.
    """
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicates)
    except ConfigError:
        raise
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    _require(data, "<root>", ("units", "cavity"))
    units_obj = data["units"]
    _require(units_obj, "units", ("system",), optional=("tau0_seconds",))
    system = units_obj["system"]
    if system not in ("natural", "si"):
        raise ConfigError("must be 'natural' or 'si'", "units.system")
    tau0 = _number(units_obj.get("tau0_seconds", 1.0), "units.tau0_seconds", minimum=0.0, strict=True)
    units = UnitSystem(tau0_seconds=tau0, output=system)
    cav = data["cavity"]
    _require(cav, "cavity", ("tau", "mirror1", "mirror2"))
    tau = _number(cav["tau"], "cavity.tau", minimum=0.0, strict=True)
    mirror1 = _parse_stack(cav["mirror1"], "cavity.mirror1", allow_gain)
    mirror2 = _parse_stack(cav["mirror2"], "cavity.mirror2", allow_gain)
    return RunConfig(units=units, tau=tau, mirror1=mirror1, mirror2=mirror2)


def _model_dict(model):
    if isinstance(model, ConstantPermittivity):
        return {"type": "constant", "eps": model.eps}
    if isinstance(model, LorentzPermittivity):
        return {"type": "lorentz", "oscillators": [list(o) for o in model.oscillators]}
    if isinstance(model, TabulatedPermittivity):
        return {"type": "tabulated_imag", "samples": [list(s) for s in model.samples],
                "tail_decay": model.tail_decay}
    raise TypeError(f"unknown model type {type(model).__name__}")


def _stack_dict(stack):
    if isinstance(stack, LayeredMirror):
        return {"layers": [{"model": _model_dict(s.model), "thickness_time": s.thickness_time}
                           for s in stack.slabs]}
    if isinstance(stack, PerfectMirror):
        return {"analytic": {"type": "perfect"}}
    if isinstance(stack, ConstantMirror):
        return {"analytic": {"type": "constant", "eta": stack.eta}}
    if isinstance(stack, MagneticMirror):
        return {"analytic": {"type": "magnetic",
                             "layers": _stack_dict(stack.base)["layers"]}}
    if isinstance(stack, NarrowBandMirror):
        out = {"type": "narrowband", "theta": stack.theta}
        if math.isfinite(stack.cutoff):
            out["cutoff"] = stack.cutoff
        return {"analytic": out}
    raise TypeError(f"unknown stack type {type(stack).__name__}")


def canonical_config(config):
    """Serialize a RunConfig back to canonical config text (parse round-trips)."""
    data = {
        "units": {"system": config.units.output, "tau0_seconds": config.units.tau0_seconds},
        "cavity": {
            "tau": config.tau,
            "mirror1": _stack_dict(config.mirror1),
            "mirror2": _stack_dict(config.mirror2),
        },
    }
    return json.dumps(data, indent=2) + "\n"
