"""JSON run configuration for the CLI.

A config document looks like:

    {
      "params": {
        "omega_cavity": 0.2,
        "omega_levels": [0.3, 0.4, 0.5],
        "g1": 0.04, "g2": 0.06, "omega_e": 0.04,
        "chi": 0.0,
        "sector_n": 1
      },
      "ic": [0, 1, 0],                  // optional; reals or [re, im] pairs
      "tau_max": 50.0,
      "samples": 2000,
      "observables": ["populations", "inversion"],   // optional
      "svg": true,                      // optional
      "husimi": {"range": 3.0, "resolution": 121, "tau": 25.0},  // optional
      "sweep": {"axes": [["chi", [0.0, 0.2]]]}       // optional
    }

chi = 0 selects the undeformed operators; chi > 0 the Kerr profile.
CLI flags override file fields.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace

from .model import Identity, Kerr, ModelParams
from .dynamics import EXCITED, InitialCondition
from .observables import OBSERVABLE_NAMES

__all__ = [
    "ConfigError",
    "RunConfig",
    "SweepConfig",
    "load_config_file",
    "run_config_from_dict",
    "sweep_from_dict",
]

DEFAULT_OBSERVABLES = ("populations", "inversion", "g2", "entropy", "mandel_q", "squeezing")

SWEEP_AXIS_NAMES = ("omega_cavity", "g1", "g2", "omega_e", "chi", "sector_n")
MAX_SWEEP_POINTS = 10_000


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    """Validated single-run configuration."""

    params: ModelParams
    ic: InitialCondition = EXCITED
    tau_max: float = 50.0
    samples: int = 2000
    observables: tuple[str, ...] = DEFAULT_OBSERVABLES
    svg: bool = True
    method: str = "auto"
    husimi_range: float = 3.0
    husimi_resolution: int = 121
    husimi_tau: float | None = None
    husimi_n_max: int | None = None

    def __post_init__(self):
        if not (self.tau_max > 0.0):
            raise ConfigError(f"tau_max must be > 0, got {self.tau_max!r}")
        if self.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {self.samples!r}")
        if self.params.omega_cavity <= 0.0:
            raise ConfigError("params.omega_cavity must be > 0 for the tau = omega_cavity*t axis")
        for name in self.observables:
            if name not in OBSERVABLE_NAMES:
                raise ConfigError(
                    f"observables: unknown name {name!r}; valid names are {', '.join(OBSERVABLE_NAMES)}"
                )

    def echo(self) -> dict:
        """JSON-serializable canonical form (embedded in manifests)."""
        d = self.params.deformation
        doc = {
            "params": {
                "omega_cavity": self.params.omega_cavity,
                "omega_levels": list(self.params.omega_levels),
                "g1": self.params.g1,
                "g2": self.params.g2,
                "omega_e": self.params.omega_e,
                "chi": d.chi if isinstance(d, Kerr) else 0.0,
                "sector_n": self.params.sector_n,
            },
            "ic": [[z.real, z.imag] for z in (self.ic.c1, self.ic.c2, self.ic.c3)],
            "tau_max": self.tau_max,
            "samples": self.samples,
            "observables": list(self.observables),
            "svg": self.svg,
            "method": self.method,
        }
        if "husimi" in self.observables:
            doc["husimi"] = {
                "range": self.husimi_range,
                "resolution": self.husimi_resolution,
                "tau": self.tau_max if self.husimi_tau is None else self.husimi_tau,
                "n_max": self.husimi_n_max,
            }
        return doc


@dataclass(frozen=True)
class SweepConfig:
    """Cartesian sweep over named parameter axes on top of a base run."""

    base: RunConfig
    axes: tuple[tuple[str, tuple[float, ...]], ...]

    def __post_init__(self):
        size = 1
        for name, values in self.axes:
            if name not in SWEEP_AXIS_NAMES:
                raise ConfigError(
                    f"sweep.axes: unknown parameter {name!r}; valid axes are {', '.join(SWEEP_AXIS_NAMES)}"
                )
            if len(values) == 0:
                raise ConfigError(f"sweep.axes: axis {name!r} has no values")
            size *= len(values)
        if size > MAX_SWEEP_POINTS:
            raise ConfigError(f"sweep produces {size} points, above the limit of {MAX_SWEEP_POINTS}")

    def expand(self) -> list[tuple[str, RunConfig]]:
        """(label, RunConfig) per sweep point, in deterministic axis order."""
        points = []
        names = [name for name, _ in self.axes]
        for combo in itertools.product(*(values for _, values in self.axes)):
            params = self.base.params
            label_bits = []
            for name, value in zip(names, combo):
                if name == "chi":
                    deformation = Identity() if value == 0 else Kerr(float(value))
                    params = replace(params, deformation=deformation)
                elif name == "sector_n":
                    params = replace(params, sector_n=int(value))
                else:
                    params = replace(params, **{name: float(value)})
                label_bits.append(f"{name}={value:g}" if isinstance(value, float) else f"{name}={value}")
            points.append(("_".join(label_bits), replace(self.base, params=params)))
        return points


def load_config_file(path: str) -> dict:
    """Parse a JSON config file, reporting line/column on syntax errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top-level JSON value must be an object")
    return doc


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ConfigError(f"{where}: missing required field {key!r}")
    return doc[key]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _params_from_dict(doc, where: str = "params") -> ModelParams:
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected an object")
    levels = _require(doc, "omega_levels", where)
    if not (isinstance(levels, list) and len(levels) == 3):
        raise ConfigError(f"{where}.omega_levels: expected a list of three frequencies")
    chi = _number(doc.get("chi", 0.0), f"{where}.chi")
    if chi < 0:
        raise ConfigError(f"{where}.chi must be >= 0, got {chi}")
    deformation = Identity() if chi == 0.0 else Kerr(chi)
    sector_n = doc.get("sector_n", 1)
    if isinstance(sector_n, bool) or not isinstance(sector_n, int):
        raise ConfigError(f"{where}.sector_n: expected an integer, got {sector_n!r}")
    try:
        return ModelParams(
            omega_cavity=_number(_require(doc, "omega_cavity", where), f"{where}.omega_cavity"),
            omega_levels=tuple(_number(v, f"{where}.omega_levels") for v in levels),
            g1=_number(_require(doc, "g1", where), f"{where}.g1"),
            g2=_number(_require(doc, "g2", where), f"{where}.g2"),
            omega_e=_number(_require(doc, "omega_e", where), f"{where}.omega_e"),
            deformation=deformation,
            sector_n=sector_n,
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _ic_from_list(values, where: str = "ic") -> InitialCondition:
    if not (isinstance(values, list) and len(values) == 3):
        raise ConfigError(f"{where}: expected a list of three amplitudes")
    amps = []
    for i, v in enumerate(values):
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            amps.append(complex(v))
        elif isinstance(v, list) and len(v) == 2:
            amps.append(complex(_number(v[0], f"{where}[{i}]"), _number(v[1], f"{where}[{i}]")))
        else:
            raise ConfigError(f"{where}[{i}]: expected a real number or an [re, im] pair, got {v!r}")
    try:
        return InitialCondition(*amps)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def run_config_from_dict(doc: dict, force_oracle: bool = False) -> RunConfig:
    """Build a RunConfig from a parsed JSON document."""
    params = _params_from_dict(_require(doc, "params", "config"))
    ic = _ic_from_list(doc["ic"]) if "ic" in doc else EXCITED

    observables = doc.get("observables", list(DEFAULT_OBSERVABLES))
    if not (isinstance(observables, list) and all(isinstance(x, str) for x in observables)):
        raise ConfigError("observables: expected a list of observable names")

    samples = doc.get("samples", 2000)
    if isinstance(samples, bool) or not isinstance(samples, int):
        raise ConfigError(f"samples: expected an integer, got {samples!r}")

    svg = doc.get("svg", True)
    if not isinstance(svg, bool):
        raise ConfigError(f"svg: expected true or false, got {svg!r}")

    husimi = doc.get("husimi", {})
    if not isinstance(husimi, dict):
        raise ConfigError("husimi: expected an object")
    husimi_n_max = husimi.get("n_max")
    if husimi_n_max is not None and (isinstance(husimi_n_max, bool) or not isinstance(husimi_n_max, int)):
        raise ConfigError(f"husimi.n_max: expected an integer, got {husimi_n_max!r}")
    resolution = husimi.get("resolution", 121)
    if isinstance(resolution, bool) or not isinstance(resolution, int) or resolution < 2:
        raise ConfigError(f"husimi.resolution: expected an integer >= 2, got {resolution!r}")

    return RunConfig(
        params=params,
        ic=ic,
        tau_max=_number(doc.get("tau_max", 50.0), "tau_max"),
        samples=samples,
        observables=tuple(observables),
        svg=svg,
        method="oracle" if force_oracle else "auto",
        husimi_range=_number(husimi.get("range", 3.0), "husimi.range"),
        husimi_resolution=resolution,
        husimi_tau=None if "tau" not in husimi else _number(husimi["tau"], "husimi.tau"),
        husimi_n_max=husimi_n_max,
    )


def sweep_from_dict(doc: dict, base: RunConfig) -> SweepConfig | None:
    """Build the optional sweep section; None when absent."""
    if "sweep" not in doc:
        return None
    sweep = doc["sweep"]
    if not isinstance(sweep, dict):
        raise ConfigError("sweep: expected an object")
    axes_doc = _require(sweep, "axes", "sweep")
    if not isinstance(axes_doc, list):
        raise ConfigError("sweep.axes: expected a list of [name, values] pairs")
    axes = []
    for i, entry in enumerate(axes_doc):
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], str)):
            raise ConfigError(f"sweep.axes[{i}]: expected [name, values]")
        name, values = entry
        if not isinstance(values, list):
            raise ConfigError(f"sweep.axes[{i}]: values must be a list")
        if name == "sector_n":
            for v in values:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ConfigError(f"sweep.axes[{i}]: sector_n values must be integers")
            axes.append((name, tuple(values)))
        else:
            axes.append((name, tuple(_number(v, f"sweep.axes[{i}]") for v in values)))
    return SweepConfig(base=base, axes=tuple(axes))
