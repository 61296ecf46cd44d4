"""Run configuration: TOML loading, validation and serialization.

A configuration file has four tables::

    [system]
    epsilon_cm1 = 75.0          # or site_energy_1_cm1 / site_energy_2_cm1
    delta_cm1 = 87.7
    temperature_K = 77.0

    [bath]
    type = "ohmic"              # "ohmic" or "debye"
    lambda_cm1 = 35.0           # ohmic also accepts K + omega_c_cm1
    tau_fs = 50.0

    [output]                    # optional
    path = "rates.csv"
    format = "csv"

    [numeric]                   # optional
    abs_tol = 1e-10
    rel_tol = 1e-10
    panel_budget = 1000
    samples = 2048
    t_max_fs = 1000.0
    threshold = 0.01
    method = "auto"
"""

from __future__ import annotations

import dataclasses
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .rates import METHODS, DimerSystem, SiteParams, reduce_sites
from .spectral import Debye, OhmicExp, QuadratureControl, SpectralModel, ohmic_from_lambda_tau


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class SystemBlock:
    delta_cm1: float
    temperature_K: float
    epsilon_cm1: Optional[float] = None
    site_energy_1_cm1: Optional[float] = None
    site_energy_2_cm1: Optional[float] = None


@dataclass(frozen=True)
class BathBlock:
    type: str
    lambda_cm1: Optional[float] = None
    tau_fs: Optional[float] = None
    K: Optional[float] = None
    omega_c_cm1: Optional[float] = None


@dataclass(frozen=True)
class OutputBlock:
    path: Optional[str] = None
    format: str = "csv"


@dataclass(frozen=True)
class NumericBlock:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    panel_budget: int = 1000
    samples: int = 2048
    t_max_fs: float = 1000.0
    threshold: float = 0.01
    method: str = "auto"


@dataclass(frozen=True)
class RunConfig:
    system: SystemBlock
    bath: BathBlock
    output: OutputBlock = field(default_factory=OutputBlock)
    numeric: NumericBlock = field(default_factory=NumericBlock)

    @property
    def epsilon(self) -> float:
        s = self.system
        if s.epsilon_cm1 is not None:
            return s.epsilon_cm1
        eps, _ = reduce_sites(SiteParams(s.site_energy_1_cm1, s.site_energy_2_cm1, s.delta_cm1))
        return eps

    def bath_model(self) -> SpectralModel:
        b = self.bath
        if b.type == "debye":
            return Debye(lam=b.lambda_cm1, tau_fs=b.tau_fs)
        if b.lambda_cm1 is not None:
            return ohmic_from_lambda_tau(b.lambda_cm1, b.tau_fs)
        return OhmicExp(K=b.K, omega_c=b.omega_c_cm1)

    def dimer(self) -> DimerSystem:
        return DimerSystem(eps=self.epsilon, delta=self.system.delta_cm1,
                           temperature=self.system.temperature_K, bath=self.bath_model())

    def quadrature(self) -> QuadratureControl:
        n = self.numeric
        return QuadratureControl(abs_tol=n.abs_tol, rel_tol=n.rel_tol, panel_budget=n.panel_budget)


_BLOCKS = {"system": SystemBlock, "bath": BathBlock, "output": OutputBlock, "numeric": NumericBlock}


def _coerce(block: str, f: dataclasses.Field, value: Any):
    where = f"{block}.{f.name}"
    kind = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
    if "float" in kind:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where} must be a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            raise ConfigError(f"{where} must be finite")
        return value
    if "int" in kind:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where} must be an integer, got {value!r}")
        return value
    if not isinstance(value, str):
        raise ConfigError(f"{where} must be a string, got {value!r}")
    return value


def _build_block(name: str, data: Any):
    cls = _BLOCKS[name]
    if not isinstance(data, Mapping):
        raise ConfigError(f"[{name}] must be a table")
    known = {f.name: f for f in fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"unknown key {name}.{key}")
    kwargs = {key: _coerce(name, known[key], value) for key, value in data.items()}
    try:
        return cls(**kwargs)
    except TypeError:
        missing = [f.name for f in fields(cls)
                   if f.default is dataclasses.MISSING and f.name not in kwargs]
        raise ConfigError(f"[{name}] is missing required key(s): {', '.join(missing)}") from None


def _positive(where: str, value: Optional[float]):
    if value is not None and not value > 0:
        raise ConfigError(f"{where} must be > 0, got {value!r}")


def _validate(cfg: RunConfig) -> None:
    s = cfg.system
    _positive("system.delta_cm1", s.delta_cm1)
    _positive("system.temperature_K", s.temperature_K)
    sites = (s.site_energy_1_cm1, s.site_energy_2_cm1)
    if s.epsilon_cm1 is not None:
        if any(v is not None for v in sites):
            raise ConfigError("give either system.epsilon_cm1 or the two site energies, not both")
        if s.epsilon_cm1 < 0:
            raise ConfigError("system.epsilon_cm1 must be >= 0 (site 1 is the higher-energy site)")
    elif None in sites:
        raise ConfigError("system needs epsilon_cm1 or both site_energy_1_cm1 and site_energy_2_cm1")
    elif sites[0] < sites[1]:
        raise ConfigError("site_energy_1_cm1 < site_energy_2_cm1: relabel the sites so site 1 is higher")

    b = cfg.bath
    lam_tau = (b.lambda_cm1, b.tau_fs)
    k_wc = (b.K, b.omega_c_cm1)
    has_lt = any(v is not None for v in lam_tau)
    has_kw = any(v is not None for v in k_wc)
    if b.type == "ohmic":
        if has_lt and has_kw:
            raise ConfigError("bath: give either {lambda_cm1, tau_fs} or {K, omega_c_cm1}, not both")
        chosen = lam_tau if has_lt else k_wc
        if not (has_lt or has_kw) or None in chosen:
            raise ConfigError("ohmic bath needs lambda_cm1 and tau_fs, or K and omega_c_cm1")
        if has_kw and not 0 <= b.K < 0.5:
            raise ConfigError(f"bath.K must lie in [0, 0.5), got {b.K!r}")
    elif b.type == "debye":
        if has_kw:
            raise ConfigError("debye bath takes lambda_cm1 and tau_fs only")
        if None in lam_tau:
            raise ConfigError("debye bath needs lambda_cm1 and tau_fs")
    else:
        raise ConfigError(f"bath.type must be 'ohmic' or 'debye', got {b.type!r}")
    _positive("bath.lambda_cm1", b.lambda_cm1)
    _positive("bath.tau_fs", b.tau_fs)
    _positive("bath.omega_c_cm1", b.omega_c_cm1)

    if cfg.output.format != "csv":
        raise ConfigError(f"output.format must be 'csv', got {cfg.output.format!r}")
    n = cfg.numeric
    if n.method not in METHODS:
        raise ConfigError(f"numeric.method must be one of {METHODS}, got {n.method!r}")
    if n.samples < 2:
        raise ConfigError("numeric.samples must be >= 2")
    _positive("numeric.t_max_fs", n.t_max_fs)
    if not 0 < n.threshold < 1:
        raise ConfigError("numeric.threshold must lie in (0, 1)")
    try:
        cfg.quadrature()
        cfg.dimer()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def config_from_mapping(data: Mapping[str, Any]) -> RunConfig:
    """Validate a parsed document and build a :class:`RunConfig`."""
    for key in data:
        if key not in _BLOCKS:
            raise ConfigError(f"unknown table [{key}]")
    for required in ("system", "bath"):
        if required not in data:
            raise ConfigError(f"missing table [{required}]")
    blocks = {name: _build_block(name, value) for name, value in data.items()}
    cfg = RunConfig(**blocks)
    _validate(cfg)
    return cfg


def config_to_mapping(cfg: RunConfig) -> dict[str, dict[str, Any]]:
    out = {}
    for name in _BLOCKS:
        block = dataclasses.asdict(getattr(cfg, name))
        out[name] = {k: v for k, v in block.items() if v is not None}
    return out


def loads_config(text: str, source: str = "<string>") -> RunConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: parse error: {exc}") from None
    return config_from_mapping(data)


def load_config(path) -> RunConfig:
    """Read and validate a TOML run configuration from ``path``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return loads_config(text, str(path))


def dumps_config(cfg: RunConfig) -> str:
    return tomli_w.dumps(config_to_mapping(cfg))
