"""Built-in parameter sets for the FMO and PC645 dimers."""

from __future__ import annotations

from .config import BathBlock, NumericBlock, RunConfig, SystemBlock

# BChl a 1 / BChl a 2 of FMO: site energies 315 and 240 cm^-1, coupling
# 87.7 cm^-1, lam ~ 35 cm^-1, tau = 50 fs.
_FMO_BATH = BathBlock(type="ohmic", lambda_cm1=35.0, tau_fs=50.0)


def _fmo(temperature: float, threshold: float) -> RunConfig:
    return RunConfig(
        system=SystemBlock(delta_cm1=87.7, temperature_K=temperature,
                           site_energy_1_cm1=315.0, site_energy_2_cm1=240.0),
        bath=_FMO_BATH,
        numeric=NumericBlock(threshold=threshold),
    )


PRESETS: dict[str, RunConfig] = {
    "fmo77": _fmo(77.0, threshold=0.015),
    "fmo277": _fmo(277.0, threshold=0.011),
    # DBVc / DBVd of PC645: 17116 and 17034 cm^-1, coupling 319.4 cm^-1,
    # Debye bath with lam ~ 130 cm^-1 and the shorter relaxation time 50 fs.
    "pc645": RunConfig(
        system=SystemBlock(delta_cm1=319.4, temperature_K=294.0,
                           site_energy_1_cm1=17116.0, site_energy_2_cm1=17034.0),
        bath=BathBlock(type="debye", lambda_cm1=130.0, tau_fs=50.0),
        numeric=NumericBlock(threshold=0.01),
    ),
}


def get_preset(name: str) -> RunConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
