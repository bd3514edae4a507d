from dataclasses import dataclass
from enum import StrEnum
from typing import Mapping, Optional, Sequence, Union

from .bias import BiasKind, GammaKind
from .classical import BETA_PRESETS
from .engine import Engine, as_engine
from .errors import ConfigurationError, InvalidBiasError
from .labels import LabelFormat, as_label_format
from .metric import MetricConfig
from .util import parse_beta_list

__doc__ = "Resolution of evaluation settings from defaults, presets and flags."

# Default parameter settings of the range-based model
DEFAULTS = {
    "alpha": "0",
    "gamma": GammaKind.one.value,
    "recall_bias": BiasKind.flat.value,
    "precision_bias": BiasKind.flat.value,
    "betas": "1",
    "engine": Engine.fast.value,
    "format": LabelFormat.ranges.value,
}


class Preset(StrEnum):
    """Named evaluation settings."""

    nab_standard = "nab-standard"
    nab_low_fp = "nab-low-fp"
    nab_low_fn = "nab-low-fn"
    early_detection = "early-detection"


# Settings that mimic the three NAB application profiles (front-biased recall,
# flat precision, gamma = 1) and the early, non-fragmented detection setting
PRESETS: dict[Preset, dict] = {
    Preset.nab_standard: {
        "alpha": 0.0,
        "recall_gamma": GammaKind.one,
        "precision_gamma": GammaKind.one,
        "recall_bias": BiasKind.front,
        "precision_bias": BiasKind.flat,
        "betas": (BETA_PRESETS["standard"],),
    },
    Preset.nab_low_fp: {
        "alpha": 0.0,
        "recall_gamma": GammaKind.one,
        "precision_gamma": GammaKind.one,
        "recall_bias": BiasKind.front,
        "precision_bias": BiasKind.flat,
        "betas": (BETA_PRESETS["low-fp"],),
    },
    Preset.nab_low_fn: {
        "alpha": 0.0,
        "recall_gamma": GammaKind.one,
        "precision_gamma": GammaKind.one,
        "recall_bias": BiasKind.front,
        "precision_bias": BiasKind.flat,
        "betas": (BETA_PRESETS["low-fn"],),
    },
    Preset.early_detection: {
        "alpha": 0.0,
        "recall_gamma": GammaKind.reciprocal,
        "precision_gamma": GammaKind.reciprocal,
        "recall_bias": BiasKind.front,
        "precision_bias": BiasKind.flat,
        "betas": (1.0,),
    },
}


@dataclass(frozen=True)
class ResolvedSettings:
    """Everything needed to run an evaluation."""

    config: MetricConfig
    betas: tuple[float, ...]
    engine: Engine
    label_format: LabelFormat
    preset: Optional[Preset] = None

    def as_dict(self) -> dict:
        """Settings echo with plain values, as written in reports."""
        echo = self.config.as_dict()
        echo["betas"] = list(self.betas)
        echo["engine"] = self.engine.value
        echo["format"] = self.label_format.value
        echo["preset"] = self.preset.value if self.preset is not None else None
        return echo


def as_preset(value: Union[str, Preset]) -> Preset:
    """Resolve a preset name."""
    try:
        return Preset(str(value).strip().lower())
    except ValueError:
        raise ConfigurationError(
            f"Unknown preset '{value}'. Valid presets are {[p.value for p in Preset]}."
        )


def _betas(value) -> tuple[float, ...]:
    if isinstance(value, str):
        values = parse_beta_list(value)
    else:
        values = [float(v) for v in value]
    if len(values) == 0:
        raise ConfigurationError("At least one beta value is required.")
    for beta in values:
        if not beta > 0:
            raise ConfigurationError(f"Beta must be positive, got {beta}.")
    return tuple(dict.fromkeys(values))


def resolve_config(
    preset: Optional[Union[str, Preset]] = None,
    alpha: Optional[float] = None,
    gamma: Optional[str] = None,
    recall_gamma: Optional[str] = None,
    precision_gamma: Optional[str] = None,
    recall_bias: Optional[str] = None,
    precision_bias: Optional[str] = None,
    betas: Optional[Sequence[float]] = None,
    engine: Optional[str] = None,
    label_format: Optional[str] = None,
    defaults: Optional[Mapping[str, str]] = None,
) -> ResolvedSettings:
    """Combine defaults, an optional preset and explicit flags.

    Explicit flags override the preset, which overrides the defaults. `gamma`
    sets both sides; `recall_gamma` and `precision_gamma` override it per side.

    Parameters
    ----------

    defaults: Optional[Mapping[str, str]]
        String defaults keyed like `DEFAULTS` (typically read from the user
        configuration file). Missing keys fall back to `DEFAULTS`.

    Returns
    -------

    settings: ResolvedSettings
        Fully resolved settings.

    Raises
    ------

    ConfigurationError
        If a name is unknown, alpha is outside [0, 1] or a beta is not positive.
    """
    base = dict(DEFAULTS)
    if defaults is not None:
        base.update({k: v for k, v in defaults.items() if v is not None and v != ""})

    try:
        values = {
            "alpha": float(base["alpha"]),
            "recall_gamma": base["gamma"],
            "precision_gamma": base["gamma"],
            "recall_bias": base["recall_bias"],
            "precision_bias": base["precision_bias"],
            "betas": _betas(base["betas"]),
        }
    except ValueError as e:
        raise ConfigurationError(f"Invalid default setting: {e}")

    resolved_preset = None
    if preset is not None:
        resolved_preset = as_preset(preset)
        values.update(PRESETS[resolved_preset])

    if alpha is not None:
        values["alpha"] = alpha
    if gamma is not None:
        values["recall_gamma"] = gamma
        values["precision_gamma"] = gamma
    if recall_gamma is not None:
        values["recall_gamma"] = recall_gamma
    if precision_gamma is not None:
        values["precision_gamma"] = precision_gamma
    if recall_bias is not None:
        values["recall_bias"] = recall_bias
    if precision_bias is not None:
        values["precision_bias"] = precision_bias
    if betas is not None and len(betas) > 0:
        values["betas"] = _betas(betas)

    betas_resolved = values.pop("betas")
    try:
        config = MetricConfig(**values)
    except InvalidBiasError as e:
        raise ConfigurationError(str(e))

    return ResolvedSettings(
        config=config,
        betas=betas_resolved,
        engine=as_engine(engine if engine is not None else base["engine"]),
        label_format=as_label_format(
            label_format if label_format is not None else base["format"]
        ),
        preset=resolved_preset,
    )
