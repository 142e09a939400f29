"""Which description a crystallisation event needs: classical, QM, or QFT.

The decision compares the decoherence timescale tau_dec = min(tau1, tau2)
with the dynamical timescale of the process, tau_dyn:

* tau_dyn / tau_dec <= threshold: coherence survives long enough that
  ordinary quantum mechanics is adequate (QuantumMechanicsAdequate).
* tau_dyn / tau_dec > threshold and no macroscopically coherent phase is
  observed: the superposition is destroyed long before the dynamics
  completes, classical dynamics suffices (ClassicalLimit).
* tau_dyn / tau_dec > threshold and a coherent phase is observed anyway:
  decoherence forbids a quantum-mechanical account of the observed order,
  pointing at field-theoretic mechanisms (QftRegimeIndicated).

The module also hosts a consistency check that runs the timescale formulas
backwards from an X-ray scattering time to an implied bulk density and
lattice spacing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import DecoherenceContext, tau1 as _tau1
from .errors import ValidationError
from .materials import SaltRecord
from .units import CODATA, LENGTH, MASS_DENSITY, TIME, Quantity

DEFAULT_THRESHOLD_RATIO = 1e3

THRESHOLD_NOTE = (
    "threshold_ratio is an operational choice of this library "
    "(default 1e3), not a published constant"
)


class Verdict(enum.Enum):
    CLASSICAL_LIMIT = "ClassicalLimit"
    QUANTUM_MECHANICS_ADEQUATE = "QuantumMechanicsAdequate"
    QFT_REGIME_INDICATED = "QftRegimeIndicated"


@dataclass(frozen=True)
class RegimeReport:
    """Classification result with every input echoed for auditability."""

    tau1: Quantity
    tau2: Quantity
    tau_dyn: Quantity
    coherent_phase_observed: bool
    threshold_ratio: float
    verdict: Verdict

    @property
    def tau_dec(self) -> Quantity:
        return min(self.tau1, self.tau2)

    @property
    def timescale_ratio(self) -> float:
        return self.tau_dyn.ratio(self.tau_dec)

    def to_dict(self) -> dict:
        return {
            "inputs": {
                "tau1_s": self.tau1.si,
                "tau2_s": self.tau2.si,
                "tau_dyn_s": self.tau_dyn.si,
                "coherent_phase_observed": self.coherent_phase_observed,
                "threshold_ratio": self.threshold_ratio,
            },
            "tau_dec_s": self.tau_dec.si,
            "timescale_ratio": self.timescale_ratio,
            "verdict": self.verdict.value,
            "note": THRESHOLD_NOTE,
        }


def classify(
    tau1: Quantity,
    tau2: Quantity,
    tau_dyn: Quantity,
    coherent_phase_observed: bool,
    threshold_ratio: float = DEFAULT_THRESHOLD_RATIO,
) -> RegimeReport:
    """Apply the regime rule; see the module docstring for the three cases.

    The rule only sees the ratio tau_dyn / min(tau1, tau2), so rescaling
    every timescale by one factor never changes the verdict.
    """
    for label, q in (("tau1", tau1), ("tau2", tau2), ("tau_dyn", tau_dyn)):
        q.require(TIME, label)
        if q.si <= 0:
            raise ValidationError(f"{label} must be positive, got {q.si!r}")
    if threshold_ratio <= 1.0:
        raise ValidationError(
            f"threshold_ratio must exceed 1, got {threshold_ratio!r}"
        )
    ratio = tau_dyn.ratio(min(tau1, tau2))
    if ratio <= threshold_ratio:
        verdict = Verdict.QUANTUM_MECHANICS_ADEQUATE
    elif coherent_phase_observed:
        verdict = Verdict.QFT_REGIME_INDICATED
    else:
        verdict = Verdict.CLASSICAL_LIMIT
    return RegimeReport(
        tau1=tau1,
        tau2=tau2,
        tau_dyn=tau_dyn,
        coherent_phase_observed=coherent_phase_observed,
        threshold_ratio=threshold_ratio,
        verdict=verdict,
    )


@dataclass(frozen=True)
class XRayCheck:
    """Implied bulk properties if tau1 is rescaled to an X-ray interaction time.

    Scattering favours the X-ray probe by tau1 / tau_x, so a medium that
    decohered no faster than the probe interacts would need density
    implied_density = rho * tau1 / tau_x and formula-unit spacing
    (formula_mass / implied_density)^(1/3). wavelength_x = c * tau_x is the
    free-space length scale of the probe.
    """

    tau_x: Quantity
    wavelength_x: Quantity
    implied_density: Quantity
    implied_spacing: Quantity

    def to_dict(self) -> dict:
        return {
            "tau_x_s": self.tau_x.si,
            "wavelength_x_m": self.wavelength_x.si,
            "implied_density_kg_m3": self.implied_density.si,
            "implied_spacing_m": self.implied_spacing.si,
        }


def xray_consistency(ctx: DecoherenceContext, record: SaltRecord, tau_x: Quantity) -> XRayCheck:
    """Run the tau1 formula backwards against an X-ray interaction time."""
    tau_x.require(TIME, "tau_x")
    if tau_x.si <= 0:
        raise ValidationError(f"tau_x must be positive, got {tau_x.si!r}")
    implied_density = (record.mass_density * _tau1(ctx) / tau_x).require(
        MASS_DENSITY, "implied density"
    )
    implied_spacing = _cbrt(record.formula_mass / implied_density)
    return XRayCheck(
        tau_x=tau_x,
        wavelength_x=(CODATA.c * tau_x).require(LENGTH, "wavelength_x"),
        implied_density=implied_density,
        implied_spacing=implied_spacing.require(LENGTH, "implied spacing"),
    )


def _cbrt(volume: Quantity) -> Quantity:
    if volume.si < 0:
        raise ValidationError("cannot take the cube root of a negative volume")
    return Quantity(volume.si ** (1.0 / 3.0), volume.dim.root(3))
