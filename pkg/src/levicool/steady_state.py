"""Steady-state phonon occupation, regime flags, and the coupling figure of merit.

The steady-state occupation of the sphere decomposes into three additive
terms: the balance of sphere heating against (gas + sympathetic) damping,
the limit set by the finite atom cooling rate, and the limit set by atom
momentum diffusion. The report keeps all three so designs can be diagnosed
term by term; their sum is the occupation, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularConfigurationError
from .rates import RateBundle, build_rate_bundle
from .system import DerivedSystem, SystemConfig, derive

#: factor by which the cooperativity must exceed the thermal occupation for
#: measurement-based feedback to reach the ground state
FEEDBACK_OCCUPATION_FACTOR = 8.0


@dataclass(frozen=True)
class RegimeFlags:
    """Qualitative classification of an operating point."""

    ground_state: bool                 # occupation < 1
    strong_coupling: bool              # coupling exceeds summed dissipation
    adiabatic_ok: bool                 # atom cooling at least as fast as the coupling
    weak_coupling_ok: bool             # coupling well below both trap frequencies
    bad_cavity: bool                   # cavity linewidth far above the trap frequency
    feedback_ground_state_feasible: bool | None  # None when no cooperativity configured

    def true_names(self) -> tuple[str, ...]:
        return tuple(name for name in FLAG_NAMES if getattr(self, name) is True)


FLAG_NAMES = (
    "ground_state",
    "strong_coupling",
    "adiabatic_ok",
    "weak_coupling_ok",
    "bad_cavity",
    "feedback_ground_state_feasible",
)


@dataclass(frozen=True)
class SteadyStateReport:
    """Occupation with its three-term decomposition and regime flags."""

    occupation: float
    term_cooling_balance: float        # heating / (gas damping + sympathetic cooling)
    term_atom_cooling_limit: float     # (atom_cooling / 4 omega_at)^2
    term_atom_diffusion_limit: float   # atom_diffusion / (2 atom_cooling)
    strong_coupling_ratio: float
    flags: RegimeFlags


def sphere_heating_sum(bundle: RateBundle, include_noise: bool | None = None) -> float:
    """Total sphere heating: gas thermal load + backaction/2 + recoil.

    Laser technical noise is added only on request; by default those rates
    are stabilization requirements, not model heating terms.
    """
    if include_noise is None:
        include_noise = bundle.include_noise_in_occupation
    total = (bundle.gas_damping * bundle.thermal_occupation
             + bundle.sphere_backaction / 2.0
             + bundle.sphere_recoil)
    if include_noise:
        total += bundle.intensity_noise + bundle.pointing_noise
    return total


def strong_coupling_ratio(bundle: RateBundle) -> float:
    """Coupling over summed dissipation; above one, coherent dynamics win."""
    denominator = (bundle.atom_diffusion + bundle.sphere_backaction
                   + bundle.thermalization + bundle.sphere_recoil)
    if denominator <= 0:
        raise SingularConfigurationError(
            "strong-coupling ratio undefined: total dissipation is zero")
    return bundle.coupling / denominator


def classify_regimes(bundle: RateBundle, occupation: float,
                     ratio: float | None = None, *,
                     weak_coupling_margin: float = 0.1,
                     bad_cavity_margin: float = 10.0) -> RegimeFlags:
    """Evaluate the qualitative flags for an operating point.

    The weak-coupling check uses coupling <= margin * min(trap frequencies);
    the bad-cavity check uses linewidth >= margin * trap frequency. Both
    margins are configurable cuts standing in for strict inequalities.
    """
    if ratio is None:
        ratio = strong_coupling_ratio(bundle)
    if bundle.cooperativity is None:
        feedback = None
    else:
        feedback = bundle.cooperativity > FEEDBACK_OCCUPATION_FACTOR * bundle.thermal_occupation
    return RegimeFlags(
        ground_state=occupation < 1.0,
        strong_coupling=ratio > 1.0,
        adiabatic_ok=bundle.atom_cooling >= bundle.coupling,
        weak_coupling_ok=bundle.coupling <= weak_coupling_margin * min(
            bundle.atom_frequency, bundle.sphere_frequency),
        bad_cavity=bundle.cavity_linewidth >= bad_cavity_margin * bundle.sphere_frequency,
        feedback_ground_state_feasible=feedback,
    )


def steady_state(bundle: RateBundle, include_noise: bool | None = None) -> SteadyStateReport:
    """Steady-state occupation of the sphere with decomposition and flags.

    In the fully decoupled limit (zero coupling and zero atom cooling) the
    two atom-limit terms are absent; otherwise a zero atom cooling rate is
    singular.
    """
    if bundle.atom_frequency <= 0:
        raise SingularConfigurationError("atom trap frequency must be > 0")
    total_damping = bundle.gas_damping + bundle.cooling
    if total_damping <= 0:
        raise SingularConfigurationError(
            "no damping at all: gas damping + sympathetic cooling must be > 0")

    heating = sphere_heating_sum(bundle, include_noise)
    term_balance = heating / total_damping

    if bundle.atom_cooling == 0:
        if bundle.coupling != 0:
            raise SingularConfigurationError(
                "a coupled ensemble needs a nonzero atom cooling rate")
        term_cooling_limit = 0.0
        term_diffusion_limit = 0.0
    else:
        term_cooling_limit = (bundle.atom_cooling / (4.0 * bundle.atom_frequency))**2
        term_diffusion_limit = bundle.atom_diffusion / (2.0 * bundle.atom_cooling)

    occupation = term_balance + term_cooling_limit + term_diffusion_limit
    ratio = strong_coupling_ratio(bundle)
    flags = classify_regimes(bundle, occupation, ratio)
    return SteadyStateReport(
        occupation=occupation,
        term_cooling_balance=term_balance,
        term_atom_cooling_limit=term_cooling_limit,
        term_atom_diffusion_limit=term_diffusion_limit,
        strong_coupling_ratio=ratio,
        flags=flags,
    )


def evaluate(config: SystemConfig) -> tuple[DerivedSystem, RateBundle, SteadyStateReport]:
    """Full pipeline: config -> derived quantities -> rates -> steady state."""
    derived = derive(config)
    bundle = build_rate_bundle(derived)
    return derived, bundle, steady_state(bundle)
