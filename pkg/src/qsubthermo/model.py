"""Shared domain types for the coupled-oscillator heat-transfer model.

Conventions used throughout the package: hbar = k_B = 1, so frequencies and
temperatures share one energy unit and time is measured in inverse energy.
Subsystem energies are the bare number operators H_a = omega_a * a^dag a and
H_b = omega_b * b^dag b; both oscillators start in product thermal states at
inverse temperatures (beta_a, beta_b).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class ModelError(ValueError):
    """Invalid physical parameters or an unsupported configuration."""


class OffResonanceError(ModelError):
    """Closed-form solutions exist only on resonance (omega_a == omega_b)."""


class SingularCouplingError(ModelError):
    """g == omega/2 makes the soft normal mode static and the closed forms singular."""


class TruncationError(ModelError):
    """Fock-space cutoff too small for the requested thermal state or band."""


class PositivityError(ModelError):
    """A supposed density matrix has a meaningfully negative eigenvalue or
    unsupported relative-entropy arguments."""


class InteractionKind(enum.Enum):
    """How the two oscillators are coupled."""

    RWA = "rwa"              # i g (a b^dag - a^dag b); conserves the bare energy
    LINEAR = "linear"        # i g (a^dag + a)(b^dag - b); keeps counter-rotating terms
    MINIMAL_A = "minimal-a"  # (p_a - q x_b)^2 / 2m form
    MINIMAL_B = "minimal-b"  # (p_b + q x_a)^2 / 2m form
    NONE = "none"            # uncoupled


# Kinds whose coupling is the momentum-shift (m, q) pair instead of g.
MINIMAL_KINDS = frozenset({InteractionKind.MINIMAL_A, InteractionKind.MINIMAL_B})


@dataclass(frozen=True)
class OscillatorSystem:
    """Two harmonic oscillators and their interaction.

    RWA/LINEAR systems carry a coupling strength ``g``; the minimal-coupling
    kinds carry a mass ``m`` and charge-like coupling ``q`` instead.
    """

    omega_a: float
    omega_b: float
    kind: InteractionKind = InteractionKind.NONE
    g: float = 0.0
    m: float | None = None
    q: float | None = None

    def __post_init__(self) -> None:
        if not (self.omega_a > 0.0 and self.omega_b > 0.0):
            raise ModelError("oscillator frequencies must be positive")
        if self.kind in MINIMAL_KINDS:
            if self.m is None or not self.m > 0.0:
                raise ModelError(f"kind={self.kind.value} requires a mass m > 0")
            if self.q is None or self.q < 0.0:
                raise ModelError(f"kind={self.kind.value} requires a coupling q >= 0")
            if self.g != 0.0:
                raise ModelError("minimal-coupling kinds use (m, q), not g")
        else:
            if self.m is not None or self.q is not None:
                raise ModelError(f"kind={self.kind.value} does not take m or q")
            if self.g < 0.0:
                raise ModelError("coupling strength g must be non-negative")
            if self.kind is InteractionKind.NONE and self.g != 0.0:
                raise ModelError("kind=none requires g == 0")

    @property
    def resonant(self) -> bool:
        return self.omega_a == self.omega_b

    def require_resonant(self) -> float:
        """Return the common frequency, or reject off-resonant systems."""
        if not self.resonant:
            raise OffResonanceError(
                "no closed form off resonance "
                f"(omega_a={self.omega_a}, omega_b={self.omega_b})"
            )
        return self.omega_a

    def mass(self) -> float:
        """Mass used for position/momentum quadratures (1 unless minimal coupling)."""
        return self.m if self.m is not None else 1.0


@dataclass(frozen=True)
class ThermalPreparation:
    """Inverse temperatures of the initial product thermal state."""

    beta_a: float
    beta_b: float

    def __post_init__(self) -> None:
        if not (self.beta_a > 0.0 and self.beta_b > 0.0):
            raise ModelError("inverse temperatures must be positive and finite")

    @classmethod
    def from_temperatures(cls, temp_a: float, temp_b: float) -> "ThermalPreparation":
        if not (temp_a > 0.0 and temp_b > 0.0):
            raise ModelError("temperatures must be positive")
        return cls(beta_a=1.0 / temp_a, beta_b=1.0 / temp_b)

    def swapped(self) -> "ThermalPreparation":
        return ThermalPreparation(beta_a=self.beta_b, beta_b=self.beta_a)


def free_entropy_change(dq_a: float, dq_b: float, prep: ThermalPreparation) -> float:
    """Free entropy change beta_a*dQ_a + beta_b*dQ_b (non-negative for thermal starts)."""
    return prep.beta_a * dq_a + prep.beta_b * dq_b


def csl_compliant(
    dq_ab: float,
    prep: ThermalPreparation,
    omega: float = 1.0,
    tol_scale: float = 1e-12,
) -> bool:
    """Clausius sign test: heat must not flow from the cooler to the hotter oscillator.

    Zero transfer (within tol_scale*omega, to absorb exact sin^2-type zeros) is
    compliant: the law forbids wrong-sign transfer, not the absence of transfer.
    """
    if abs(dq_ab) <= tol_scale * omega:
        return True
    return math.copysign(1.0, dq_ab) == _sign(prep.beta_b - prep.beta_a)


def _sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0
