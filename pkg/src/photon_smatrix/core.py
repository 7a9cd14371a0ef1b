"""Scatterer data model and shared error types.

Conventions: hbar = v_g = 1, so momenta and energies are interchangeable.
All energies are detunings from the linearization point and may be negative.
The stored decay rates are always the ones appropriate to the declared
chirality (no factor-of-2 conversion is ever applied internally).
"""

from dataclasses import dataclass
from enum import Enum


class Kind(Enum):
    V_ATOM = "V_ATOM"
    TWO_2LS = "TWO_2LS"


class Chirality(Enum):
    CHIRAL = "CHIRAL"
    NONCHIRAL = "NONCHIRAL"


class ScattererError(Exception):
    """Base class for all library errors."""


class ValidationError(ScattererError):
    """A scatterer invariant is violated; the message names the first one."""


class PoleAtLevelError(ScattererError):
    """An energy argument coincides exactly with a level energy."""


class GuardBandError(ScattererError):
    """An energy argument is inside the guard band of a level energy."""


class ChiralityMismatchError(ScattererError):
    """Operation requires the other chirality."""


class KindMismatchError(ScattererError):
    """Operation requires the other scatterer kind."""


class SingularResolventError(ScattererError):
    """(k - A) is numerically singular (diagnostic; not expected for valid inputs)."""


class EigenFailureError(ScattererError):
    """Eigensolver failed to converge (diagnostic)."""


class RootQualityError(ScattererError):
    """A transparency root failed its residual or realness check."""


class DarkStateError(ScattererError):
    """The effective matrix A has a (near-)dark eigenvalue; time integration would not converge."""


class UnconvergedError(ScattererError):
    """Time integration did not reach a steady state within the horizon."""


class OnShellViolationError(ScattererError):
    """Two-photon point hits a configuration excluded by the integration scheme."""


@dataclass(frozen=True)
class Scatterer:
    """Point-like emitter with N excited levels coupled to a 1D waveguide.

    deltas: excitation energies (detunings), one per level.
    gammas: decay rates, strictly positive, one per level.
    kind: V_ATOM (single shared ground state, no double excitation) or
          TWO_2LS (two independent two-level systems at the same point;
          only valid with exactly two levels).
    """

    kind: Kind
    deltas: tuple[float, ...]
    gammas: tuple[float, ...]
    chirality: Chirality = Chirality.NONCHIRAL

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))

    @property
    def n_levels(self) -> int:
        return len(self.deltas)

    @property
    def gamma_scale(self) -> float:
        """Reference rate used for guard bands and tolerances."""
        return max(self.gammas) if self.gammas else 1.0


def validate(scatterer: Scatterer) -> None:
    """Raise ValidationError naming the first violated invariant; return otherwise."""
    if not isinstance(scatterer.kind, Kind):
        raise ValidationError(f"kind must be a Kind enum, got {scatterer.kind!r}")
    if not isinstance(scatterer.chirality, Chirality):
        raise ValidationError(
            f"chirality must be a Chirality enum, got {scatterer.chirality!r}"
        )
    n = len(scatterer.deltas)
    if n < 1:
        raise ValidationError("at least one level is required (N >= 1)")
    if len(scatterer.gammas) != n:
        raise ValidationError(
            f"deltas and gammas must have equal length "
            f"({n} != {len(scatterer.gammas)})"
        )
    for i, g in enumerate(scatterer.gammas, start=1):
        if not g > 0.0:
            raise ValidationError(f"gamma_{i} <= 0 (all decay rates must be strictly positive)")
    if scatterer.kind is Kind.TWO_2LS and n != 2:
        raise ValidationError(f"TWO_2LS requires N=2, got N={n}")


@dataclass(frozen=True)
class TwoPhotonPoint:
    """On-shell energies of a two-photon process.

    The total-energy delta function is factored out and never represented;
    p2 is derived so the point is on shell by construction.
    """

    k1: float
    k2: float
    p1: float

    @property
    def p2(self) -> float:
        return self.k1 + self.k2 - self.p1

    @property
    def total_energy(self) -> float:
        return self.k1 + self.k2
