"""Period-lambda level spacings of H0 and the inverse problem for lambda=3.

A cyclic shape invariant spectrum with spacings ``omega_0 .. omega_{lam-1}``
has levels ``0`` and ``k*Omega + omega_0 + ... + omega_mu``.  The shifted
Hamiltonian ``H0 - E_gs`` reproduces such spectra for part of the parameter
plane.  The overall scale is fixed so that ``Omega = lam``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from ._exact import fmt_fraction, to_fraction
from .algebra import AlgebraParams, require_fock
from .errors import (
    DegenerateSpectrum,
    InvalidSpec,
    NoMatch,
    NotPeriodic,
    RepresentationMissing,
    UnsupportedLambda,
)
from .spectrum import classify_ground_order, iter_levels, level_energy, sector_classes


class ShapeInvarianceWarning(UserWarning):
    """lambda=2 spectra do not map onto cyclic shape invariant potentials."""


@dataclass(frozen=True)
class CyclicSpectrumSpec:
    lam: int
    omega: tuple

    def __post_init__(self):
        om = tuple(to_fraction(w) for w in self.omega)
        if len(om) != self.lam:
            raise InvalidSpec(f"need {self.lam} spacings, got {len(om)}")
        if any(w <= 0 for w in om):
            raise InvalidSpec("all spacings must be positive")
        object.__setattr__(self, "omega", om)

    @property
    def Omega(self) -> Fraction:
        return sum(self.omega, Fraction(0))

    def levels(self, count: int) -> List[Fraction]:
        """``0, omega_0, omega_0 + omega_1, ...`` (the first ``count`` levels)."""
        out = [Fraction(0)]
        acc = Fraction(0)
        for w in itertools.cycle(self.omega):
            if len(out) >= count:
                break
            acc += w
            out.append(acc)
        return out[:count]

    def to_json(self) -> dict:
        return {"lambda": self.lam, "omega": [fmt_fraction(w) for w in self.omega],
                "Omega": fmt_fraction(self.Omega)}


def rescaled_spectrum(p: AlgebraParams, num_levels: int, omega_total=None) -> List[Fraction]:
    """Sorted distinct eigenvalues of ``(Omega/lam) (H0 - E_gs)``.

    ``omega_total`` defaults to ``lam``, which makes the map a pure shift.
    """
    require_fock(p)
    if p.lam == 2:
        warnings.warn(
            "lambda=2 spectra correspond to potentials with an extra delta "
            "singularity, not to cyclic shape invariance",
            ShapeInvarianceWarning,
            stacklevel=2,
        )
    scale = Fraction(1) if omega_total is None else to_fraction(omega_total) / p.lam
    out: List[Fraction] = []
    ground = None
    for lv in iter_levels(p):
        if ground is None:
            ground = lv.energy
        e = (lv.energy - ground) * scale
        if not out or e != out[-1]:
            out.append(e)
            if len(out) == num_levels:
                break
    return out


def spectrum_gaps(p: AlgebraParams, periods: int = 3) -> List[Fraction]:
    """Consecutive gaps of the sorted spectrum (with multiplicity).

    Covers every level up to ``periods`` full periods above the highest
    sector ground state, so that eventual periodicity is visible.
    """
    require_fock(p)
    top = max(level_energy(p, mu) for mu in range(p.lam)) + periods * p.lam
    energies = []
    for lv in iter_levels(p):
        if lv.energy > top:
            break
        energies.append(lv.energy)
    return [b - a for a, b in zip(energies, energies[1:])]


def extract_omegas(p: AlgebraParams) -> CyclicSpectrumSpec:
    """Read off ``omega_0 .. omega_2`` when the gaps repeat from the ground state on."""
    if p.lam != 3:
        raise UnsupportedLambda(f"extract_omegas needs lambda=3, got {p.lam}")
    require_fock(p)
    if any(len(c) > 1 for c in sector_classes(p)):
        raise DegenerateSpectrum(f"spectrum of {p.alpha} has coinciding levels")
    gaps = spectrum_gaps(p)
    if any(g == 0 for g in gaps):
        raise DegenerateSpectrum("zero level spacing")
    lam = p.lam
    if any(gaps[j + lam] != gaps[j] for j in range(len(gaps) - lam)):
        raise NotPeriodic(
            f"gaps of {[str(a) for a in p.alpha]} are not periodic from the ground state"
        )
    omega = gaps[:lam]
    scale = Fraction(lam) / sum(omega)
    return CyclicSpectrumSpec(lam, tuple(w * scale for w in omega))


@dataclass(frozen=True)
class OmegaMatch:
    params: AlgebraParams
    case: str
    alternatives: tuple = ()  # further (case, params) preimages

    @property
    def multiplicity(self) -> int:
        return 1 + len(self.alternatives)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "case": self.case,
            "multiplicity": self.multiplicity,
            "alternatives": [{"case": c, "params": q.to_json()} for c, q in self.alternatives],
        }


# which sectors sit at the positions 0, omega_0, omega_0 + omega_1;
# cases I, II, III first, then orderings that Fock existence rules out
_ASSIGNMENTS = [(0, 1, 2), (0, 2, 1), (2, 0, 1), (1, 0, 2), (1, 2, 0), (2, 1, 0)]


def _candidate(spec: CyclicSpectrumSpec, order) -> Optional[Tuple[str, AlgebraParams]]:
    x = [Fraction(0), spec.omega[0], spec.omega[0] + spec.omega[1]]
    e = [None] * 3
    for pos, sector in enumerate(order):
        e[sector] = x[pos]
    # E1 - E0 = 1 + (alpha0 + alpha1)/2 and E2 - E0 = 2 + alpha1/2
    a1 = 2 * (e[2] - e[0] - 2)
    a0 = 2 * (e[1] - e[0] - 1) - a1
    p = AlgebraParams(3, (a0, a1))
    try:
        case = classify_ground_order(p)
        if extract_omegas(p) != spec:
            return None
    except (RepresentationMissing, DegenerateSpectrum, NotPeriodic):
        return None
    return case, p


def match_omegas(spec: CyclicSpectrumSpec) -> OmegaMatch:
    """Find ``(alpha_0, alpha_1)`` whose shifted spectrum has spacings ``spec.omega``.

    Each ground ordering gives a linear system with one solution; candidates
    are kept only if they admit a Fock representation and round-trip through
    :func:`extract_omegas`.  The first hit in the order I, II, III is returned
    and the rest are listed in ``alternatives``.
    """
    if spec.lam != 3:
        raise UnsupportedLambda(f"match_omegas needs lambda=3, got {spec.lam}")
    if spec.Omega != 3:
        raise InvalidSpec(f"spacings must sum to 3, got {spec.Omega}")
    hits = [c for c in (_candidate(spec, o) for o in _ASSIGNMENTS) if c is not None]
    if not hits:
        raise NoMatch(f"no admissible parameters reproduce omega={[str(w) for w in spec.omega]}")
    (case, params), rest = hits[0], tuple(hits[1:])
    return OmegaMatch(params, case, rest)
