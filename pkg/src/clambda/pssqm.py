"""Order-two parasupersymmetry realized with the C_3-extended oscillator.

The parasupercharge family

    Q_mu = a+ (eta_{mu+1} P_{mu+1} + eta_{mu+2} P_{mu+2}),
    H_mu = H0 + (1/2) sum_nu r_nu P_nu,

with ``r_mu = -2 + alpha_{mu+1} + r_{mu+2}`` and
``r_{mu+1} = 2 - alpha_mu + r_{mu+2}`` satisfies ``Q^3 = 0`` and ``[H, Q] = 0``
for any ``r_{mu+2}``.  The trilinear closure fixes ``r_{mu+2}`` in terms of
the eta's.  Everything is checked numerically on truncated Fock matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Tuple, Union

import numpy as np

from ._exact import fmt_fraction, to_fraction
from .algebra import AlgebraParams, derive, require_fock
from .errors import DimensionTooSmall, EtaOutOfRange, UnsupportedLambda
from .fock import build

MIN_DIM = 8
SQRT2_SQ = Fraction(2)


def _check_params(params: AlgebraParams, mu: int) -> None:
    if params.lam != 3:
        raise UnsupportedLambda(f"PSSQM of order two needs lambda=3, got {params.lam}")
    if mu not in (0, 1, 2):
        raise ValueError(f"mu must be 0, 1 or 2, got {mu}")
    require_fock(params)


@dataclass(frozen=True)
class PssqmConfig:
    """Canonical-family parameters.

    ``eta_sq`` is ``eta_{mu+1}^2`` (rational, in (0, 4)); the partner
    coefficient has modulus ``sqrt(4 - eta_sq)``.  The default ``eta_sq = 2``
    is the ``eta = sqrt 2`` normalization.
    """

    params: AlgebraParams
    mu: int = 0
    eta_sq: Fraction = SQRT2_SQ
    phi: float = 0.0
    dim: int = 16

    def __post_init__(self):
        object.__setattr__(self, "eta_sq", to_fraction(self.eta_sq))
        _check_params(self.params, self.mu)
        if not 0 < self.eta_sq < 4:
            raise EtaOutOfRange(f"eta_{{mu+1}} must lie in (0, 2), got eta^2={self.eta_sq}")
        if self.dim < MIN_DIM:
            raise DimensionTooSmall(f"dim must be >= {MIN_DIM}, got {self.dim}")

    @classmethod
    def from_eta(cls, params, mu=0, eta="sqrt2", phi=0.0, dim=16) -> "PssqmConfig":
        """Accept ``eta`` as ``"sqrt2"`` or as a rational / float value."""
        if isinstance(eta, str) and eta.strip().lower() in ("sqrt2", "sqrt(2)"):
            eta_sq = SQRT2_SQ
        else:
            e = to_fraction(eta)
            if e <= 0:
                raise EtaOutOfRange(f"eta must be positive, got {e}")
            eta_sq = e * e
        return cls(params, mu, eta_sq, float(phi), dim)

    @property
    def eta1(self) -> float:
        return math.sqrt(self.eta_sq)

    @property
    def eta2_abs(self) -> float:
        return math.sqrt(4 - self.eta_sq)

    @property
    def r_shift(self) -> Fraction:
        """``r_{mu+2} = (1 + alpha_{mu+2}) (1 - eta^2/2)``."""
        return (1 + self.params.a(self.mu + 2)) * (1 - self.eta_sq / 2)


@dataclass(frozen=True, eq=False)
class PssqmSystem:
    params: AlgebraParams
    mu: int
    eta1: complex
    eta2: complex
    r: tuple  # r_0, r_1, r_2
    q_mat: np.ndarray
    h_mat: np.ndarray
    ground_energy: Union[Fraction, float]
    susy_status: str
    swapped: bool = False

    @property
    def dim(self) -> int:
        return self.q_mat.shape[0]

    def dagger(self) -> "PssqmSystem":
        """The second solution set: ``Q`` and ``Q+`` exchange roles."""
        q = self.q_mat.conj().T.copy()
        q.setflags(write=False)
        return replace(self, q_mat=q, swapped=not self.swapped)


def sector_shifts(params: AlgebraParams, mu: int, r_shift) -> tuple:
    """``(r_0, r_1, r_2)`` from ``r_{mu+2}`` and the commutation restrictions."""
    r = [None] * 3
    r[(mu + 2) % 3] = r_shift
    r[mu] = -2 + params.a(mu + 1) + r_shift
    r[(mu + 1) % 3] = 2 - params.a(mu) + r_shift
    return tuple(r)


def _susy_status(q: np.ndarray, h: np.ndarray) -> str:
    diag = np.real(np.diag(h))[:-3]
    ground = np.flatnonzero(np.isclose(diag, diag.min(), rtol=0, atol=1e-12))
    for n in ground:
        if not np.any(q[:, n]) and not np.any(q.conj().T[:, n]):
            return "unbroken"
    return "broken"


def build_general(params: AlgebraParams, mu: int, eta1: complex, eta2: complex,
                  r_shift, dim: int = 16) -> PssqmSystem:
    """Charge and Hamiltonian with free ``eta_{mu+1}``, ``eta_{mu+2}``, ``r_{mu+2}``.

    ``xi_{mu+1}`` is already set to zero, as ``[H, Q] = 0`` demands.
    """
    _check_params(params, mu)
    if dim < MIN_DIM:
        raise DimensionTooSmall(f"dim must be >= {MIN_DIM}, got {dim}")
    if eta1 == 0 or eta2 == 0:
        raise EtaOutOfRange("eta_{mu+1} and eta_{mu+2} must be nonzero")
    rep = build(params, dim)
    p1, p2 = rep.p_mat[(mu + 1) % 3], rep.p_mat[(mu + 2) % 3]
    q = rep.adag_mat @ (complex(eta1) * p1 + complex(eta2) * p2)
    r = sector_shifts(params, mu, r_shift)
    h = rep.h0_mat + 0.5 * sum(float(r[nu]) * rep.p_mat[nu] for nu in range(3))

    if all(isinstance(x, (Fraction, int)) for x in r):
        gamma = derive(params).gamma
        ground = min(n + Fraction(1, 2) + gamma[n] + Fraction(r[n]) / 2 for n in range(3))
    else:
        ground = float(np.min(np.diag(h)))
    q.setflags(write=False)
    h.setflags(write=False)
    return PssqmSystem(params, mu, complex(eta1), complex(eta2), r, q, h, ground,
                       _susy_status(q, h))


def build_charge(c: PssqmConfig) -> PssqmSystem:
    """Canonical charge ``Q_mu(eta, phi) = a+ (eta P_{mu+1} + e^{i phi} sqrt(4-eta^2) P_{mu+2})``."""
    eta2 = cmath.exp(1j * c.phi) * c.eta2_abs
    return build_general(c.params, c.mu, c.eta1, eta2, c.r_shift, c.dim)


def closed_form_hamiltonian(c: PssqmConfig) -> np.ndarray:
    """``N + (2 gamma_{mu+2} + r_{mu+2} - 1)/2 + 2 P_{mu+1} + P_{mu+2}``."""
    rep = build(c.params, c.dim)
    g = derive(c.params).gamma[(c.mu + 2) % 3]
    const = float((2 * g + c.r_shift - 1) / 2)
    return (rep.n_mat + const * np.eye(c.dim)
            + 2 * rep.p_mat[(c.mu + 1) % 3] + rep.p_mat[(c.mu + 2) % 3])


def canonical_ground_energy(params: AlgebraParams, mu: int) -> Fraction:
    """Ground energies for eta = sqrt 2: (2g2-1)/2, (2g0+1)/2, (2g1+3)/2."""
    g = derive(params).gamma
    return [(2 * g[2] - 1) / 2, (2 * g[0] + 1) / 2, (2 * g[1] + 3) / 2][mu]


def _window(m: np.ndarray) -> np.ndarray:
    k = m.shape[0] - 3  # indices <= D-4
    return m[:k, :k]


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True)
class PssqmReport:
    residuals: Dict[str, float]
    q2_witness: Tuple[int, int, complex]
    passes: Dict[str, bool]
    tol: float

    @property
    def parasusy(self) -> bool:
        """Nilpotency, conservation and the Rubakov-Spiridonov closure all hold."""
        return all(self.passes[k] for k in ("q3", "q2_nonzero", "commutator", "rs"))


def _trilinear(q: np.ndarray, h: np.ndarray, u, v, w) -> np.ndarray:
    qd = q.conj().T
    return u * (q @ q @ qd) + v * (q @ qd @ q) + w * (qd @ q @ q) - 4 * (q @ h)


def verify_pssqm(s: PssqmSystem, tol: float = 1e-10) -> PssqmReport:
    """Residuals of the order-two relations on indices ``<= D-4``.

    ``q3``: Q^3 = 0; ``commutator``: [H, Q] = 0; ``rs``: Q^2 Q+ + Q Q+ Q + Q+ Q^2
    = 4 Q H; ``bd``: [Q, [Q+, Q]] = 2 Q H.  ``Q^2 != 0`` is certified by the
    element mapping the lowest state of the first raised sector two steps up.
    """
    q, h = s.q_mat, s.h_mat
    qd = q.conj().T
    q2 = q @ q
    res = {
        "q3": _maxabs(_window(q2 @ q)),
        "commutator": _maxabs(_window(h @ q - q @ h)),
        "rs": _maxabs(_window(_trilinear(q, h, 1, 1, 1))),
        "bd": _maxabs(_window(q @ (qd @ q - q @ qd) - (qd @ q - q @ qd) @ q - 2 * (q @ h))),
    }
    # Q (or Q+ for the swapped set) raises sector mu+1 -> mu+2 -> mu
    col = (s.mu + 1) % 3
    row = col + 2
    if s.swapped:
        row, col = col, row
    witness = (row, col, complex(q2[row, col]))
    passes = {k: v < tol for k, v in res.items()}
    passes["q2_nonzero"] = witness[2] != 0
    return PssqmReport(res, witness, passes, tol)


def general_trilinear_check(s: PssqmSystem, u: complex, v: complex, w: complex) -> float:
    """Max residual of ``u Q^2 Q+ + v Q Q+ Q + w Q+ Q^2 - 4 Q H`` on the safe window."""
    return _maxabs(_window(_trilinear(s.q_mat, s.h_mat, u, v, w)))


def sol1_coefficients(eta1: complex, eta2: complex) -> Tuple[float, float, float]:
    c = 4.0 / (abs(eta2) ** 2 + abs(eta1) ** 2)
    return c, c, c


def sol1_shift(params: AlgebraParams, mu: int, eta1: complex, eta2: complex) -> float:
    """``r_{mu+2}`` required by the first (Rubakov-Spiridonov type) solution."""
    e1, e2 = abs(eta1) ** 2, abs(eta2) ** 2
    return float(1 + params.a(mu + 2)) * (e2 - e1) / (e2 + e1)


def sol2_coefficients(eta1: complex, eta2: complex, u: complex) -> Tuple[complex, complex, complex]:
    """``(u, v, w)`` of the second solution, valid when ``alpha_{mu+2} = -1``, ``r_{mu+2} = 0``."""
    e1, e2 = abs(eta1) ** 2, abs(eta2) ** 2
    v = (4 - e1 * u) / e2
    w = (4 * (e2 - e1) + e1 ** 2 * u) / e2 ** 2
    return u, v, w


def khare_charges(c: PssqmConfig) -> Tuple[np.ndarray, np.ndarray]:
    """``Q_mu(0)`` and ``Q_mu(pi)``, i.e. ``sqrt2 a+ (P_{mu+1} +- P_{mu+2})``."""
    if c.eta_sq != SQRT2_SQ:
        raise EtaOutOfRange("Khare charges are defined for eta = sqrt 2")
    q1 = build_charge(replace(c, phi=0.0)).q_mat
    q2 = build_charge(replace(c, phi=math.pi)).q_mat
    return q1, q2


@dataclass(frozen=True)
class Figure2Panel:
    mu: int
    ground_energy: Fraction
    columns: tuple  # sector order along the Q+ chain: mu, mu+2, mu+1
    rows: tuple     # dicts: n, sector, k, energy, relative, qdag_target
    normalization: str = (
        "energies are relative to this panel's ground state; panels are "
        "aligned at their ground states although the absolute ground "
        "energies differ"
    )

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "ground_energy": fmt_fraction(self.ground_energy),
            "columns": list(self.columns),
            "normalization": self.normalization,
            "levels": [
                dict(r, energy=fmt_fraction(r["energy"]), relative=fmt_fraction(r["relative"]))
                for r in self.rows
            ],
        }


def spectrum_figure2(p: AlgebraParams, mu: int, levels: int, phi: float = 0.0) -> Figure2Panel:
    """Levels ``n < levels`` of ``H_mu`` (eta = sqrt 2) with the action of ``Q_mu+``.

    ``qdag_target`` is the state reached by ``Q+`` (``None`` when ``Q+``
    annihilates the level).
    """
    dim = max(levels, MIN_DIM)
    s = build_charge(PssqmConfig(p, mu, SQRT2_SQ, phi, dim))
    qd = s.q_mat.conj().T
    gamma = derive(p).gamma
    r = s.r
    rows = []
    for n in range(levels):
        k, sec = divmod(n, 3)
        energy = n + Fraction(1, 2) + gamma[sec] + Fraction(r[sec]) / 2
        targets = np.flatnonzero(qd[:, n])
        rows.append({
            "n": n,
            "sector": sec,
            "k": k,
            "energy": energy,
            "relative": energy - s.ground_energy,
            "qdag_target": int(targets[0]) if targets.size else None,
        })
    cols = (mu, (mu + 2) % 3, (mu + 1) % 3)
    return Figure2Panel(mu, s.ground_energy, cols, tuple(rows))
