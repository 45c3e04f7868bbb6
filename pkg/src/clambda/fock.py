"""Dense matrices for the bosonic Fock representation on a truncated space.

States ``|0>, ..., |D-1>`` are kept.  ``a^+`` sends the top state to zero, so
relations containing a single ladder operator are only checked on indices
``<= D-2``; relations built from ``T`` and ``P_mu`` alone hold on the full
space.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

import numpy as np

from .algebra import AlgebraParams, derive, require_fock
from .errors import DimensionTooSmall


@dataclass(frozen=True, eq=False)
class FockRep:
    params: AlgebraParams
    dim: int
    a_mat: np.ndarray
    adag_mat: np.ndarray
    n_mat: np.ndarray
    t_mat: np.ndarray
    p_mat: tuple
    h0_mat: np.ndarray

    @property
    def lam(self) -> int:
        return self.params.lam


def build(p: AlgebraParams, dim: int) -> FockRep:
    """Construct every operator of the representation in a ``dim``-state basis."""
    require_fock(p)
    lam = p.lam
    if dim < lam + 2:
        raise DimensionTooSmall(f"dim must be >= lam + 2 = {lam + 2}, got {dim}")
    d = derive(p)
    n = np.arange(dim)
    mu = n % lam
    f = np.array([float(k + d.beta[k % lam]) for k in range(1, dim)])

    a = np.diag(np.sqrt(f), 1)
    adag = a.T.copy()
    n_mat = np.diag(n)
    t_mat = np.diag(np.exp(2j * np.pi * mu / lam))
    projectors = tuple(np.diag((mu == m).astype(float)) for m in range(lam))
    energies = [float(k + d.gamma[k % lam] + Fraction(1, 2)) for k in range(dim)]
    h0 = np.diag(energies)
    for arr in (a, adag, n_mat, t_mat, h0, *projectors):
        arr.setflags(write=False)
    return FockRep(p, dim, a, adag, n_mat, t_mat, projectors, h0)


@dataclass(frozen=True)
class RelationReport:
    residuals: Dict[str, float]
    tol: float

    @property
    def failures(self) -> list:
        return [k for k, v in self.residuals.items() if not v < self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "tol": self.tol,
            "residuals": dict(self.residuals),
            "passed": self.passed,
            "failures": self.failures,
        }


RELATIONS = (
    "n_adag",       # [N, a+] = a+
    "n_t",          # [N, T] = 0
    "t_power",      # T^lam = I
    "commutator",   # [a, a+] = I + sum alpha_mu P_mu
    "adag_t",       # a+ T = exp(-2 pi i/lam) T a+
    "adag_p",       # a+ P_mu = P_{mu+1} a+
    "p_sum",        # sum P_mu = I
    "structure",    # a+ a = F(N), a a+ = F(N+1)
)


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def verify_relations(r: FockRep, tol: float = 1e-12) -> RelationReport:
    """Maximum absolute residual of each defining relation.

    Besides the eight algebra relations the report carries ``"h0"``, the
    residual of ``H0 = (a a+ + a+ a)/2``.
    """
    lam, dim = r.lam, r.dim
    a, ad, nm, t, ps = r.a_mat, r.adag_mat, r.n_mat, r.t_mat, r.p_mat
    w = slice(0, dim - 1)
    d = derive(r.params)
    eye = np.eye(dim)

    def win(m):
        return m[w, w]

    res = {}
    res["n_adag"] = _maxabs(win(nm @ ad - ad @ nm - ad))
    res["n_t"] = _maxabs(nm @ t - t @ nm)
    res["t_power"] = _maxabs(np.linalg.matrix_power(t, lam) - eye)
    rhs = eye + sum(float(r.params.alpha[m]) * ps[m] for m in range(lam))
    res["commutator"] = _maxabs(win(a @ ad - ad @ a - rhs))
    phase = np.exp(-2j * np.pi / lam)
    res["adag_t"] = _maxabs(win(ad @ t - phase * (t @ ad)))
    res["adag_p"] = max(_maxabs(win(ad @ ps[m] - ps[(m + 1) % lam] @ ad)) for m in range(lam))
    res["p_sum"] = _maxabs(sum(ps) - eye)
    f_n = np.diag([float(k + d.beta[k % lam]) for k in range(dim)])
    f_n1 = np.diag([float(k + 1 + d.beta[(k + 1) % lam]) for k in range(dim)])
    res["structure"] = max(_maxabs(win(ad @ a - f_n)), _maxabs(win(a @ ad - f_n1)))
    res["h0"] = _maxabs(win(r.h0_mat - 0.5 * (a @ ad + ad @ a)))
    return RelationReport(res, tol)


def matrix_to_csv(m: np.ndarray) -> str:
    """Row-major dense CSV; complex entries take two columns ``re,im``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cplx = np.iscomplexobj(m)
    for row in m:
        if cplx:
            writer.writerow([repr(float(x)) for z in row for x in (z.real, z.imag)])
        else:
            writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def dump(r: FockRep, directory: str) -> None:
    """Write ``header.json`` plus one CSV per matrix into ``directory``."""
    os.makedirs(directory, exist_ok=True)
    header = dict(r.params.to_json(), dim=r.dim)
    with open(os.path.join(directory, "header.json"), "w") as fh:
        json.dump(header, fh, sort_keys=True, indent=2)
    mats = {"a": r.a_mat, "adag": r.adag_mat, "n": r.n_mat, "t": r.t_mat, "h0": r.h0_mat}
    mats.update({f"p{m}": pm for m, pm in enumerate(r.p_mat)})
    for name, m in mats.items():
        with open(os.path.join(directory, f"{name}.csv"), "w") as fh:
            fh.write(matrix_to_csv(m))
