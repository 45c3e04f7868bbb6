"""Parameters of the C_lambda-extended oscillator algebra and derived quantities.

The algebra is fixed by an integer ``lam >= 2`` and real parameters
``alpha_0 .. alpha_{lam-1}`` summing to zero, so that

    [a, a^+] = I + sum_mu alpha_mu P_mu.

Everything here is exact (``fractions.Fraction``) except the gamma-function
form of the state norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from ._exact import (
    EXACT_LAMBDAS,
    ExactComplex,
    QSqrt3,
    float_root_of_unity,
    exact_root_of_unity,
    fmt_fraction,
    to_fraction,
)
from .errors import ConjugacyViolation, GammaPole, NonRealAlpha, RepresentationMissing

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class AlgebraParams:
    """Algebra parameters built from the ``lam - 1`` independent alphas.

    ``alpha_{lam-1}`` is derived as minus the sum of the others, so the full
    tuple :attr:`alpha` always sums to exactly zero.

    Examples
    --------
    >>> p = AlgebraParams(3, ("0", 1))
    >>> p.alpha
    (Fraction(0, 1), Fraction(1, 1), Fraction(-1, 1))
    """

    lam: int
    independent: tuple = field(default=())

    def __post_init__(self):
        if isinstance(self.lam, bool) or not isinstance(self.lam, int):
            raise TypeError("lam must be an integer")
        if self.lam < 2:
            raise ValueError(f"lam must be >= 2, got {self.lam}")
        vals = tuple(to_fraction(v) for v in self.independent)
        if len(vals) != self.lam - 1:
            raise ValueError(
                f"expected {self.lam - 1} independent alpha values for lam={self.lam}, "
                f"got {len(vals)}"
            )
        object.__setattr__(self, "independent", vals)

    @cached_property
    def alpha(self) -> tuple:
        return self.independent + (-sum(self.independent, Fraction(0)),)

    def a(self, mu: int) -> Fraction:
        """``alpha_mu`` with the index taken mod ``lam``."""
        return self.alpha[mu % self.lam]

    def to_json(self) -> dict:
        return {"lambda": self.lam, "alpha": [fmt_fraction(x) for x in self.independent]}

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraParams":
        return cls(int(obj["lambda"]), tuple(obj["alpha"]))


@dataclass(frozen=True)
class KappaParams:
    """The complex parameters ``kappa_1 .. kappa_{lam-1}`` of the T-form relation.

    For ``lam`` in 2, 3, 4, 6 the entries are :class:`ExactComplex`; otherwise
    plain Python complex numbers.  ``kappa[0]`` holds kappa_1.
    """

    lam: int
    kappa: tuple

    def __post_init__(self):
        if self.lam < 2:
            raise ValueError(f"lam must be >= 2, got {self.lam}")
        if len(self.kappa) != self.lam - 1:
            raise ValueError(f"expected {self.lam - 1} kappa values")
        exact = self.lam in EXACT_LAMBDAS
        coerced = []
        for k in self.kappa:
            if exact:
                if not isinstance(k, ExactComplex):
                    if isinstance(k, complex):
                        raise TypeError("use ExactComplex entries for exact lambdas")
                    k = ExactComplex(QSqrt3.lift(k))
            else:
                k = complex(k)
            coerced.append(k)
        object.__setattr__(self, "kappa", tuple(coerced))
        _check_conjugacy(self)

    @property
    def is_exact(self) -> bool:
        return self.lam in EXACT_LAMBDAS

    @classmethod
    def from_parts(cls, lam: int, parts: Sequence) -> "KappaParams":
        """Build from ``(re, im)`` pairs of rationals (or floats for inexact lambdas)."""
        if lam in EXACT_LAMBDAS:
            return cls(lam, tuple(ExactComplex(QSqrt3.lift(r), QSqrt3.lift(i)) for r, i in parts))
        return cls(lam, tuple(complex(float(r), float(i)) for r, i in parts))


def _check_conjugacy(k: KappaParams) -> None:
    lam = k.lam
    for mu in range(1, lam):
        left = k.kappa[mu - 1].conjugate()
        right = k.kappa[lam - mu - 1]
        if k.is_exact:
            ok = left == right
        else:
            ok = abs(left - right) < FLOAT_TOL
        if not ok:
            raise ConjugacyViolation(
                f"kappa_{mu}* != kappa_{lam - mu}: {complex(left)} vs {complex(right)}"
            )


def _real_to_fraction(x: Union[QSqrt3, float]) -> Fraction:
    # irrational values fall back to the nearest double
    if isinstance(x, QSqrt3):
        return x.a if x.is_rational() else Fraction(float(x))
    return Fraction(float(x))


def from_kappa(k: KappaParams) -> AlgebraParams:
    """Map ``kappa`` to ``alpha_mu = sum_nu exp(2 pi i mu nu / lam) kappa_nu``."""
    _check_conjugacy(k)
    lam = k.lam
    alphas = []
    for mu in range(lam):
        if k.is_exact:
            acc = ExactComplex()
            for nu in range(1, lam):
                acc = acc + exact_root_of_unity(mu * nu, lam) * k.kappa[nu - 1]
            if acc.im != 0:
                raise NonRealAlpha(f"alpha_{mu} has imaginary part {float(acc.im)}")
            alphas.append(_real_to_fraction(acc.re))
        else:
            acc = sum(float_root_of_unity(mu * nu, lam) * k.kappa[nu - 1] for nu in range(1, lam))
            if abs(acc.imag) >= FLOAT_TOL:
                raise NonRealAlpha(f"alpha_{mu} has imaginary part {acc.imag}")
            alphas.append(_real_to_fraction(acc.real))
    return AlgebraParams(lam, tuple(alphas[:-1]))


def to_kappa(p: AlgebraParams) -> KappaParams:
    """Inverse map: ``kappa_nu = (1/lam) sum_mu exp(-2 pi i mu nu / lam) alpha_mu``."""
    lam = p.lam
    out = []
    for nu in range(1, lam):
        if lam in EXACT_LAMBDAS:
            acc = ExactComplex()
            for mu in range(lam):
                acc = acc + exact_root_of_unity(-mu * nu, lam) * p.alpha[mu]
            out.append(acc / lam)
        else:
            acc = sum(float_root_of_unity(-mu * nu, lam) * float(p.alpha[mu]) for mu in range(lam))
            out.append(acc / lam)
    return KappaParams(lam, tuple(out))


@dataclass(frozen=True)
class DerivedParams:
    beta: tuple
    gamma: tuple
    beta_bar: tuple


def derive(p: AlgebraParams) -> DerivedParams:
    """Cumulative sums ``beta``, level shifts ``gamma`` and ``beta_bar = (beta + nu)/lam``."""
    lam = p.lam
    beta = [Fraction(0)]
    for mu in range(1, lam):
        beta.append(beta[-1] + p.alpha[mu - 1])
    gamma = [beta[mu] + p.alpha[mu] / 2 for mu in range(lam)]
    beta_bar = [(beta[nu] + nu) / lam for nu in range(lam)]
    return DerivedParams(tuple(beta), tuple(gamma), tuple(beta_bar))


def structure_function(p: AlgebraParams, n: int) -> Fraction:
    """``F(n) = n + beta_{n mod lam}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n + derive(p).beta[n % p.lam]


@dataclass(frozen=True)
class FockExistence:
    exists: bool
    violated: tuple  # mu values with F(mu) <= 0

    def __bool__(self):
        return self.exists


def fock_space_exists(p: AlgebraParams) -> FockExistence:
    """Fock representation exists iff ``F(mu) > 0`` for ``mu = 1 .. lam-1``.

    The boundary ``F(mu) == 0`` counts as a violation.
    """
    beta = derive(p).beta
    bad = tuple(mu for mu in range(1, p.lam) if mu + beta[mu] <= 0)
    return FockExistence(not bad, bad)


def require_fock(p: AlgebraParams) -> None:
    ex = fock_space_exists(p)
    if not ex:
        raise RepresentationMissing(
            f"no Fock representation for lambda={p.lam}, alpha={[str(a) for a in p.alpha]}: "
            f"F(mu) <= 0 for mu in {list(ex.violated)}"
        )


def norm_product(p: AlgebraParams, n: int) -> Fraction:
    """``N_n = F(1) F(2) ... F(n)``, with ``N_0 = 1``."""
    require_fock(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    beta = derive(p).beta
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= i + beta[i % p.lam]
    return out


def _gamma_args(p: AlgebraParams, n: int):
    k, mu = divmod(n, p.lam)
    bb = derive(p).beta_bar
    num = [k + 1 + bb[nu] for nu in range(mu + 1)]
    num += [k + bb[nu] for nu in range(mu + 1, p.lam)]
    den = [bb[nu] for nu in range(1, p.lam)]
    return num, den


def log_norm_gamma(p: AlgebraParams, n: int) -> float:
    """Natural log of the gamma-function form of ``N_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num, den = _gamma_args(p, n)
    for x in num + den:
        if x <= 0 and x.denominator == 1:
            raise GammaPole(f"gamma argument {x} is a nonpositive integer")
    require_fock(p)
    total = n * math.log(p.lam)
    total += sum(math.lgamma(float(x)) for x in num)
    total -= sum(math.lgamma(float(x)) for x in den)
    return total


def norm_gamma(p: AlgebraParams, n: int) -> float:
    """Evaluate ``N_{k lam + mu}`` through products of gamma functions.

    ``lam^(k lam + mu) * prod_{nu<=mu} G(k+1+bb_nu) * prod_{nu>mu} G(k+bb_nu)
    / prod_{nu>=1} G(bb_nu)`` with ``bb_nu = (beta_nu + nu)/lam``, summed in log
    space.  Should agree with :func:`norm_product` to ~1e-13 relative.
    """
    return math.exp(log_norm_gamma(p, n))
