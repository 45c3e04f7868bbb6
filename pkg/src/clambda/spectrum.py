"""Exact spectrum of the bosonic oscillator Hamiltonian and the lambda=3 taxonomy.

``H0 = (a a+ + a+ a)/2`` is diagonal in the Fock basis with

    E_{k lam + mu} = k lam + mu + gamma_mu + 1/2,

so each sector ``mu`` carries a harmonic ladder of step ``lam``.  Nothing in
this module uses floating point: orderings and degeneracies are decided on
Fractions.
"""

from __future__ import annotations

import heapq
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from ._exact import fmt_fraction
from .algebra import AlgebraParams, derive, require_fock
from .errors import ClassificationMismatch, UnsupportedLambda

HALF = Fraction(1, 2)
DEFAULT_MAX_N = 8

# periodic orderings of the generic (nondegenerate, period-three) spectra;
# used only to annotate empirical labels
_GENERIC_ORDERINGS = {
    "I.1.1": (0, 1, 2),
    "II.1.1.1": (0, 2, 1),
    "III.1.1.1": (2, 0, 1),
}


@dataclass(frozen=True)
class SpectrumLevel:
    n: int
    k: int
    mu: int
    energy: Fraction

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "mu": self.mu, "energy": fmt_fraction(self.energy)}


@dataclass(frozen=True)
class Spectrum:
    """Levels sorted by energy; ties go by sector ``mu`` and then ``k``."""

    params: AlgebraParams
    levels: tuple
    degeneracy_groups: tuple  # frozensets of state indices, size >= 2

    def energy_of(self, n: int) -> Fraction:
        return level_energy(self.params, n)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "levels": [lv.to_json() for lv in self.levels],
            "degeneracy_groups": [sorted(g) for g in self.degeneracy_groups],
        }


def level_energy(p: AlgebraParams, n: int) -> Fraction:
    mu = n % p.lam
    return n + derive(p).gamma[mu] + HALF


def _level(p: AlgebraParams, gamma, n: int) -> SpectrumLevel:
    k, mu = divmod(n, p.lam)
    return SpectrumLevel(n, k, mu, n + gamma[mu] + HALF)


def _group_degenerate(levels) -> tuple:
    by_energy: Dict[Fraction, set] = {}
    for lv in levels:
        by_energy.setdefault(lv.energy, set()).add(lv.n)
    return tuple(frozenset(g) for e, g in sorted(by_energy.items()) if len(g) > 1)


def compute_spectrum(p: AlgebraParams, num_levels: int) -> Spectrum:
    """Exact energies of the states ``n = 0 .. num_levels-1``, sorted."""
    require_fock(p)
    if num_levels < p.lam:
        raise ValueError(f"num_levels must be >= lambda ({p.lam})")
    gamma = derive(p).gamma
    levels = [_level(p, gamma, n) for n in range(num_levels)]
    levels.sort(key=lambda lv: (lv.energy, lv.mu, lv.k))
    return Spectrum(p, tuple(levels), _group_degenerate(levels))


def iter_levels(p: AlgebraParams) -> Iterator[SpectrumLevel]:
    """All levels in ascending energy (ties by state index), lazily."""
    gamma = derive(p).gamma
    lam = p.lam

    def ladder(mu):
        for k in itertools.count():
            lv = _level(p, gamma, k * lam + mu)
            yield (lv.energy, lv.n), lv

    for _, lv in heapq.merge(*(ladder(mu) for mu in range(lam))):
        yield lv


def lowest_levels(p: AlgebraParams, count: int) -> List[SpectrumLevel]:
    """The ``count`` lowest-energy levels of the infinite spectrum."""
    require_fock(p)
    return list(itertools.islice(iter_levels(p), count))


def _signature_of(levels) -> str:
    out = []
    prev = None
    for lv in levels:
        if prev is not None:
            out.append("=" if lv.energy == prev else "<")
        out.append(str(lv.n))
        prev = lv.energy
    return "".join(out)


def ordering_signature(s: Spectrum, prefix_len: int) -> str:
    """Interleaving of the sector ladders, e.g. ``"0<2<1<3<5<4"``.

    The prefix is taken from the true lowest levels of the infinite spectrum,
    so it never changes when more levels are computed.  Tied states appear in
    increasing ``n``.
    """
    if prefix_len > len(s.levels):
        raise ValueError("prefix_len exceeds the number of computed levels")
    return _signature_of(lowest_levels(s.params, prefix_len))


_CHAIN_TOKEN = re.compile(r"(\d+)|([<=])")


def parse_chain(chain: str) -> Tuple[List[int], List[str]]:
    states, rels = [], []
    for num, rel in _CHAIN_TOKEN.findall(chain.replace(" ", "")):
        if num:
            states.append(int(num))
        else:
            rels.append(rel)
    if len(rels) != len(states) - 1:
        raise ValueError(f"malformed chain {chain!r}")
    return states, rels


def check_chain(p: AlgebraParams, chain: str) -> bool:
    """True iff the exact energies satisfy a chain such as ``"0<3=1<2"``."""
    states, rels = parse_chain(chain)
    e = [level_energy(p, n) for n in states]
    for left, rel, right in zip(e, rels, e[1:]):
        if rel == "<" and not left < right:
            return False
        if rel == "=" and left != right:
            return False
    return True


def chain_i1n(n: int) -> str:
    """Ordering chain of a type (I.1.n) spectrum."""
    head = "<".join(str(3 * j) for j in range(n))
    return f"{head}<1<2<{3 * n}<4<5"


def chain_ina(n: int) -> str:
    head = "".join(f"{3 * j}<" for j in range(n))
    return f"{head}{3 * n}=1<2<{3 * n + 3}=4<5"


def chain_inabc(n: int) -> str:
    head = "".join(f"{3 * j}<" for j in range(n))
    return f"{head}{3 * n}=1=2<{3 * n + 3}=4=5"


def sector_classes(p: AlgebraParams) -> List[List[int]]:
    """Partition the sectors into sets whose ladders eventually coincide.

    Ladders ``mu`` and ``nu`` share levels iff ``(mu + gamma_mu) - (nu + gamma_nu)``
    is a multiple of ``lam``.
    """
    gamma = derive(p).gamma
    keys: Dict[Fraction, List[int]] = {}
    for mu in range(p.lam):
        keys.setdefault((mu + gamma[mu]) % p.lam, []).append(mu)
    return sorted(keys.values())


_PAIR_LETTER = {(0, 1): "a", (0, 2): "b", (1, 2): "c"}


def degeneracy_profile(p: AlgebraParams) -> str:
    classes = sector_classes(p)
    biggest = max(len(c) for c in classes)
    if biggest == 1:
        return "nondegenerate"
    if p.lam == 3:
        if biggest == 3:
            return "triple"
        pair = next(tuple(c) for c in classes if len(c) == 2)
        return f"double({_PAIR_LETTER[pair]})"
    return f"degenerate({biggest}-fold)"


@dataclass(frozen=True)
class SpectrumClass:
    ground_order: str
    subclass: Optional[str] = None
    degeneracy_profile: str = "nondegenerate"
    index: Optional[int] = None
    signature: str = ""

    def to_json(self) -> dict:
        return {
            "ground_order": self.ground_order,
            "subclass": self.subclass,
            "index": self.index,
            "degeneracy_profile": self.degeneracy_profile,
            "signature": self.signature,
        }


def _require_c3(p: AlgebraParams) -> None:
    if p.lam != 3:
        raise UnsupportedLambda(f"classification is defined for lambda=3 only, got {p.lam}")
    require_fock(p)


def _ground_order_from_energies(p: AlgebraParams) -> str:
    e = [level_energy(p, n) for n in range(3)]
    if len(set(e)) < 3:
        return "Boundary"
    order = tuple(sorted(range(3), key=lambda n: e[n]))
    return {(0, 1, 2): "I", (0, 2, 1): "II", (2, 0, 1): "III"}.get(order, "Boundary")


def classify_ground_order(p: AlgebraParams) -> str:
    """Order of the three sector ground states, from the parameter inequalities.

    ``I``: E0 < E1 < E2, ``II``: E0 < E2 < E1, ``III``: E2 < E0 < E1.  Parameters
    on the edge of a region (where two ground states coincide) give
    ``"Boundary"``.
    """
    _require_c3(p)
    a0, a1 = p.alpha[0], p.alpha[1]
    if -1 < a0 < 2 and a1 > -2 - a0:
        label = "I"
    elif a0 > 2 and a1 > -4:
        label = "II"
    elif a0 > 2 and -2 - a0 < a1 < -4:
        label = "III"
    else:
        label = "Boundary"
    if label != _ground_order_from_energies(p):
        raise ClassificationMismatch(f"inequalities give {label} for {p.alpha}")
    return label


def classify_subclass(p: AlgebraParams, max_n: int = DEFAULT_MAX_N) -> SpectrumClass:
    """Refine the ground ordering into the closed-form families.

    Recognized: (I.1.n), (I.n.a) and (I.n.abc) for ``n <= max_n``.  Every other
    spectrum gets an ``"empirical"`` label carrying its ordering signature,
    annotated with a generic ordering name when the first four periods match
    one exactly.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    ground = classify_ground_order(p)
    profile = degeneracy_profile(p)
    a0, a1 = p.alpha[0], p.alpha[1]
    signature = _signature_of(lowest_levels(p, 12))

    for n in range(1, max_n + 1):
        found = None
        if -1 < a0 < 2 and 6 * n - a0 - 8 < a1 < 6 * n - 4:
            found = (f"I.1.{n}", chain_i1n(n))
        elif -1 < a0 < 2 and a1 == 6 * n - a0 - 2:
            found = (f"I.{n}.a", chain_ina(n))
        elif a0 == 2 and a1 == 6 * n - 4:
            found = (f"I.{n}.abc", chain_inabc(n))
        if found:
            label, chain = found
            if not check_chain(p, chain):
                raise ClassificationMismatch(f"{label} chain {chain} fails for {p.alpha}")
            return SpectrumClass(ground, label, profile, n, signature)

    label = "empirical"
    for name, period in _GENERIC_ORDERINGS.items():
        expect = "<".join(str(3 * k + m) for k in range(4) for m in period)
        if signature == expect:
            label = f"empirical({name} ordering)"
            break
    return SpectrumClass(ground, label, profile, None, signature)
