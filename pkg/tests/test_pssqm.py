import math
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clambda import (
    AlgebraParams,
    PssqmConfig,
    build,
    build_charge,
    build_general,
    derive,
    general_trilinear_check,
    khare_charges,
    spectrum_figure2,
    verify_pssqm,
)
from clambda.errors import (
    DimensionTooSmall,
    EtaOutOfRange,
    RepresentationMissing,
    UnsupportedLambda,
)
from clambda.pssqm import (
    canonical_ground_energy,
    closed_form_hamiltonian,
    sector_shifts,
    sol1_coefficients,
    sol1_shift,
    sol2_coefficients,
)

from conftest import admissible_params, random_c3

SQ2 = math.sqrt(2)


def system(alpha, mu=0, phi=0.0, dim=14, eta="sqrt2"):
    return build_charge(PssqmConfig.from_eta(AlgebraParams(3, alpha), mu, eta, phi, dim))


# -- construction ---------------------------------------------------------------

def test_canonical_charge_mu0():
    s = system((0, 1))
    rep = build(AlgebraParams(3, (0, 1)), 14)
    assert np.allclose(s.q_mat, SQ2 * rep.adag_mat @ (rep.p_mat[1] + rep.p_mat[2]))
    assert s.ground_energy == 0
    assert s.r[2] == 0
    assert s.susy_status == "unbroken"


def test_hamiltonian_closed_form():
    for mu in range(3):
        for eta in ("sqrt2", "1/2", "3/2"):
            c = PssqmConfig.from_eta(AlgebraParams(3, ("1/3", "5/2")), mu, eta, 0.7, 12)
            s = build_charge(c)
            assert np.allclose(s.h_mat, closed_form_hamiltonian(c), atol=1e-12)
            rep = build(c.params, 12)
            direct = rep.h0_mat + 0.5 * sum(float(s.r[nu]) * rep.p_mat[nu] for nu in range(3))
            assert np.allclose(s.h_mat, direct)


def test_sector_shift_restrictions():
    p = AlgebraParams(3, ("1/2", -1))
    for mu in range(3):
        r = sector_shifts(p, mu, Fraction(3, 4))
        assert r[(mu + 2) % 3] == Fraction(3, 4)
        assert r[mu] == -2 + p.a(mu + 1) + r[(mu + 2) % 3]
        assert r[(mu + 1) % 3] == 2 - p.a(mu) + r[(mu + 2) % 3]


def test_r_shift_formula():
    c = PssqmConfig.from_eta(AlgebraParams(3, (1, 2)), 0, "1/2")
    assert c.r_shift == (1 + Fraction(-3)) * (1 - Fraction(1, 8))
    assert PssqmConfig(AlgebraParams(3, (1, 2))).r_shift == 0


@pytest.mark.parametrize("mu", [0, 1, 2])
def test_canonical_ground_energies(mu):
    p = AlgebraParams(3, ("1/2", "3/4"))
    s = build_charge(PssqmConfig(p, mu))
    assert s.ground_energy == canonical_ground_energy(p, mu)
    assert math.isclose(float(s.ground_energy), float(np.min(np.diag(s.h_mat))), abs_tol=1e-12)
    assert s.susy_status == ("unbroken" if mu == 0 else "broken")


def test_errors():
    p = AlgebraParams(3, (0, 1))
    with pytest.raises(EtaOutOfRange):
        PssqmConfig.from_eta(p, 0, "2")
    with pytest.raises(EtaOutOfRange):
        PssqmConfig.from_eta(p, 0, "-1/2")
    with pytest.raises(EtaOutOfRange):
        PssqmConfig(p, 0, eta_sq=0)
    with pytest.raises(UnsupportedLambda):
        PssqmConfig(AlgebraParams(2, (0,)))
    with pytest.raises(DimensionTooSmall):
        PssqmConfig(p, dim=6)
    with pytest.raises(RepresentationMissing):
        PssqmConfig(AlgebraParams(3, (-1, 3)), mu=1)
    with pytest.raises(ValueError):
        PssqmConfig(p, mu=3)
    with pytest.raises(EtaOutOfRange):
        build_general(p, 0, 0, 1, 0)


# -- relations ----------------------------------------------------------------------

@pytest.mark.parametrize("alpha, bd", [((0, 1), True), ((0, 0), False), ((1, 0), True)])
def test_verify_examples(alpha, bd):
    rep = verify_pssqm(system(alpha), tol=1e-10)
    assert rep.parasusy, rep.residuals
    assert rep.passes["bd"] is bd


def test_q2_witness():
    rep = verify_pssqm(system((0, 1)))
    row, col, val = rep.q2_witness
    assert (row, col) == (3, 1) and abs(val) > 1
    assert rep.passes["q2_nonzero"]


def test_trilinear_with_zero_coefficients():
    s = system(("1/2", 1))
    full = np.abs(4 * (s.q_mat @ s.h_mat))[:11, :11].max()
    assert general_trilinear_check(s, 0, 0, 0) == pytest.approx(full)
    assert full > 0


@settings(max_examples=60, deadline=None)
@given(admissible_params(lam=3, lo=-1, hi=6), st.integers(0, 2),
       st.floats(0, 2 * math.pi), st.fractions(Fraction(1, 20), Fraction(39, 20), max_denominator=20))
def test_canonical_relations(p, mu, phi, eta):
    s = build_charge(PssqmConfig.from_eta(p, mu, eta, phi, 14))
    rep = verify_pssqm(s, tol=1e-10)
    assert rep.residuals["q3"] < 1e-13
    assert rep.passes["q2_nonzero"]
    assert rep.residuals["commutator"] < 1e-10
    u, v, w = sol1_coefficients(s.eta1, s.eta2)
    assert general_trilinear_check(s, u, v, w) < 1e-9


@settings(max_examples=60, deadline=None)
@given(admissible_params(lam=3, lo=-1, hi=6), st.integers(0, 2), st.floats(0, 2 * math.pi))
def test_bd_iff_constraint(p, mu, phi):
    s = build_charge(PssqmConfig(p, mu, phi=phi, dim=14))
    rep = verify_pssqm(s, tol=1e-10)
    assert rep.passes["rs"]
    assert rep.passes["bd"] == (p.a(mu + 2) == -1)


def test_bd_on_constraint_surface_each_mu():
    # alpha_{mu+2} = -1 for mu = 0 and 2 (mu = 1 would need alpha_0 = -1)
    for mu, alpha in ((0, ("1/2", "1/2")), (2, (3, -1))):
        p = AlgebraParams(3, alpha)
        assert p.a(mu + 2) == -1
        rep = verify_pssqm(build_charge(PssqmConfig(p, mu)))
        assert rep.passes["bd"] and rep.passes["rs"]


def test_mu1_constraint_excluded():
    with pytest.raises(RepresentationMissing):
        build_charge(PssqmConfig(AlgebraParams(3, (-1, 2)), mu=1))


@settings(max_examples=60)
@given(admissible_params(lam=3, lo=-1, hi=6))
def test_ground_state_positivity(p):
    g = derive(p).gamma
    assert g[0] > Fraction(-1, 2) and g[1] > Fraction(-3, 2)
    assert build_charge(PssqmConfig(p, 1, dim=10)).ground_energy > 0
    assert build_charge(PssqmConfig(p, 2, dim=10)).ground_energy > 0


@settings(max_examples=30, deadline=None)
@given(admissible_params(lam=3, lo=-1, hi=6), st.integers(0, 2))
def test_phase_covariance(p, mu):
    a = build_charge(PssqmConfig(p, mu, phi=0.0, dim=12))
    b = build_charge(PssqmConfig(p, mu, phi=1.3, dim=12))
    assert np.array_equal(np.sort(np.linalg.eigvalsh(a.h_mat)), np.sort(np.linalg.eigvalsh(b.h_mat)))
    assert a.ground_energy == b.ground_energy


# -- general branch ---------------------------------------------------------------

def test_sol1_general_eta():
    rng = random.Random(3)
    for _ in range(10):
        p = random_c3(rng, hi=5)
        mu = rng.randrange(3)
        e1 = rng.uniform(0.1, 1.9)
        e2 = math.sqrt(4 - e1 ** 2) * complex(math.cos(0.4), math.sin(0.4))
        s = build_general(p, mu, e1, e2, Fraction(sol1_shift(p, mu, e1, e2)), 14)
        assert general_trilinear_check(s, *sol1_coefficients(e1, e2)) < 1e-10


def test_sol1_free_modulus():
    # sol1 also works without |eta1|^2 + |eta2|^2 = 4 once u = v = w rescale
    p = AlgebraParams(3, ("1/3", "2/3"))
    e1, e2 = 0.7, 2.3
    s = build_general(p, 0, e1, e2, sol1_shift(p, 0, e1, e2), 14)
    assert general_trilinear_check(s, *sol1_coefficients(e1, e2)) < 1e-10


def test_sol2_free_u():
    p = AlgebraParams(3, ("1/2", "1/2"))  # alpha_2 = -1
    for u in (0.0, 0.3, 1.0, 2.5 - 1j):
        for e1 in (0.4, 1.1, 1.7):
            e2 = 1.3
            s = build_general(p, 0, e1, e2, 0, 14)
            assert general_trilinear_check(s, *sol2_coefficients(e1, e2, u)) < 1e-10


def test_dagger_second_solution():
    s = system((0, 1), dim=14)
    d = s.dagger()
    assert d.swapped and np.allclose(d.q_mat, s.q_mat.conj().T)
    rep = verify_pssqm(d)
    assert rep.residuals["q3"] < 1e-13 and rep.passes["q2_nonzero"]
    assert rep.residuals["commutator"] < 1e-10
    # the Hermitian conjugate of the closure relation is the closure for Q+
    assert rep.passes["rs"]
    assert d.dagger().swapped is False


# -- Khare charges -----------------------------------------------------------------

def test_khare_charges():
    p = AlgebraParams(3, (0, 1))
    c = PssqmConfig(p, 0, dim=14)
    q1, q2 = khare_charges(c)
    rep = build(p, 14)
    assert np.allclose(q1 + q2, 2 * SQ2 * rep.adag_mat @ rep.p_mat[1])
    assert np.allclose(q1 - q2, 2 * SQ2 * rep.adag_mat @ rep.p_mat[2])
    for phi in (0.0, math.pi):
        assert verify_pssqm(build_charge(replace(c, phi=phi))).parasusy
    assert np.abs(q1 @ q2).max() > 0
    assert np.abs(np.linalg.matrix_power(q1, 3)[:11, :11]).max() < 1e-13
    with pytest.raises(EtaOutOfRange):
        khare_charges(PssqmConfig(p, 0, eta_sq=1))


# -- figure data ------------------------------------------------------------------

def _heights(panel):
    by = {}
    for row in panel.rows:
        by.setdefault(row["relative"], set()).add(row["n"])
    return by


def test_figure2_mu0():
    panel = spectrum_figure2(AlgebraParams(3, (0, 1)), 0, 10)
    h = _heights(panel)
    assert h[0] == {0}
    assert h[3] == {1, 2, 3} and h[6] == {4, 5, 6} and h[9] == {7, 8, 9}
    targets = {r["n"]: r["qdag_target"] for r in panel.rows}
    assert targets[3] == 2 and targets[2] == 1 and targets[1] is None
    assert targets[0] is None


def test_figure2_mu1():
    panel = spectrum_figure2(AlgebraParams(3, (0, 1)), 1, 11)
    h = _heights(panel)
    assert h[0] == {0, 1}
    assert h[3] == {2, 3, 4}
    assert panel.columns == (1, 0, 2)


def test_figure2_mu2():
    panel = spectrum_figure2(AlgebraParams(3, (0, 1)), 2, 12)
    h = _heights(panel)
    assert h[0] == {0, 1, 2}
    assert h[3] == {3, 4, 5}


def test_figure2_records_normalization():
    data = spectrum_figure2(AlgebraParams(3, ("1/2", 1)), 1, 8).to_json()
    assert "relative" in data["normalization"]
    assert data["ground_energy"] == str(canonical_ground_energy(AlgebraParams(3, ("1/2", 1)), 1))
