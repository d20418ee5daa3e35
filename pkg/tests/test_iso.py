import random

import pytest

from ursb2.cyclotomic import make_root_config
from ursb2.errors import ConfigMismatch, FamilyMismatch
from ursb2.iso import (
    check_schur, cross_validate, find_intertwiner, intertwines, iso_by_criteria, manufacture_positive,
    psi_tilde_matrix, random_params,
)
from ursb2.linalg import CycMatrix, inverse
from ursb2.repmod import FAMILIES, build, lift_b_module

SHIFT_SETTINGS = [(2, 4, 1, 1), (4, 12, 1, 7), (12, 12, 1, 5)]


def test_identity_shift(small_config):
    for family in FAMILIES:
        p = random_params(family, small_config, random.Random(family))
        v = iso_by_criteria(family, p, p, small_config)
        assert v.by_criteria and v.witness_shift == (0, 0)


def test_lambda_positive_with_unit_row_shift():
    c = make_root_config(2, 4, 1, 1)
    m = c.mono
    lam = (c.one(), c.scalar(2), c.scalar(3), c.scalar(5))
    lam2 = (lam[0], m(0, -2) * lam[1], m(-2, -2) * lam[2], m(-2, -2) * lam[3])
    v = iso_by_criteria("U_M_LAMBDA", lam, lam2, c)
    assert v.by_criteria and v.witness_shift == (1, 0)
    T = find_intertwiner(build("U_M_LAMBDA", c, lam), build("U_M_LAMBDA", c, lam2))
    assert T is not None and inverse(T) is not None


def test_epsilon_shift_witness():
    c = make_root_config(3, 3, 1, 2)
    eps = (1, 1, 1)
    eps2 = (c.one(), c.mono(1, 1), c.mono(1, -1))
    # the second tuple sits one step ahead, so the first needs u = -1 = ell - 1
    assert iso_by_criteria("U_M_EPSILON", eps, eps2, c).witness_shift == (2, 0)
    assert iso_by_criteria("U_M_EPSILON", eps2, eps, c).witness_shift == (1, 0)


def test_xi_shift_needs_nonzero_xi2():
    c = make_root_config(3, 12, 1, 1)
    o = c.orders["rs_inv"]
    shifted = c.mono(o, o)
    assert shifted != c.one()
    v = iso_by_criteria("U_M_XI", (c.one(), c.one()), (shifted, c.one()), c)
    assert v.by_criteria and v.witness_shift == (o, 0)
    T = find_intertwiner(build("U_M_XI", c, (1, 1)), build("U_M_XI", c, (shifted, c.one())))
    assert T is not None and inverse(T) is not None
    # with xi2 = 0 the grid has only ord(r s^-1) rows, so no shift is available
    assert not iso_by_criteria("U_M_XI", (c.one(), c.zero()), (shifted, c.zero()), c).by_criteria
    assert find_intertwiner(build("U_M_XI", c, (1, 0)), build("U_M_XI", c, (shifted, c.zero()))) is None


def test_xi_shift_trivial_at_small_setting(cfg_3511):
    c = cfg_3511
    o = c.orders["rs_inv"]
    xi2 = (c.mono(o, o), c.zero())
    T = find_intertwiner(build("U_M_XI", c, (1, 0)), build("U_M_XI", c, xi2))
    assert T is not None and inverse(T) is not None


def test_self_intertwiner_is_scalar(small_config):
    rep = build("U_M_NU", small_config, (1, 2, 3))
    T = find_intertwiner(rep, rep)
    assert T is not None and intertwines(rep, rep, T)
    # Schur: endomorphisms of a simple module are scalars
    assert T == CycMatrix.identity(rep.dim, small_config.level).scale(T.get(0, 0))
    check_schur(rep, rep, T)


def test_different_dimensions_and_mismatches():
    c = make_root_config(4, 12, 1, 7)
    assert find_intertwiner(build("U_M_EPSILON", c, (1, 1, 1)), build("U_M_XI", c, (1, 0))) is None
    with pytest.raises(ConfigMismatch):
        find_intertwiner(build("U_M_XI", c, (1, 1)), build("U_M_XI", make_root_config(2, 4, 1, 1), (1, 1)))
    with pytest.raises(FamilyMismatch):
        find_intertwiner(build("U_M_XI", c, (1, 1)), build("B_M3_EPSILON", c, (1, 1, 1)))
    with pytest.raises(FamilyMismatch):
        iso_by_criteria("U_M_OMEGA", (1,), (1,), c)


@pytest.mark.parametrize("setting", SHIFT_SETTINGS)
@pytest.mark.parametrize("family", FAMILIES)
def test_criteria_form_an_equivalence(family, setting):
    c = make_root_config(*setting)
    rng = random.Random(f"{family}{setting}")
    for _ in range(4):
        p = random_params(family, c, rng)
        q, _ = manufacture_positive(family, c, p, rng)
        r, _ = manufacture_positive(family, c, q, rng)
        assert iso_by_criteria(family, p, q, c).by_criteria
        assert iso_by_criteria(family, q, p, c).by_criteria
        assert iso_by_criteria(family, p, r, c).by_criteria
        other = random_params(family, c, rng)
        assert (iso_by_criteria(family, p, other, c).by_criteria
                == iso_by_criteria(family, other, p, c).by_criteria)


@pytest.mark.parametrize("setting", SHIFT_SETTINGS + [(3, 3, 1, 2)])
def test_explicit_lambda_map_intertwines(setting):
    c = make_root_config(*setting)
    rng = random.Random(5)
    for _ in range(6):
        p = random_params("U_M_LAMBDA", c, rng)
        q, (u, v) = manufacture_positive("U_M_LAMBDA", c, p, rng)
        A, B = build("U_M_LAMBDA", c, p), build("U_M_LAMBDA", c, q)
        T = psi_tilde_matrix(A, B, u, v)
        assert intertwines(A, B, T)


@pytest.mark.parametrize("family", FAMILIES)
def test_cross_validation(family):
    report = cross_validate(family, make_root_config(2, 4, 1, 1), 24, seed=3)
    assert report.ok, report.to_json()
    assert report.positives >= 8


@pytest.mark.parametrize("family,setting", [("U_M_LAMBDA", (2, 4, 1, 1)), ("U_M_NU", (2, 4, 1, 1)),
                                            ("U_M_MU", (12, 12, 1, 5)), ("B_M2_MU", (12, 12, 1, 5))])
def test_printed_shift_equations_disagree_with_solver(family, setting):
    report = cross_validate(family, make_root_config(*setting), 24, seed=1, reading="literal")
    assert report.mismatches


@pytest.mark.parametrize("setting", [(3, 3, 1, 2), (2, 4, 1, 1), (6, 2, 1, 1)])
def test_lift_is_isomorphic_to_u_family(setting):
    c = make_root_config(*setting)
    lam = (2, {"zeta": 1}, 3, "1/2")
    lifted = lift_b_module(build("B_M1_LAMBDA", c, lam))
    T = find_intertwiner(lifted, build("U_M_LAMBDA", c, lam))
    assert T is not None and inverse(T) is not None
