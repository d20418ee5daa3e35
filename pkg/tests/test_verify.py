import random

import pytest

from ursb2.cyclotomic import make_root_config
from ursb2.errors import DimensionCeiling
from ursb2.iso import random_params
from ursb2.linalg import CycMatrix
from ursb2.pidegree import pi_degree
from ursb2.repmod import FAMILIES, Representation, build, direct_sum
from ursb2.verify import (
    CEILING_ENV, check, check_b_relations, check_dimension_bound, check_relations, is_simple,
    simplicity_ceiling,
)


def one_dim(c, x1=1):
    one = CycMatrix.from_dense([[c.scalar(x1)]], c.level)
    zero = CycMatrix.zeros(1, 1, c.level)
    return Representation("ONE", c, (), 1, (1,), {"X1": one, "X2": zero, "X3": zero, "X4": zero})


def test_one_dimensional_rep(cfg_3511):
    rep = one_dim(cfg_3511)
    assert check_relations(rep).passed
    assert is_simple(rep)
    assert check_dimension_bound(rep, pi_degree(cfg_3511))
    assert not is_simple(direct_sum(rep, rep))


def test_xi_module_relations(cfg_3511):
    assert check_relations(build("U_M_XI", cfg_3511, (1, 1))).passed


def test_injected_fault_is_reported(small_config):
    rep = build("U_M_LAMBDA", small_config, (1, 2, 1, 5))
    X4 = rep.matrices["X4"].copy()
    X4.add_to(0, 0, small_config.one())
    bad = Representation(rep.family, rep.config, rep.params, rep.dim, rep.grid, {**rep.matrices, "X4": X4})
    report = check_relations(bad)
    assert not report.passed
    name, (i, j), value = report.first_failure
    assert value != "0"
    assert report.to_json()["first_failure"]["relation"] == name


def test_random_faults_always_detected(small_config):
    rng = random.Random(11)
    for family in FAMILIES:
        rep = build(family, small_config, random_params(family, small_config, rng))
        names = sorted(rep.matrices)
        for _ in range(3):
            g = rng.choice(names)
            M = rep.matrices[g].copy()
            M.add_to(rng.randrange(rep.dim), rng.randrange(rep.dim), small_config.scalar(rng.choice((1, -3, 7))))
            bad = Representation(rep.family, rep.config, rep.params, rep.dim, rep.grid, {**rep.matrices, g: M})
            assert not check(bad).passed


def test_b_relations_with_zero_parameter(small_config):
    assert check_b_relations(build("B_M2_MU", small_config, (1, 1, 0))).passed


@pytest.mark.parametrize("family", FAMILIES)
def test_families_simple_both_methods(family, small_config):
    rep = build(family, small_config, random_params(family, small_config, random.Random(family)))
    assert is_simple(rep, method="modular")
    assert is_simple(rep, method="exact")


def test_reducible_sum_detected_exactly(small_config):
    rep = build("U_M_LAMBDA", small_config, (1, 1, 1, 5))
    s = direct_sum(rep, rep)
    assert not is_simple(s, method="exact")
    assert not is_simple(s)


def test_ceiling(cfg_3511, monkeypatch):
    rep = build("U_M_XI", cfg_3511, (1, 0))
    with pytest.raises(DimensionCeiling):
        is_simple(rep, ceiling=10)
    monkeypatch.setenv(CEILING_ENV, "8")
    assert simplicity_ceiling() == 8
    with pytest.raises(DimensionCeiling):
        is_simple(rep)
    monkeypatch.delenv(CEILING_ENV)
    assert is_simple(rep)


def test_dimension_bound_attained(cfg_3511):
    report = pi_degree(cfg_3511)
    assert check_dimension_bound(build("U_M_XI", cfg_3511, (1, 0)), report)
    rep = build("U_M_LAMBDA", cfg_3511, (1, 1, 1, 1))
    assert rep.dim == report.pi_deg_snf == 225
    assert check_dimension_bound(rep, report)
