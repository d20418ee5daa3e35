"""Acceptance criteria 1-9, all exact.

Each criterion is a function returning (passed, detail).  Under pytest every
criterion prints one PASS/FAIL line to the terminal; ``python3
tests/test_acceptance.py`` prints the same lines without pytest.
"""
from __future__ import annotations

import contextlib
import io
import json
import random
import sys
import tempfile
import time
from functools import lru_cache
from math import gcd, lcm
from pathlib import Path

import pytest

from ursb2 import pbw
from ursb2.cli import cli_dispatch
from ursb2.cyclotomic import make_root_config, order_of
from ursb2.errors import ArtifactError
from ursb2.iso import cross_validate, find_intertwiner, random_params
from ursb2.linalg import inverse
from ursb2.pidegree import pi_degree
from ursb2.repmod import FAMILIES, Representation, build, direct_sum, lift_b_module
from ursb2.verify import DEFAULT_CEILING, check, check_relations, is_simple
from ursb2.workbench import SweepSpec, run_sweep

SAMPLE_SETTINGS = [(3, 3, 1, 2), (2, 4, 1, 1), (6, 2, 1, 1), (4, 12, 1, 7)]
IDENTITY_SETTINGS = [(3, 5, 1, 1), (2, 4, 1, 1), (6, 2, 1, 1), (3, 3, 1, 2), (4, 6, 1, 1), (4, 3, 1, 1),
                     (5, 3, 1, 2), (2, 3, 1, 1), (5, 5, 1, 2), (6, 4, 1, 1), (8, 8, 1, 7), (12, 12, 1, 5)]
ISO_SETTINGS = [(2, 4, 1, 1), (4, 12, 1, 7)]
SAMPLES_PER_FAMILY = 3
ISO_PAIRS = 51


def sweep_settings(lo: int = 2, hi: int = 12):
    for m in range(lo, hi + 1):
        for n in range(lo, hi + 1):
            for k1 in range(1, m):
                for k2 in range(1, n):
                    if gcd(k1, m) == 1 and gcd(k2, n) == 1:
                        try:
                            yield make_root_config(m, n, k1, k2)
                        except ArtifactError:
                            continue


@lru_cache(maxsize=None)
def pi_reports():
    return [pi_degree(c) for c in sweep_settings()]


@lru_cache(maxsize=None)
def sampled_modules():
    """Three parameter samples per family per setting, built once."""
    out = []
    for setting in SAMPLE_SETTINGS:
        c = make_root_config(*setting)
        for family in FAMILIES:
            rng = random.Random(f"acceptance:{setting}:{family}")
            for _ in range(SAMPLES_PER_FAMILY):
                out.append(build(family, c, random_params(family, c, rng)))
    return out


def expected_grid(family: str, c, params) -> tuple[int, int]:
    """Dimension formulas evaluated from orders of the actual scalars r^i s^j."""
    o = lambda i, j: order_of(c.mono(i, j))
    if family in ("U_M_LAMBDA", "B_M1_LAMBDA"):
        l1 = o(2, 2) if (o(2, 2) * o(1, -1)) % o(0, 2) == 0 else 2 * o(2, 2)
        return l1, o(1, -1)
    if family in ("U_M_MU", "B_M2_MU"):
        m2 = o(1, -1) if (o(2, 2) * o(1, -1)) % o(2, 0) == 0 or params[2].is_zero() else 2 * o(1, -1)
        return o(2, 2), m2
    if family in ("U_M_EPSILON", "B_M3_EPSILON"):
        return lcm(o(1, 1), o(1, -1)), 1
    if family == "U_M_NU":
        m3 = o(-2, 2) if (o(-2, 2) * o(1, 1)) % o(0, 2) == 0 or params[2].is_zero() else 2 * o(-2, 2)
        return o(1, 1), m3
    if family == "U_M_XI":
        return (o(1, -1) if params[1].is_zero() else lcm(o(1, 1), o(1, -1))), 1
    raise ValueError(family)


# ----------------------------------------------------------------------
# Criteria
# ----------------------------------------------------------------------

def criterion_1():
    reports = pi_reports()
    bad = [str(r.config) for r in reports if r.pi_deg_snf != r.pi_deg_closed]
    spot = {s: pi_degree(make_root_config(*s)).pi_deg_snf for s in ((3, 5, 1, 1), (4, 6, 1, 1))}
    ok = not bad and spot == {(3, 5, 1, 1): 225, (4, 6, 1, 1): 72}
    return ok, f"{len(reports)} settings, {len(bad)} disagreements, spot values {list(spot.values())}"


def criterion_2():
    reports = pi_reports()
    bad = []
    claims = 0
    for r in reports:
        a, b = r.config.s1k1, r.config.s2k2
        h1, h2 = r.invariant_factors
        ok = (h1 == gcd(a + b, a - b) and h1 * h2 == abs(2 * (a + b) * (a - b)) and all(r.checks.values()))
        claims += sum(1 for k in r.checks if k.startswith("claim"))
        if not ok:
            bad.append(str(r.config))
    return not bad, f"{len(reports)} settings, {claims} parity claims checked, {len(bad)} failures"


def criterion_3():
    failures = []
    words = 0
    for setting in IDENTITY_SETTINGS:
        c = make_root_config(*setting)
        if not (pbw.serre_check(c) and pbw.lemma22_check(c, 6) and pbw.centrality_check(c)
                and pbw.b_relations_check(c)):
            failures.append(f"{setting}: identity suite")
        rng = random.Random(f"words:{setting}")
        for _ in range(500):
            w1 = [rng.randint(1, 4) for _ in range(rng.randint(0, 6))]
            w2 = [rng.randint(1, 4) for _ in range(rng.randint(0, 6))]
            words += 1
            if pbw.normalize(w1 + w2, c) != pbw.normalize(w1, c) * pbw.normalize(w2, c):
                failures.append(f"{setting}: {w1} {w2}")
    return not failures, f"{len(IDENTITY_SETTINGS)} settings, {words} word pairs, {len(failures)} failures"


def criterion_4():
    mods = sampled_modules()
    bad = [(m.family, str(m.config)) for m in mods if not check(m).passed]
    big = build("U_M_LAMBDA", make_root_config(3, 5, 1, 1), (1, 2, 3, 1))
    big_ok = big.dim == 225 and check_relations(big).passed
    return not bad and big_ok, f"{len(mods)} instances, {len(bad)} failures; dim-225 instance passes: {big_ok}"


def criterion_5():
    mods = sampled_modules()
    bad = []
    for m in mods:
        rows, cols = expected_grid(m.family, m.config, m.params)
        if m.dim != rows * cols or m.dim > pi_degree(m.config).pi_deg_snf:
            bad.append((m.family, str(m.config)))
    c = make_root_config(3, 5, 1, 1)
    big = build("U_M_LAMBDA", c, (1, 1, 1, 1))
    attained = big.dim == pi_degree(c).pi_deg_snf == 225
    return not bad and attained, f"{len(mods)} instances, {len(bad)} dimension failures; bound 225 attained: {attained}"


def criterion_6():
    mods = [m for m in sampled_modules() if m.dim <= DEFAULT_CEILING]
    bad = [(m.family, str(m.config)) for m in mods if not is_simple(m)]
    rep = build("U_M_LAMBDA", make_root_config(2, 4, 1, 1), (1, 2, 3, 1))
    sum_rejected = not is_simple(direct_sum(rep, rep))
    return not bad and sum_rejected, f"{len(mods)} instances simple: {len(mods) - len(bad)}; direct sum rejected: {sum_rejected}"


def criterion_7():
    bad = []
    settings = SAMPLE_SETTINGS
    for setting in settings:
        c = make_root_config(*setting)
        lam = random_params("B_M1_LAMBDA", c, random.Random(f"lift:{setting}"))
        lifted = lift_b_module(build("B_M1_LAMBDA", c, lam))
        T = find_intertwiner(lifted, build("U_M_LAMBDA", c, lam))
        if not check_relations(lifted).passed or T is None or inverse(T) is None:
            bad.append(setting)
    return not bad, f"{len(settings)} settings, {len(bad)} failures"


def criterion_8():
    pairs = mismatches = 0
    families_ok = True
    for setting in ISO_SETTINGS:
        c = make_root_config(*setting)
        for family in FAMILIES:
            report = cross_validate(family, c, ISO_PAIRS, seed=8)
            pairs += report.pairs
            mismatches += len(report.mismatches) + len(report.schur_failures)
            families_ok &= report.pairs >= 50 and report.positives >= ISO_PAIRS // 3
    ok = mismatches == 0 and families_ok
    return ok, f"{pairs} pairs over {len(FAMILIES)} families and {len(ISO_SETTINGS)} settings, {mismatches} mismatches"


def criterion_9():
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        spec = dict(m_range=(2, 4), n_range=(3, 4), samples=1, seed=4)
        run_sweep(SweepSpec(out_dir=str(tmp / "a"), **spec))
        run_sweep(SweepSpec(out_dir=str(tmp / "b"), **spec))
        names = sorted(p.name for p in (tmp / "a").iterdir())
        for name in names:
            if (tmp / "a" / name).read_bytes() != (tmp / "b" / name).read_bytes():
                problems.append(f"sweep artifact {name} differs")
        c = make_root_config(2, 4, 1, 1)
        for family in FAMILIES:
            params = random_params(family, c, random.Random(f"roundtrip:{family}"))
            rep = build(family, c, params)
            path = tmp / f"{family}.json"
            path.write_text(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n")
            back = Representation.from_json(json.loads(path.read_text()))
            if back.matrices != rep.matrices or not check(back).passed:
                problems.append(f"{family} round trip")
            with contextlib.redirect_stdout(io.StringIO()):
                if cli_dispatch(["verify", str(path)]) != 0:
                    problems.append(f"{family} CLI verify")
    return not problems, f"{len(names)} sweep artifacts compared, {len(FAMILIES)} round trips, {len(problems)} problems"


CRITERIA = {
    1: ("PI-degree equivalence", criterion_1),
    2: ("invariant-factor identities", criterion_2),
    3: ("rewriting soundness", criterion_3),
    4: ("module well-definedness", criterion_4),
    5: ("dimension formulas", criterion_5),
    6: ("simplicity", criterion_6),
    7: ("lifting correspondence", criterion_7),
    8: ("isomorphism iff", criterion_8),
    9: ("determinism and round trip", criterion_9),
}


def run_criterion(number: int) -> tuple[bool, str]:
    name, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported as a failing line, then re-raised by the test
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    line = f"criterion {number} {'PASS' if ok else 'FAIL'} ({name}): {detail} [{elapsed:.1f} s]"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
