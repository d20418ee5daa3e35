"""Sweep runner and JSON persistence tying the library modules together.

A sweep walks a grid of root-of-unity settings.  For each setting it computes
the PI-degree report and quotient bound, runs the PBW identity suite, and
builds sampled instances of every requested module family.  Each instance
gets its relations and dimension bound checked, and simplicity is tested
below the ceiling.  Every
setting writes its own JSON file; a summary file lists the failures.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import gcd
from pathlib import Path

from . import pbw
from .cyclotomic import make_root_config
from .errors import ArtifactError
from .iso import random_params
from .pidegree import pi_degree, quotient_pi_bound
from .repmod import FAMILIES, build, dims_for
from .verify import DEFAULT_CEILING, check, check_dimension_bound, is_simple


def dump_json(obj, path=None) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def load_json(path):
    return json.loads(Path(path).read_text())


@dataclass
class SweepSpec:
    m_range: tuple = (2, 6)          # inclusive bounds
    n_range: tuple = (2, 6)
    k_policy: str = "all"            # "all" coprime pairs or "fixed"
    k1: int = 1
    k2: int = 1
    families: tuple = FAMILIES
    samples: int = 2                 # parameter samples per family and setting
    ceiling: int = DEFAULT_CEILING   # simplicity check only up to this dimension
    build_ceiling: int = 256         # skip builds above this dimension
    lemma_k_max: int = 4
    out_dir: str | None = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        self.m_range = tuple(self.m_range)
        self.n_range = tuple(self.n_range)
        self.families = tuple(self.families)
        for lo, hi in (self.m_range, self.n_range):
            if lo < 1 or hi < lo:
                raise ValueError("sweep ranges must be non-empty ranges of positive integers")
        if self.k_policy not in ("all", "fixed"):
            raise ValueError("k_policy must be 'all' or 'fixed'")
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown families: {sorted(unknown)}")

    def to_json(self) -> dict:
        """Sweep settings as recorded in artifacts; the output location is not part of them."""
        d = asdict(self)
        del d["out_dir"], d["workers"]
        d["m_range"], d["n_range"], d["families"] = list(self.m_range), list(self.n_range), list(self.families)
        return d


def enumerate_settings(spec: SweepSpec) -> tuple[list[tuple], list[dict]]:
    """Valid (m, n, k1, k2) tuples and notes for the skipped ones."""
    settings, skipped = [], []
    for m in range(spec.m_range[0], spec.m_range[1] + 1):
        for n in range(spec.n_range[0], spec.n_range[1] + 1):
            if spec.k_policy == "fixed":
                pairs = [(spec.k1, spec.k2)]
            else:
                pairs = [(a, b) for a in range(1, max(m, 2)) for b in range(1, max(n, 2))
                         if gcd(a, m) == 1 and gcd(b, n) == 1]
            for k1, k2 in pairs:
                try:
                    make_root_config(m, n, k1, k2)
                except ArtifactError as exc:
                    skipped.append({"setting": [m, n, k1, k2], "note": str(exc)})
                    continue
                settings.append((m, n, k1, k2))
    return settings, skipped


def run_setting(setting: tuple, spec: SweepSpec) -> dict:
    """The full per-setting pipeline; failures are collected, never raised."""
    m, n, k1, k2 = setting
    c = make_root_config(m, n, k1, k2)
    failures: list[str] = []
    out: dict = {"setting": [m, n, k1, k2], "seed": spec.seed, "families": {}}
    try:
        report = pi_degree(c)
        out["pideg"] = report.to_json()
        if report.pi_deg_snf != report.pi_deg_closed:
            failures.append("pideg: SNF and closed form differ")
        if not all(report.checks.values()):
            failures.append("pideg: invariant factor identity failed")
    except ArtifactError as exc:
        report = None
        failures.append(f"pideg: {exc}")
    try:
        out["quotient_bound"] = quotient_pi_bound(c)
    except ArtifactError as exc:
        failures.append(f"quotient bound: {exc}")
    if spec.families:
        # an empty family list means a PI-degree-only sweep
        suite = {"serre": pbw.serre_check(c),
                 "lemma_identities": pbw.lemma22_check(c, spec.lemma_k_max),
                 "centrality": pbw.centrality_check(c),
                 "b_relations": pbw.b_relations_check(c)}
        out["pbw"] = suite
        failures += [f"pbw: {k}" for k, ok in suite.items() if not ok]

    for family in spec.families:
        rng = random.Random(f"{spec.seed}:{m}:{n}:{k1}:{k2}:{family}")
        rows = []
        for i in range(spec.samples):
            params = random_params(family, c, rng)
            grid = dims_for(family, c, params)
            entry = {"params": [x.to_json() for x in params], "grid": list(grid)}
            if grid[0] * grid[1] > spec.build_ceiling:
                entry["note"] = "skipped: dimension above build ceiling"
                rows.append(entry)
                continue
            rep = build(family, c, params)
            rel = check(rep)
            entry["dim"] = rep.dim
            entry["relations"] = rel.passed
            if not rel.passed:
                failures.append(f"{family}[{i}]: relation {rel.first_failure[0]}")
            if report is not None:
                entry["within_bound"] = check_dimension_bound(rep, report)
                if not entry["within_bound"]:
                    failures.append(f"{family}[{i}]: dimension exceeds PI degree")
            if rep.dim <= spec.ceiling:
                entry["simple"] = is_simple(rep, ceiling=spec.ceiling)
                if not entry["simple"]:
                    failures.append(f"{family}[{i}]: not simple")
            rows.append(entry)
        out["families"][family] = rows
    out["failures"] = failures
    return out


def _setting_filename(setting: tuple) -> str:
    return "setting_m{}_n{}_k{}_{}.json".format(*setting)


def run_sweep(spec: SweepSpec) -> dict:
    """Run the sweep; returns the summary (also written to out_dir when given)."""
    settings, skipped = enumerate_settings(spec)
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            results = list(pool.map(run_setting, settings, [spec] * len(settings)))
    else:
        results = [run_setting(s, spec) for s in settings]
    out_dir = Path(spec.out_dir) if spec.out_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for res in results:
            dump_json(res, out_dir / _setting_filename(tuple(res["setting"])))
    rows = []
    for res in results:
        rows.append({"setting": res["setting"],
                     "pi_degree": res.get("pideg", {}).get("pi_deg_snf"),
                     "quotient_bound": res.get("quotient_bound"),
                     "failures": len(res["failures"])})
    summary = {"spec": spec.to_json(), "seed": spec.seed, "settings": len(results),
               "skipped": skipped, "rows": rows,
               "failures": {" ".join(map(str, r["setting"])): r["failures"]
                            for r in results if r["failures"]}}
    if out_dir is not None:
        dump_json(summary, out_dir / "summary.json")
    return summary


def summary_table(summary: dict) -> str:
    """Aligned human-readable table of a sweep summary."""
    header = ("m", "n", "k1", "k2", "PI degree", "quotient", "failures")
    body = [tuple(map(str, r["setting"])) + (str(r["pi_degree"]), str(r["quotient_bound"]),
                                             str(r["failures"])) for r in summary["rows"]]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in (header, *body)]
    lines.append(f"{summary['settings']} settings, {len(summary['skipped'])} skipped, "
                 f"{len(summary['failures'])} with failures (seed {summary['seed']})")
    return "\n".join(lines)
