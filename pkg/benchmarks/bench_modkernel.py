"""Compare the compiled modular kernel with the pure-Python fallback.

Times the two hot paths on matrices taken from real module families:
the algebra-dimension closure used by the simplicity test and the rank of
the intertwiner system used by the isomorphism solver.

    python3 benchmarks/bench_modkernel.py [--repeat 3]
"""
import argparse
import time

from ursb2 import _modkernel_py
from ursb2.cyclotomic import make_root_config
from ursb2.iso import _equation_rows
from ursb2.modular import ModContext
from ursb2.repmod import build

try:
    from ursb2 import _modkernel as compiled
except ImportError:
    compiled = None

CASES = [
    ("U_M_LAMBDA", (2, 4, 1, 1), (1, 2, 3, 1)),
    ("U_M_NU", (4, 12, 1, 7), (1, 2, 3)),
    ("U_M_LAMBDA", (3, 12, 1, 1), (1, 2, 3, 1)),
    ("U_M_XI", (3, 5, 1, 1), (2, 1)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _modkernel_py)] + ([("compiled", compiled)] if compiled else [])
    print(f"{'task':<34}{'dim':>5}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for family, setting, params in CASES:
        c = make_root_config(*setting)
        rep = build(family, c, params)
        ctx = ModContext(c.level)
        gens = [ctx.reduce_rows(g.rows) for g in rep.generators()]
        eqs = ctx.reduce_rows(_equation_rows(rep, rep))
        d = rep.dim
        tasks = [
            (f"closure {family} {setting}", lambda k: k.algebra_dimension(gens, d, ctx.p, d * d)),
            (f"intertwiner rank {family}", lambda k: k.rank_mod(eqs, d * d, ctx.p)),
        ]
        for label, task in tasks:
            timings, results = [], []
            for _, k in backends:
                t, r = best_of(lambda: task(k), args.repeat)
                timings.append(t)
                results.append(r)
            assert len(set(results)) == 1, f"backends disagree on {label}: {results}"
            speed = f"{timings[0] / timings[-1]:9.1f}x" if len(timings) > 1 else "       n/a"
            print(f"{label:<34}{d:>5}" + "".join(f"{t * 1e3:10.1f}ms" for t in timings) + speed)


if __name__ == "__main__":
    main()
