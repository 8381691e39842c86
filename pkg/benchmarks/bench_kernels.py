"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json] [--no-end-to-end]
"""

import argparse
import json
import os
import subprocess
import sys
import time

from isotonian import kernels
from isotonian.homs import hom_set
from isotonian.poset import chain, crown, vee, with_relations
from isotonian.posetfile import zigzag


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def table_args(P, Q):
    linext = P.linear_extension
    pos = {i: k for k, i in enumerate(linext)}
    lower = [tuple(pos[j] for j in P.lower_cover_indices(i)) for i in linext]
    return len(P), lower, [Q.up_mask(q) for q in range(len(Q))], len(Q)


def cases():
    crown_chord = with_relations(crown(3), [("a1", "b1")])
    big = zigzag(6)
    yield "hom_table chain6->zigzag6", "hom_table", table_args(chain(6), big)
    yield "hom_table vee->chain16", "hom_table", table_args(vee(), chain(16, prefix="q"))
    for P, Q, d, label in ((chain(2), crown(3), 5, "chain2->crown3"),
                           (vee(), crown_chord, 4, "vee->crown3chord"),
                           (chain(3), chain(4, prefix="q"), 5, "chain3->chain4")):
        hs = hom_set(P, Q)
        yield f"group_fibers {label} d={d}", "group_fibers", (hs.table, len(Q), d, 10 ** 7)
    hs = hom_set(chain(3), chain(5, prefix="q"))
    groups = kernels.load("python").group_fibers(hs.table, 5, 5, 10 ** 7)
    big_fiber = max(groups.values(), key=len)
    yield f"fiber_profile {len(big_fiber)} members d=5", "fiber_profile", (big_fiber, 5)


END_TO_END = ("from isotonian.campaigns import theorem_campaign;"
              "r = theorem_campaign('chain2', max_q_size=5, max_degree=4);"
              "assert r['mismatches'] == 0")


def end_to_end(backend):
    env = dict(os.environ, ISOTONIAN_PURE_PYTHON="1" if backend == "python" else "0")
    t = time.perf_counter()
    subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True)
    return time.perf_counter() - t


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--no-end-to-end", action="store_true", help="skip the whole-campaign timing")
    args = ap.parse_args(argv)
    py = kernels.load("python")
    try:
        cy = kernels.load("cython")
    except ImportError:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    rows = []
    for label, fn, fargs in cases():
        a = getattr(py, fn)(*fargs)
        b = getattr(cy, fn)(*fargs)
        same = (a == b) if fn != "group_fibers" else (
            {k: sorted(map(tuple, v)) for k, v in a.items()} == {k: sorted(map(tuple, v)) for k, v in b.items()})
        t_py = best_of(lambda: getattr(py, fn)(*fargs), args.repeat)
        t_cy = best_of(lambda: getattr(cy, fn)(*fargs), args.repeat)
        rows.append({"case": label, "python_s": t_py, "cython_s": t_cy,
                     "speedup": t_py / t_cy if t_cy else float("inf"), "same_output": bool(same)})
    if not args.no_end_to_end:
        t_py, t_cy = end_to_end("python"), end_to_end("cython")
        rows.append({"case": "campaign chain2 x 87 posets, D=4", "python_s": t_py, "cython_s": t_cy,
                     "speedup": t_py / t_cy, "same_output": True})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':44} {'python':>10} {'cython':>10} {'speedup':>8}  same")
        for r in rows:
            print(f"{r['case']:44} {r['python_s']:10.4f} {r['cython_s']:10.4f} {r['speedup']:8.1f}  {r['same_output']}")
    return 0 if all(r["same_output"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
