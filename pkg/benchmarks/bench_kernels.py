"""Compare the compiled kernel against the pure-Python fallback.

Runs the same four workloads twice — once in this process (whichever kernel
is active, normally the compiled one) and once in a subprocess with
CLUSTERAUT_PURE=1 — and prints a speedup table.

Usage:  python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import random
import subprocess
import sys
import time


def bench_mul(repeat):
    """Dense-ish product of two 4-variable Laurent polynomials."""
    from clusteraut.poly import LaurentPoly
    from clusteraut.rings import ZZ

    rng = random.Random(99)
    terms_a = {}
    terms_b = {}
    for _ in range(900):
        terms_a[tuple(rng.randrange(-6, 7) for _ in range(4))] = rng.randrange(1, 50)
        terms_b[tuple(rng.randrange(-6, 7) for _ in range(4))] = rng.randrange(1, 50)
    p = LaurentPoly.from_terms(ZZ, terms_a)
    q = LaurentPoly.from_terms(ZZ, terms_b)
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = p * q
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, r.num_terms


def bench_cluster_chain(repeat):
    """Cluster variables y_5..y_30 at (2,2) (division-heavy)."""
    from clusteraut.cluster import cluster_walk
    from clusteraut.poly import Params

    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        walk = cluster_walk(Params(2, 2))
        total = 0
        for var in walk:
            if var.n > 30:
                break
            total += var.value.num_terms
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, total


def bench_compose_chain(repeat):
    """(sigma2 sigma3)^5 at (2,2) via single-step composition."""
    from clusteraut import _kernel as K
    from clusteraut import surface as surf
    from clusteraut.poly import Params

    params = Params(2, 2)
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        s2, s3 = surf.sigma2(params), surf.sigma3(params)
        c2 = K.new_power_caches(s2.ring.ops())
        c3 = K.new_power_caches(s3.ring.ops())
        g = surf.identity(params)
        for _ in range(5):
            g = surf.compose(s3, g, c3)
            g = surf.compose(s2, g, c2)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, surf.total_degree(g)


def bench_normal_form(repeat):
    """Normal form of a large random polynomial at (3,2)."""
    from clusteraut import surface as surf
    from clusteraut.poly import LaurentPoly, Params
    from clusteraut.rings import ZZ

    rng = random.Random(7)
    terms = {}
    for _ in range(4000):
        terms[tuple(rng.randrange(0, 9) for _ in range(4))] = rng.randrange(-9, 10) or 1
    p = LaurentPoly.from_terms(ZZ, terms)
    params = Params(3, 2)
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        nf = surf.normal_form(params, p)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, nf.poly.num_terms


BENCHES = {
    "mul-900x900": bench_mul,
    "cluster-walk-n30": bench_cluster_chain,
    "compose-r5": bench_compose_chain,
    "normal-form-4k": bench_normal_form,
}


def run_all(repeat):
    from clusteraut import _kernel as K

    out = {"implementation": K.IMPLEMENTATION, "results": {}}
    for name, fn in BENCHES.items():
        seconds, checksum = fn(repeat)
        out["results"][name] = {"seconds": seconds, "checksum": checksum}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="repetitions; best is kept")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        print(json.dumps(run_all(args.repeat)))
        return

    here = run_all(args.repeat)
    env = dict(os.environ, CLUSTERAUT_PURE="1")
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeat", str(args.repeat)],
        capture_output=True, text=True, env=env, check=True,
    )
    pure = json.loads(proc.stdout)

    print(f"active kernel: {here['implementation']}   "
          f"fallback kernel: {pure['implementation']}")
    print(f"{'workload':<20} {'active':>10} {'fallback':>10} {'speedup':>8}  checksum")
    for name in BENCHES:
        h = here["results"][name]
        p = pure["results"][name]
        if h["checksum"] != p["checksum"]:
            raise SystemExit(f"kernel results disagree on {name}!")
        ratio = p["seconds"] / h["seconds"] if h["seconds"] else float("inf")
        print(f"{name:<20} {h['seconds']*1000:>9.1f}ms {p['seconds']*1000:>9.1f}ms "
              f"{ratio:>7.1f}x  {h['checksum']}")


if __name__ == "__main__":
    main()
