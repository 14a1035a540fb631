"""Compare the compiled kernels against the pure-Python reference.

Times the three hot paths on identical seeded workloads:

  * window composition and crossing-count length over a large sample
  * right generator multiplication sweeps on a fat Hecke element
  * raising/lowering sweeps on a fat tensor vector

Run as  python3 benchmarks/bench_backends.py [--scale N]
"""

from __future__ import annotations

import argparse
import random
import time

from affineschur import _kernels_py as pure

try:
    from affineschur import _kernels as compiled
except ImportError:
    compiled = None


def build_windows(rng, r, count):
    out = []
    for _ in range(count):
        base = list(range(1, r + 1))
        rng.shuffle(base)
        out.append(tuple(b + r * rng.randrange(-3, 4) for b in base))
    return out


def build_hecke(rng, r, terms):
    elt = {}
    for w in build_windows(rng, r, terms):
        elt[w] = {rng.randrange(-4, 5): rng.randrange(-9, 10) or 1 for _ in range(3)}
    return elt


def build_tensor(rng, r, terms):
    elt = {}
    for _ in range(terms):
        key = tuple(rng.randrange(-9, 10) for _ in range(r))
        elt[key] = {rng.randrange(-4, 5): rng.randrange(-9, 10) or 1 for _ in range(3)}
    return elt


def bench_windows(mod, windows, reps):
    t0 = time.perf_counter()
    acc = 0
    for _ in range(reps):
        for i in range(len(windows) - 1):
            acc += mod.win_length(mod.win_compose(windows[i], windows[i + 1]))
    return time.perf_counter() - t0, acc


def bench_hecke(mod, elt, r, reps):
    t0 = time.perf_counter()
    out = elt
    for k in range(reps):
        out = mod.hecke_mul_gen_right(out, 1 + k % r)
    return time.perf_counter() - t0, len(out)


def bench_tensor(mod, elt, n, reps):
    t0 = time.perf_counter()
    out = elt
    for k in range(reps):
        i = 1 + k % n
        out = mod.tensor_act_E(out, i, n) if k % 2 else mod.tensor_act_F(out, i, n)
        if not out:
            out = elt
    return time.perf_counter() - t0, len(out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=int, default=1, help="multiply workload sizes by this")
    ap.add_argument("--seed", type=int, default=20250825)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    r, n = 4, 3
    windows = build_windows(rng, r, 400 * args.scale)
    hecke = build_hecke(rng, r, 60 * args.scale)
    tensor = build_tensor(rng, r, 120 * args.scale)

    jobs = [
        ("window compose+length", bench_windows, (windows, 8)),
        ("hecke generator sweep", bench_hecke, (hecke, r, 40)),
        ("tensor E/F sweep", bench_tensor, (tensor, n, 24)),
    ]

    backends = [("pure-python", pure)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled extension not available; timing the pure backend only")

    print(f"{'workload':<24}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn, extra in jobs:
        times = []
        checks = []
        for _, mod in backends:
            dt, sig = fn(mod, *extra)
            times.append(dt)
            checks.append(sig)
        if len(set(checks)) != 1:
            raise SystemExit(f"backend outputs disagree on {label}: {checks}")
        row = f"{label:<24}" + "".join(f"{dt:>12.4f}s" for dt in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
