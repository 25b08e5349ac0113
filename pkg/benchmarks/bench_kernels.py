"""Compare the compiled geometry kernel against the pure-Python twin.

Run:  python3 benchmarks/bench_kernels.py
"""

import math
import time

from cobb import _kernels_py

try:
    from cobb import _kernels
except ImportError:
    _kernels = None


def rect(cx, cy, w, h, t):
    c, s = math.cos(t), math.sin(t)
    out = []
    for dx, dy in ((-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)):
        out += [cx + dx * c + dy * s, cy - dx * s + dy * c]
    return tuple(out)


def make_pairs(n, seed=1234):
    # xorshift-ish deterministic floats, no numpy needed here
    state = seed
    def rnd():
        nonlocal state
        state = (1103515245 * state + 12345) % (1 << 31)
        return state / (1 << 31)
    pairs = []
    for _ in range(n):
        a = rect(rnd() - 0.5, rnd() - 0.5, 0.3 + 3 * rnd(), 0.3 + 3 * rnd(), math.pi * rnd())
        b = rect(rnd() - 0.5, rnd() - 0.5, 0.3 + 3 * rnd(), 0.3 + 3 * rnd(), math.pi * rnd())
        pairs.append((a, b))
    return pairs


def bench(fn, pairs, repeats=3):
    best = math.inf
    sink = 0.0
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in pairs:
            sink += fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best, sink


def main():
    n = 50_000
    pairs = make_pairs(n)
    t_py, sink_py = bench(_kernels_py.quad_intersection_area, pairs)
    print(f"pure python : {n} clips in {t_py:.3f}s  ({1e6 * t_py / n:.2f} us/clip)")
    if _kernels is None:
        print("compiled    : extension not built")
        return
    t_cy, sink_cy = bench(_kernels.quad_intersection_area, pairs)
    print(f"compiled    : {n} clips in {t_cy:.3f}s  ({1e6 * t_cy / n:.2f} us/clip)")
    print(f"speedup     : {t_py / t_cy:.1f}x")
    assert abs(sink_py / 3 - sink_cy / 3) < 1e-6 * n, "twins disagree"


if __name__ == "__main__":
    main()
