"""Compiled vs pure-Python theta summation kernel.

    python3 benchmarks/bench_kernel.py [--repeat 5] [--json]

Times ``theta_sum`` directly (no truncation logic) for the three derivative
orders over a spread of tau values, and reports agreement between the two.
"""

import argparse
import json
import sys
import timeit

from thetaderiv.engine import _pykernel
from thetaderiv.engine import series_half_width

try:
    from thetaderiv.engine import _ckernel
except ImportError:
    _ckernel = None

CASES = [
    # (ep0, e, z, tau)
    (0.2, 0.4, 0j, 1j),
    (0.5, 0.5, 0.1 + 0.05j, 0.3 + 1.7j),
    (0.125, 0.7, 0j, -0.4 + 0.9j),
    (0.0, 0.25, 0.2j, 0.1 + 0.2j),
    (0.9, 0.1, 0j, 0.05j),
]


def bench(kernel, number, repeat):
    calls = []
    for ep0, e, z, tau in CASES:
        for order in (0, 1, 2):
            n = series_half_width(ep0, z, tau, order)
            calls.append((ep0, e, z, tau, n, order))

    def run():
        for args in calls:
            kernel.theta_sum(*args)

    best = min(timeit.repeat(run, number=number, repeat=repeat))
    return best / (number * len(calls)), calls


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    py, calls = bench(_pykernel, args.number, args.repeat)
    result = {"python_us_per_call": py * 1e6, "terms": [2 * c[4] + 1 for c in calls]}
    if _ckernel is None:
        result["cython_us_per_call"] = None
    else:
        cy, _ = bench(_ckernel, args.number, args.repeat)
        diff = max(abs(_ckernel.theta_sum(*c) - _pykernel.theta_sum(*c)) / max(abs(_pykernel.theta_sum(*c)), 1e-300)
                   for c in calls)
        result.update(cython_us_per_call=cy * 1e6, speedup=py / cy, max_rel_diff=diff)

    if args.json:
        print(json.dumps(result))
        return 0
    print(f"series lengths: {min(result['terms'])}..{max(result['terms'])} terms, {len(calls)} calls")
    print(f"python : {result['python_us_per_call']:9.2f} us/call")
    if _ckernel is None:
        print("cython : not built")
    else:
        print(f"cython : {result['cython_us_per_call']:9.2f} us/call  ({result['speedup']:.1f}x)")
        print(f"max relative difference: {result['max_rel_diff']:.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
