"""Time the compiled and pure-Python kernels on the workloads the library runs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also checks that both backends return the same numbers.
"""

import argparse
import math
import timeit

import numpy as np

from rigidball import _kernels_py

try:
    from rigidball import _kernels as _compiled
except ImportError:
    _compiled = None


def shooting_inputs(n=4, delta=1.0, steps=20000, r0=1e-4):
    h = (delta - r0) / steps
    r = r0 + 0.5 * h * np.arange(2 * steps + 1)
    return (n - 1) / np.tan(r), (n - 1) / np.sin(r) ** 2, h


def relax_inputs(n=4, delta=1.0, steps=20000):
    h = delta / steps
    r = 1e-4 + 0.5 * h * np.arange(2 * steps + 1)
    return (n - 1) / np.tan(r), np.cos(r), h


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    p, q, h = shooting_inputs()
    pr, br, hr = relax_inputs()
    cases = {
        "shoot (20000 RK4 steps)": lambda m: m.shoot(6.0, p, q, h, 1e-4, 1.0),
        "shoot_profile (20000 steps)": lambda m: m.shoot_profile(6.0, p, q, h, 1e-4, 1.0),
        "relax (20000 steps)": lambda m: m.relax(pr, br, hr, 1.0),
    }
    backends = {"python": _kernels_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled extension not built; timing the Python backend only")

    print(f"{'kernel':30s} " + " ".join(f"{b:>12s}" for b in backends) + "   speedup")
    for name, fn in cases.items():
        times = {}
        for label, mod in backends.items():
            number = 1 if label == "python" else 20
            times[label] = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
        row = f"{name:30s} " + " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        if "cython" in times:
            row += f"   {times['python'] / times['cython']:7.1f}x"
            a, b = np.asarray(fn(_kernels_py), dtype=float), np.asarray(fn(_compiled), dtype=float)
            assert np.allclose(a, b, rtol=1e-12, atol=1e-15), name
        print(row)

    # one full eigenvalue solve (about 60 shots) for scale
    from rigidball.eigen import mu_shooting

    t = min(timeit.repeat(lambda: (mu_shooting.cache_clear(), mu_shooting(4, 1.0)), number=1, repeat=args.repeat))
    print(f"mu_shooting(4, 1.0) end to end with the active backend: {t * 1e3:.1f} ms")
    assert math.isfinite(mu_shooting(4, 1.0).mu)


if __name__ == "__main__":
    main()
