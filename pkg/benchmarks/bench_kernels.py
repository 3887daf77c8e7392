"""Compare the compiled and numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--n 256] [--repeat 5]

Times the fused spectral combination, the Gray-Scott reaction and one full
ETDRK4-P13 step of Gray-Scott on an n x n periodic grid, per backend.
"""
import argparse
import timeit

import numpy as np

from fracrd import _kernels
from fracrd.etd import StepperContext
from fracrd.models import gray_scott


def bench(stmt, repeat, number):
    return min(timeit.repeat(stmt, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    n = args.n
    rng = np.random.default_rng(0)
    shape = (n, n // 2 + 1)
    w = [rng.random(shape) for _ in range(4)]
    x = [rng.standard_normal(shape) + 1j * rng.standard_normal(shape) for _ in range(4)]
    out = np.empty(shape, dtype=complex)
    u = rng.random((n, n))
    v = rng.random((n, n))
    fu = np.empty_like(u)
    fv = np.empty_like(u)

    model = gray_scott()
    grid = model.make_grid(n)
    cases = {}
    for name in _kernels.available_backends():
        k = _kernels.get_backend(name)
        ctx = StepperContext(grid, model, 1.0, kernels=k, reaction=model.reaction(grid, k))
        state = [a.copy() for a in model.initial_state(grid).arrays]
        cases[name] = {
            "combine4": (lambda k=k: k.combine4(w[0], x[0], w[1], x[1], w[2], x[2], w[3], x[3], out), 20),
            "gray_scott": (lambda k=k: k.gray_scott(u, v, 0.03, 0.055, fu, fv), 20),
            "etd_step": (lambda ctx=ctx, state=state: ctx.step(state, 0.0), 5),
        }
    # backends alternate inside each repeat so that both see the same machine state
    results = {name: {key: float("inf") for key in c} for name, c in cases.items()}
    for _ in range(args.repeat):
        for key in ("combine4", "gray_scott", "etd_step"):
            for name, c in cases.items():
                fn, number = c[key]
                results[name][key] = min(results[name][key], bench(fn, 1, number))
    names = list(results)
    print(f"grid {n}x{n}, best of {args.repeat}, seconds per call")
    print(f"{'kernel':<12}" + "".join(f"{nm:>12}" for nm in names)
          + ("    speedup" if len(names) == 2 else ""))
    for key in results[names[0]]:
        line = f"{key:<12}" + "".join(f"{results[nm][key]:>12.3e}" for nm in names)
        if len(names) == 2:
            line += f"    {results[names[1]][key] / results[names[0]][key]:>6.2f}x"
        print(line)


if __name__ == "__main__":
    main()
