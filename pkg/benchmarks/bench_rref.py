"""Row reduction over Z/p: numba kernel vs numpy fallback.

Times both kernels on random matrices and, end to end, a thick-lattice
enumeration run in a subprocess with THICKCENTRE_DISABLE_NUMBA set and unset.

    python3 benchmarks/bench_rref.py --sizes 8 32 128 --repeat 20
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from thickcentre import _kernels


def best_of(fn, mats, p, repeat):
    times = []
    for _ in range(repeat):
        work = [m.copy() for m in mats]
        t = time.perf_counter()
        for a in work:
            fn(a, p)
        times.append(time.perf_counter() - t)
    return min(times) / len(mats)


def kernel_table(sizes, p, repeat, batch, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        mats = [rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64) for _ in range(batch)]
        # warm up (numba compiles on first call)
        _kernels.rref_inplace_numba(mats[0].copy(), p)
        a, b = mats[0].copy(), mats[0].copy()
        assert _kernels.rref_inplace_numba(a, p)[0] == _kernels.rref_inplace_numpy(b, p)[0]
        assert np.array_equal(a, b)
        t_nb = best_of(_kernels.rref_inplace_numba, mats, p, repeat)
        t_np = best_of(_kernels.rref_inplace_numpy, mats, p, repeat)
        rows.append((n, t_nb, t_np))
    return rows


def end_to_end(fixture):
    code = ("import time; from thickcentre.fixtures import setting; "
            f"t=time.perf_counter(); s=setting({fixture!r}); s.lattice; s.commuting; "
            "print(time.perf_counter()-t)")
    out = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, THICKCENTRE_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip().splitlines()[-1])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64, 128])
    ap.add_argument("--prime", type=int, default=101)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fixture", default="A3", help="fixture for the end-to-end run ('' to skip)")
    args = ap.parse_args()

    print(f"rref over Z/{args.prime}, matrices n x 1.5n, best of {args.repeat}")
    print(f"{'n':>5} {'numba (us)':>12} {'numpy (us)':>12} {'speedup':>8}")
    for n, t_nb, t_np in kernel_table(args.sizes, args.prime, args.repeat, args.batch, args.seed):
        print(f"{n:>5} {t_nb * 1e6:>12.1f} {t_np * 1e6:>12.1f} {t_np / t_nb:>8.2f}")

    if args.fixture:
        res = end_to_end(args.fixture)
        print(f"\nlattice + commuting matrix for {args.fixture} (includes numba compile/cache load):")
        for k, v in res.items():
            print(f"  {k:6s} {v:8.2f} s")


if __name__ == "__main__":
    main()
