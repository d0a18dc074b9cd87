"""Homomorphism counting: compiled odometer kernel vs vectorised numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
from timeit import repeat

from handlecalc import _kernels
from handlecalc.invariants import alternating_group, count_homomorphisms, symmetric_group
from handlecalc.presentation import Presentation

CASES = [
    ("AK(2) -> S3", Presentation.from_text("x y", "x^2 y^-3", "x y x y^-1 x^-1 y^-1"), symmetric_group(3)),
    ("AK(3) -> A4", Presentation.from_text("x y", "x^3 y^-4", "x y x y^-1 x^-1 y^-1"), alternating_group(4)),
    ("3 gens -> A4", Presentation.from_text("x y z", "x y z x^-1", "y^2 z^-1 x y", "z x y^-1 z^3"),
     alternating_group(4)),
    ("4 gens -> A4", Presentation.from_text("w x y z", "w x y z", "x^3 w^-1", "y z y^-1 z^-2", "w^2 x y^-1 x"),
     alternating_group(4)),
    ("3 gens -> S4", Presentation.from_text("x y z", "x^4", "y^2 x y x^-1", "z y z^-1 x^2 y"),
     symmetric_group(4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'case':<14} {'assignments':>11} {'count':>7} {'numba ms':>9} {'numpy ms':>9} {'speedup':>8}")
    for name, p, g in CASES:
        a = count_homomorphisms(p, g, use_numba=True)  # also triggers compilation
        b = count_homomorphisms(p, g, use_numba=False)
        assert a == b, (name, a, b)
        t_nb = min(repeat(lambda: count_homomorphisms(p, g, use_numba=True), number=1, repeat=args.repeat))
        t_np = min(repeat(lambda: count_homomorphisms(p, g, use_numba=False), number=1, repeat=args.repeat))
        n = g.order ** p.ngens
        print(f"{name:<14} {n:>11} {a:>7} {t_nb * 1e3:>9.3f} {t_np * 1e3:>9.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
