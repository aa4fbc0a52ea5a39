"""Why locality pays: game size versus structure size.

On bounded-width posets the local game explores a number of positions that
depends on the formula and the width but not on n, because every move after
the first is confined to a fixed-radius ball.  The naive evaluator's work is
n^rank.  This script measures both on growing chains.
"""

import time

import numpy as np

from posetmc import check_local, eval_naive, from_relation, parse


def chain(n):
    return from_relation(n, [(i, i + 1) for i in range(n - 1)])


def fit(sizes, times):
    xs, ys = np.log(np.array(sizes, float)), np.log(np.array(times))
    return float(np.polyfit(xs, ys, 1)[0])


f2 = parse("E x. A y. x <= y")
print("game positions for %r (independent of n):" % f2)
for n in (50, 100, 200, 400):
    r = check_local(chain(n), f2)
    print("  n=%3d positions=%d maxBall=%d" % (n, r.positions, r.max_ball))

print("\nlocal engine, total time including digraph construction:")
sizes, times = [100, 200, 400, 800], []
for n in sizes:
    t0 = time.perf_counter()
    check_local(chain(n), f2)
    times.append(max(time.perf_counter() - t0, 1e-4))
    print("  n=%3d %6.1f ms" % (n, times[-1] * 1000))
print("fitted growth exponent: %.2f" % fit(sizes, times))

f3 = parse("A x. A y. A z. (x <= y & y <= z) -> x <= z")
print("\nnaive engine on a rank-3 sentence:")
sizes, times = [24, 48, 96], []
for n in sizes:
    t0 = time.perf_counter()
    eval_naive(chain(n), f3)
    times.append(max(time.perf_counter() - t0, 1e-4))
    print("  n=%3d %6.1f ms" % (n, times[-1] * 1000))
print("fitted growth exponent: %.2f" % fit(sizes, times))
