"""Scratch cross-check of the visibility engine vs the oracle."""
import random
import time
from fractions import Fraction

from terrainguard.geometry import EdgePoint, Terrain, VertexRef, sees
from terrainguard.oracles import oracle_region, oracle_sees
from terrainguard.visibility import _sweep_exact, visibility_region


def random_terrain(rng, n, denom=8):
    xs = []
    x = Fraction(0)
    for i in range(n):
        xs.append(x)
        x += Fraction(rng.randint(1, 3 * denom), denom)
    ys = [Fraction(rng.randint(-10 * denom, 10 * denom), denom) for _ in range(n)]
    return Terrain(list(zip(xs, ys)))


def random_point(rng, t):
    if rng.random() < 0.5:
        return VertexRef(rng.randrange(t.n))
    j = rng.randrange(t.n - 1)
    x0, x1 = t.xs[j], t.xs[j + 1]
    x = x0 + Fraction(rng.randint(1, 15), 16) * (x1 - x0)
    if x == x0 or x == x1:
        return VertexRef(j)
    return EdgePoint(j, x)


def main():
    rng = random.Random(12345)
    t0 = time.time()
    n_checked = 0
    for trial in range(400):
        n = rng.randint(2, 25)
        t = random_terrain(rng, n)
        p = random_point(rng, t)
        prod = visibility_region(t, p)
        orac = oracle_region(t, p)
        if prod.intervals != orac.intervals:
            print("MISMATCH region", trial, t.xs, t.ys, p)
            print("prod:", prod.intervals)
            print("orac:", orac.intervals)
            return
        # pointwise sees checks
        for _ in range(10):
            q = random_point(rng, t)
            s1 = sees(t, p, q)
            s2 = oracle_sees(t, p, q)
            s3 = prod.covers_x(t.point_x(q))
            if not (s1 == s2 == s3):
                print("MISMATCH sees", trial, p, q, s1, s2, s3)
                return
            # symmetry
            if sees(t, q, p) != s1:
                print("MISMATCH symmetry", trial, p, q)
                return
            n_checked += 1
    print(f"OK: 400 regions, {n_checked} point checks in {time.time()-t0:.1f}s")

    # degenerate cases: collinear plateaus, tent, valley
    tent = Terrain([(0, 0), (1, 1), (2, 0)])
    assert sees(tent, VertexRef(0), VertexRef(2)) is False
    valley = Terrain([(0, 1), (1, 0), (2, 1)])
    assert sees(valley, VertexRef(0), VertexRef(2)) is True
    r = visibility_region(tent, VertexRef(0))
    print("tent v0 region:", r.intervals)
    assert r.intervals == ((Fraction(0), Fraction(1)),)
    r = oracle_region(tent, VertexRef(0))
    assert r.intervals == ((Fraction(0), Fraction(1)),)

    flat = Terrain([(0, 0), (1, 0), (2, 0), (3, 0)])
    r = visibility_region(flat, VertexRef(1))
    print("flat region:", r.intervals)
    assert r.intervals == ((Fraction(0), Fraction(3)),)

    # exercise the fast path with a bigger instance and compare vs exact tier
    rng2 = random.Random(99)
    n = 1500
    ys = [Fraction(0)]
    for i in range(n - 1):
        ys.append(ys[-1] + Fraction(rng2.randint(-2**20, 2**20), 2**20))
    big = Terrain([(i, ys[i]) for i in range(n)])
    assert big.exact_float_ok
    t0 = time.time()
    mismatches = 0
    for i in list(range(0, n, 97)) + [n - 1]:
        fast = visibility_region(big, VertexRef(i))
        ex_r = _sweep_exact(big.xi, big.yi, big.n, big.point_scaled(VertexRef(i)),
                            i + 1, big.point_x(VertexRef(i)) * big.sx)
        ex_l = _sweep_exact(big.xim, big.yim, big.n,
                            (-big.point_scaled(VertexRef(i))[0],
                             big.point_scaled(VertexRef(i))[1], 1),
                            big.n - i, -big.point_x(VertexRef(i)) * big.sx)
        from terrainguard.geometry import merge_intervals
        sx = big.sx
        exp = [(Fraction(-hi) / sx, Fraction(-lo) / sx) for lo, hi in reversed(ex_l)]
        exp.extend((Fraction(lo) / sx, Fraction(hi) / sx) for lo, hi in ex_r)
        exp = merge_intervals(exp)
        if fast.intervals != exp:
            mismatches += 1
            print("fast/exact mismatch at", i)
            print(" fast:", fast.intervals[:5])
            print(" exact:", exp[:5])
    print(f"fast-vs-exact on walk n={n}: {mismatches} mismatches, {time.time()-t0:.1f}s")

    # also oracle-check a few points on the big walk (oracle is O(n^2), keep few)
    for i in (0, 700, n - 1):
        fast = visibility_region(big, VertexRef(i))
        orac = oracle_region(big, VertexRef(i))
        assert fast.intervals == orac.intervals, f"oracle mismatch at {i}"
    print("oracle check on walk: OK")


if __name__ == "__main__":
    main()
