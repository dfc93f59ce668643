"""Independent reference values for the C++ test suite.

Plain Python with fractions.Fraction; shares no code with the library.
Run: python3 tests/oracle/derive.py [N]
"""

import sys
from fractions import Fraction


def T(x):
    if x == 1:
        return 1
    return x // 2 if x % 2 == 0 else (3 * x + 1) // 2


def C(x):
    return x // 2 if x % 2 == 0 else 3 * x + 1


def kind(v):
    return "1" if v == 1 else ("even" if v % 2 == 0 else "odd")


TABLE = {
    ("1", "1"): (1, 0, 0, 0, -1, 1),
    ("1", "even"): (1, 0, 0, -1, 0, 1),
    ("1", "odd"): (0, 0, 0, -2, 1, 2),
    ("even", "1"): (1, 0, 1, -1, 0, 1),
    ("even", "even"): (1, 0, -1, 0, -1, 1),
    ("even", "odd"): (0, 0, -2, 1, -2, 2),
    ("odd", "1"): (1, 0, -1, -1, 0, 1),
    ("odd", "even"): (0, -2, 0, 1, 2, -2),
}


def weights(x, y):
    kx, ky = kind(x), kind(y)
    if (kx, ky) in TABLE:
        return TABLE[(kx, ky)]
    k, l = (x - 1) // 2, (y - 1) // 2
    b = max(-2, min(2, k - l))
    d, e, z = -1, 0, 0
    if k - l <= -2 and 11 * k - 10 * l + 1 <= 0:
        d, e = -2, 2
    if k - l >= 2 and -10 * k + 11 * l + 1 <= 0:
        d, z = -2, 2
    return (2, b, -b, d, e, z)


def dists(x, y):
    tx, ty = T(x), T(y)
    return ((tx - ty) ** 2, (x - ty) ** 2, (tx - y) ** 2, (x - y) ** 2, (x - tx) ** 2, (y - ty) ** 2)


def lhs(x, y, w=None):
    w = weights(x, y) if w is None else w
    return sum(a * b for a, b in zip(w, dists(x, y)))


def blend(x, y, lam):
    a, s = weights(x, y), weights(y, x)
    swap = (s[0], s[2], s[1], s[3], s[5], s[4])
    return tuple((1 - lam) * Fraction(p) + lam * Fraction(q) for p, q in zip(a, swap))


def cell(x, y):
    kx, ky = kind(x), kind(y)
    if (kx, ky) != ("odd", "odd"):
        return kx + "-" + ky
    k, l = (x - 1) // 2, (y - 1) // 2
    if k - l <= -2:
        return "below_gated" if 11 * k - 10 * l + 1 <= 0 else "below_open"
    if k - l >= 2:
        return "above_gated" if -10 * k + 11 * l + 1 <= 0 else "above_open"
    return "near"


def triangle_gap(theta, x, y, z):
    theta = Fraction(theta)
    return theta * (x - y) ** 2 - 2 * min(theta, 0) * ((x - z) ** 2 + (z - y) ** 2)


def stopping(f, x, cap=10**5):
    n = 0
    while n < cap:
        x = f(x)
        n += 1
        if x == 1:
            return n
    return None


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    print("lhs(1,1) =", lhs(1, 1), " lhs(2,2) =", lhs(2, 2), " lhs(1,2) =", lhs(1, 2))
    print("lhs(2,4) =", lhs(2, 4), " lhs(3,15) =", lhs(3, 15), " lhs(1,3) =", lhs(1, 3))
    print("blend lambda=1 at (1,2):", [str(v) for v in blend(1, 2, 1)])
    print("blend lambda=1/2 at (1,1):", [str(v) for v in blend(1, 1, Fraction(1, 2))])
    print("triangle gap (-1,1,4,2) =", triangle_gap(-1, 1, 4, 2), " (1,1,4,2) =", triangle_gap(1, 1, 4, 2))
    print("weights (3,5) =", weights(3, 5), " (5,3) =", weights(5, 3), " (3,2) =", weights(3, 2))
    print("t(3) =", stopping(T, 3), " c(1) =", stopping(C, 1), " t(1) =", stopping(T, 1), " c(27) =", stopping(C, 27))

    best = {}
    count = {}
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            c = cell(x, y)
            v = lhs(x, y)
            count[c] = count.get(c, 0) + 1
            if c not in best or v > best[c][0]:
                best[c] = (v, x, y)
    print(f"per-cell maxima over [1,{n}]^2 (first pair in row-major order):")
    for c in sorted(best):
        print(f"  {c:12s} count={count[c]:8d} max={best[c][0]} at {best[c][1:]}")

    tally = {}
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            w = weights(x, y)
            tally[kind(x), kind(y)] = max(tally.get((kind(x), kind(y)), 0), max(abs(v) for v in w))
    print("max |w| per case:", tally)


if __name__ == "__main__":
    main()
