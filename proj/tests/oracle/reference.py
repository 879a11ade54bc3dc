"""Independent reference values for the unit tests (mpmath, 50 digits).

Run: python3 tests/oracle/reference.py
"""
from fractions import Fraction
import mpmath as mp

mp.mp.dps = 50
PHI = (mp.sqrt(5) - 1) / 2


def triangle(alpha):
    c, s = mp.cos(alpha / 2), mp.sin(alpha / 2)
    return c, s


def segments(alpha):
    c, s = triangle(alpha)
    o, x, y = (mp.mpf(0), mp.mpf(0)), (c, mp.mpf(0)), (c, s)
    return {"H": (o, x), "V": (x, y), "HYP": (o, y)}


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def hit(pos, theta, alpha, skip=None):
    """Ray against each segment via 2x2 solve; smallest positive t."""
    dx, dy = mp.cos(theta), mp.sin(theta)
    best = None
    for name, (a, b) in segments(alpha).items():
        if name == skip:
            continue
        ex, ey = b[0] - a[0], b[1] - a[1]
        den = cross(dx, dy, ex, ey)
        if abs(den) < mp.mpf(10) ** -40:
            continue
        wx, wy = a[0] - pos[0], a[1] - pos[1]
        t = cross(wx, wy, ex, ey) / den
        u = cross(wx, wy, dx, dy) / den
        if t > mp.mpf(10) ** -40 and -mp.mpf(10) ** -30 <= u <= 1 + mp.mpf(10) ** -30:
            if best is None or t < best[2]:
                best = (name, (pos[0] + t * dx, pos[1] + t * dy), t)
    return best


def beta(name, alpha):
    return {"H": mp.mpf(0), "V": mp.pi / 2, "HYP": alpha / 2}[name]


def walls(alpha, theta0, start_s, count):
    c, _ = triangle(alpha)
    pos, theta, wall = (start_s * c, mp.mpf(0)), mp.mpf(theta0), "H"
    out = []
    for _ in range(count):
        name, pos, _t = hit(pos, theta, alpha, wall)
        theta = 2 * beta(name, alpha) - theta
        wall = name
        out.append(name)
    return out


def kpaper_series(seq):
    k, ks = 0, [0]
    for w in seq:
        k = k + 1 if w == "HYP" else -k
        ks.append(k)
    return ks


def kexact_series(seq):
    phi, k, out = 0, 0, [(0, 0)]
    for w in seq:
        if w == "H":
            phi, k = phi ^ 1, -k
        elif w == "V":
            phi, k = phi ^ 2, -k
        else:
            phi, k = phi ^ 1, 1 - k
        out.append((phi, k))
    return out


def divergence(theta0, s, n, cap=5000):
    f = [0, 1, 1]
    while len(f) < n + 4:
        f.append(f[-1] + f[-2])
    a = mp.pi * Fraction(f[n], f[n + 1]).numerator / f[n + 1]
    b = mp.pi * mp.mpf(f[n + 1]) / f[n + 2]
    wa, wb = walls(a, theta0, s, cap), walls(b, theta0, s, cap)
    for i, (x, y) in enumerate(zip(wa, wb), start=1):
        if x != y:
            kp = kpaper_series(wa[:i])
            ke = kexact_series(wa[:i])
            return i, len(set(kp)), len({k for _, k in ke})
    return None


def closure(M, N, theta0, s, cap=100000):
    alpha = mp.pi * M / N
    c, _ = triangle(alpha)
    pos, theta, wall = (s * c, mp.mpf(0)), mp.mpf(theta0), "H"
    # realized angle classes: sign of theta0 and multiple of pi/N mod 2N
    base = {0: (1, 0), 1: (-1, 0), 2: (-1, N), 3: (1, N)}
    orbit = 4 * N
    phi, k = 0, 0
    seen = {(1, 0)}
    for i in range(1, cap + 1):
        name, pos, _t = hit(pos, theta, alpha, wall)
        theta = 2 * beta(name, alpha) - theta
        wall = name
        if name == "H":
            phi, k = phi ^ 1, -k
        elif name == "V":
            phi, k = phi ^ 2, -k
        else:
            phi, k = phi ^ 1, 1 - k
        sg, j = base[phi]
        seen.add((sg, (j + k * M) % (2 * N)))
        if len(seen) == orbit:
            return i
    return None


def mean_inv_p(alpha):
    c, s = triangle(alpha)
    tx = mp.quad(lambda u: mp.atan2(s, u), [0, c]) / c
    ty = mp.quad(lambda h: mp.atan2(c, h), [0, s]) / s
    return 2 * mp.pi / (tx + ty)


if __name__ == "__main__":
    ag = mp.pi * PHI
    print("golden legs", triangle(ag))
    print("golden next_collision", hit((mp.mpf("0.3"), mp.mpf(0)), mp.mpf("1.2"), ag, "H"))
    print("realize P0 K=2", mp.fmod(1 + 2 * ag, 2 * mp.pi))
    print("init golden s=0.3", mp.mpf("0.3") * triangle(ag)[0])
    print("predicted_nk 89", mp.log(89) / mp.log(mp.mpf("2.8011")))
    print("inv_mean_p golden", mean_inv_p(ag))
    print("inv_mean_p pi/2", mean_inv_p(mp.pi / 2))
    for n in (5, 6, 7):
        print("divergence theta0=1 s=0.37 n=%d" % n, divergence(mp.mpf(1), mp.mpf("0.37"), n))
    print("closure 3/5 theta0=1 s=0.37", closure(3, 5, mp.mpf(1), mp.mpf("0.37")))
    print("first walls golden theta0=0.7 s=0.5", walls(ag, mp.mpf("0.7"), mp.mpf("0.5"), 40))
