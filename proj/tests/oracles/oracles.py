"""Independent high-precision oracles for frozen expected values in the C++ tests.

Run with: python3 tests/oracles/oracles.py
Nothing here shares code with the C++ implementation.
"""
from fractions import Fraction
import math
import mpmath as mp

mp.mp.dps = 50


def cubic_roots():
    # z^3 + 2z^2 + z + 1 (also the period-3 Mandelbrot centres)
    return sorted(mp.polyroots([1, 2, 1, 1], maxsteps=200, extraprec=200),
                  key=lambda r: (float(mp.re(r)), float(mp.im(r))))


def lattes_multipliers(a, b):
    # fixed points of x -> (x^4 - 2a x^2 - 8b x + a^2) / (4(x^3 + a x + b))
    # numerator of f(x) - x: x^4 - 2a x^2 - 8b x + a^2 - 4x(x^3 + a x + b)
    coeffs = [-3, 0, -6 * a, -12 * b, a * a]
    roots = mp.polyroots(coeffs, maxsteps=200, extraprec=200)
    f = lambda x: (x**4 - 2*a*x**2 - 8*b*x + a*a) / (4*(x**3 + a*x + b))
    mults = [mp.diff(f, r) for r in roots]
    return mults  # plus infinity, multiplier 4 from the local expansion


def mandelbrot_center_counts(nmax):
    counts = []
    for n in range(1, nmax + 1):
        total = 2 ** (n - 1)
        for m in range(1, n):
            if n % m == 0:
                total -= counts[m - 1]
        counts.append(total)
    return counts


def green_escape_rate(t, steps=60):
    # g(t) = lim 2^-n log|f_t^n(0)| for z^2 + t, summed with the n=1 offset
    z = mp.mpc(0)
    val = None
    for n in range(1, steps):
        z = z * z + t
        if abs(z) > mp.mpf(10) ** 1000:
            break
        val = mp.log(abs(z)) / 2 ** n
    return val


def chordal(x, y):
    return abs(x - y) / (mp.sqrt(1 + abs(x)**2) * mp.sqrt(1 + abs(y)**2))


def chordal_inf(x):
    return 1 / mp.sqrt(1 + abs(x)**2)


def recurrence_exponent(c, nmax):
    # s = max_{2<=k<=nmax} -log d_k / log k, d_k = d(f^k(0), {0, inf}) for z^2 + c
    z = mp.mpf(0)
    s = mp.mpf(0)
    for k in range(1, nmax + 1):
        z = z * z + c
        if k >= 2:
            dk = min(chordal(z, 0), chordal_inf(z))
            s = max(s, -mp.log(dk) / mp.log(k))
    return s


def angle_doubling_fs(t1, t2, n, delta):
    # exact orbit of e^{2 pi i t} under z^2 via rational angle doubling
    a, b = Fraction(t1), Fraction(t2)
    hits = 0
    tot_log = mp.mpf(0)
    for _ in range(n):
        za = mp.expjpi(2 * mp.mpf(a.numerator) / a.denominator)
        zb = mp.expjpi(2 * mp.mpf(b.numerator) / b.denominator)
        d = chordal(za, zb)
        if d >= delta:
            hits += 1
        tot_log += max(-mp.log(d), 0)
        a = (2 * a) % 1
        b = (2 * b) % 1
    return hits / n, tot_log / n


def misiurewicz_counts(pairs):
    # exact factorisation of P_(m+p) - P_m over Q; a factor has the type of
    # the smallest (m', p') with p' | p whose polynomial it divides
    import sympy as sp
    t = sp.symbols('t')

    def P(k):
        q = sp.Integer(0)
        for _ in range(k):
            q = sp.expand(q**2 + t)
        return q

    def G(m, p):
        return sp.Poly(sp.expand(P(m + p) - P(m)), t)

    out = {}
    for m, p in pairs:
        cnt = 0
        for fac, _ in sp.factor_list(G(m, p).as_expr())[1]:
            h = sp.Poly(fac, t)
            typ = next(((mm, pp) for mm in range(m + 1) for pp in range(1, p + 1)
                        if p % pp == 0 and sp.rem(G(mm, pp), h).is_zero), None)
            if typ == (m, p):
                cnt += h.degree()
        out[(m, p)] = cnt
    return out


def chebyshev_separation(t1, t2, n, delta):
    # orbits of 2cos(2 pi t) under z^2 - 2 via exact angle doubling
    a, b = Fraction(t1), Fraction(t2)
    hits = 0
    tot_log = mp.mpf(0)
    for _ in range(n):
        xa = 2 * mp.cos(2 * mp.pi * mp.mpf(a.numerator) / a.denominator)
        xb = 2 * mp.cos(2 * mp.pi * mp.mpf(b.numerator) / b.denominator)
        d = chordal(xa, xb)
        if d >= delta:
            hits += 1
        tot_log += max(-mp.log(d), 0)
        a = (2 * a) % 1
        b = (2 * b) % 1
    return hits / n, tot_log / n


if __name__ == "__main__":
    print("cubic roots z^3+2z^2+z+1:")
    for r in cubic_roots():
        print("  ", mp.nstr(r, 17))
    print("lattes (1,1) multipliers:", [mp.nstr(m, 12) for m in lattes_multipliers(1, 1)])
    print("lattes (2,3) multipliers:", [mp.nstr(m, 12) for m in lattes_multipliers(2, 3)])
    print("center counts:", mandelbrot_center_counts(12))
    print("green(z^2+t, t=100):", mp.nstr(green_escape_rate(mp.mpf(100)), 17),
          " 0.5*log(100) =", mp.nstr(mp.log(100) / 2, 17))
    print("recurrence s, z^2-2, nmax=20:", mp.nstr(recurrence_exponent(-2, 20), 17))
    print("recurrence s, z^2+0.25, nmax=50:", mp.nstr(recurrence_exponent(mp.mpf('0.25'), 50), 17))
    fs, av = angle_doubling_fs(Fraction(1, 10), Fraction(37, 100), 1000, 0.05)
    print("angle doubling exact fs, as:", fs, mp.nstr(av, 12))
    print("sqrt5 based multipliers:", mp.nstr(1 + mp.sqrt(5), 17), mp.nstr(1 - mp.sqrt(5), 17))
    print("misiurewicz counts d=2:", misiurewicz_counts([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)]))
    fs, av = chebyshev_separation(Fraction(1, 10), Fraction(37, 100), 40, 0.05)
    print("chebyshev separation n=40 fs, as:", fs, mp.nstr(av, 12))
