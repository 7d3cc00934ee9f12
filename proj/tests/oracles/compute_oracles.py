"""Independent oracle values frozen into the C++ test suites.

Run with `python3 compute_oracles.py`. Uses exact symbolic integration (sympy)
for the Parzen self-convolution and plain series / quadrature elsewhere, so
nothing here shares a code path with the library.
"""
import math

import mpmath
import sympy as sp

t, u = sp.symbols("t u", real=True)


def parzen_pieces():
    # (lo, hi, expr) pieces of the Parzen kernel on [-1, 1]
    a = sp.Rational(1, 2)
    return [
        (-1, -a, 2 * (1 + t) ** 3),
        (-a, 0, 1 - 6 * t**2 - 6 * t**3),
        (0, a, 1 - 6 * t**2 + 6 * t**3),
        (a, 1, 2 * (1 - t) ** 3),
    ]


def parzen_expr(x):
    for lo, hi, e in parzen_pieces():
        if lo <= x <= hi:
            return e.subs(t, x)
    return sp.Integer(0)


def self_convolution(u0):
    """(k * k)(u0) = int k(s) k(u0 - s) ds, exact."""
    u0 = sp.nsimplify(u0)
    total = sp.Integer(0)
    bps = sorted({sp.Integer(-1), sp.Rational(-1, 2), sp.Integer(0), sp.Rational(1, 2), sp.Integer(1),
                  u0 - 1, u0 - sp.Rational(1, 2), u0, u0 + sp.Rational(1, 2), u0 + 1})
    for lo, hi in zip(bps[:-1], bps[1:]):
        if hi <= -1 or lo >= 1:
            continue
        mid = (lo + hi) / 2
        if abs(u0 - mid) >= 1:
            continue
        f1 = None
        for plo, phi_, e in parzen_pieces():
            if plo <= mid <= phi_:
                f1 = e
        f2 = None
        for plo, phi_, e in parzen_pieces():
            if plo <= u0 - mid <= phi_:
                f2 = e.subs(t, u0 - t)
        total += sp.integrate(sp.expand(f1 * f2), (t, lo, hi))
    return sp.nsimplify(total)


c0 = self_convolution(0)
print("c(0) =", c0, float(c0))
for x in ["1/8", "1/4", "1/2", "3/4", "9/10"]:
    xv = sp.Rational(x)
    val = self_convolution(2 * xv) / c0
    print(f"phi({x}) =", sp.nsimplify(val), repr(float(val)))

# phi''(0) = 4 * (k*k)''(0) / (k*k)(0) = -4 * int k'(s)^2 ds / int k(s)^2 ds
dk2 = sum(sp.integrate(sp.diff(e, t) ** 2, (t, lo, hi)) for lo, hi, e in parzen_pieces())
k2 = sum(sp.integrate(e**2, (t, lo, hi)) for lo, hi, e in parzen_pieces())
assert sp.simplify(k2 - c0) == 0
phi_dd0 = -4 * dk2 / k2
print("phi''(0) =", phi_dd0, repr(float(phi_dd0)))

# int_{-1}^{1} phi(x)^2 dx by high-precision adaptive quadrature on exact phi pieces
u_sym = sp.symbols("u")


def phi_num(x):
    return float(self_convolution(2 * sp.Rational(x).limit_denominator(10**6)) / c0)


# piecewise-polynomial phi: recover exact piece polynomials on x in [0,1] breakpoints at 1/4, 1/2, 3/4
pieces = []
for lo, hi in [(0, sp.Rational(1, 4)), (sp.Rational(1, 4), sp.Rational(1, 2)),
               (sp.Rational(1, 2), sp.Rational(3, 4)), (sp.Rational(3, 4), 1)]:
    # interpolate degree-7 polynomial through 8 exact points inside the piece
    xs = [lo + (hi - lo) * sp.Rational(j + 1, 9) for j in range(8)]
    ys = [self_convolution(2 * xv) / c0 for xv in xs]
    poly = sp.interpolate(list(zip(xs, ys)), u_sym)
    pieces.append((lo, hi, sp.expand(poly)))
l2 = 2 * sum(sp.integrate(p**2, (u_sym, lo, hi)) for lo, hi, p in pieces)
print("int phi^2 =", sp.nsimplify(l2), repr(float(l2)))
dd0_check = sp.diff(pieces[0][2], u_sym, 2).subs(u_sym, 0)
print("phi''(0) from piece polynomial =", repr(float(dd0_check)))


# Kolmogorov distribution
def kolmogorov(x):
    mpmath.mp.dps = 40
    return mpmath.mpf(1) - 2 * mpmath.nsum(lambda k: (-1) ** (k - 1) * mpmath.exp(-2 * k * k * x * x), [1, mpmath.inf])


for x in [0.5, 1.0, 1.3581, 1.6276, 2.0]:
    print(f"F_K({x}) =", mpmath.nstr(kolmogorov(x), 17))

# Inverse normal cdf reference points
for p in [0.975, 0.995, 0.95, 1e-10, 0.3]:
    mpmath.mp.dps = 40
    print(f"Phi^-1({p}) =", mpmath.nstr(mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(p) - 1), 17))

# Weight autocorrelation of the moving-average multipliers, for ell in {1, 5, 20}
def parzen_f(x):
    x = abs(x)
    if x <= 0.5:
        return 1 - 6 * x * x + 6 * x**3
    if x <= 1:
        return 2 * (1 - x) ** 3
    return 0.0


for ell in [1, 5, 20]:
    b = ell // 2 + 1
    w = [parzen_f(j / b) for j in range(-b, b + 1)]
    s = sum(v * v for v in w)
    rho = [sum(w[j] * w[j + h] for j in range(len(w) - h)) / s for h in range(0, 2 * b + 1)]
    print(f"ell={ell} b={b} rho=", [round(r, 12) for r in rho[:6]])
