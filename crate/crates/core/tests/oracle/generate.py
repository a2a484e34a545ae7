"""Reference values for the integration tests, computed with mpmath and
sympy independently of the Rust code. Run with `python3 generate.py`."""

import itertools
import sys

import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def psi(x, z):
    n = len(x)
    e = sum((x[i] - x[j]) * (z[i] - z[j]) for i, j in itertools.combinations(range(n), 2))
    k = mp.mpf(n) ** (-mp.mpf(1) / 3)
    return mp.exp(e / n) * mp.airyai(k * sum(x[i] + z[i] for i in range(n)))


def sigma(x, z):
    return mp.fprod(mp.airyai(a + b) for a, b in zip(x, z))


def partial(f, x, k, order=1):
    def g(t):
        y = list(x)
        y[k] = t
        return f(y)

    return mp.diff(g, x[k], order)


def airy_sum_over(f, x):
    return sum(partial(f, x, k, 2) for k in range(len(x))) - sum(x) * f(x)


def d2(f, x):
    return partial(f, x, 0) - partial(f, x, 1) - 2 / (x[0] - x[1]) * f(x)


def deformed(f, x):
    n = len(x)
    pot = sum(4 / (x[i] - x[j]) ** 2 for i, j in itertools.combinations(range(n), 2))
    return airy_sum_over(f, x) - pot * f(x)


def fmt(v):
    return mp.nstr(v, 20, min_fixed=-3, max_fixed=3)


SECTIONS = sys.argv[1:] or ["numeric", "d3"]


def numeric():
    print("// eigenvalue of the Airy sum on psi: (n, x, z, H psi / psi)")
    for n, x, z in [
        (2, [0.3, -0.7], [0.25, -1.5]),
        (2, [-1.2, 0.9], [0.6, 0.1]),
        (3, [0.2, -0.5, 0.9], [-0.4, 0.7, 0.1]),
        (3, [-1.0, 0.35, 0.6], [0.8, -0.9, 0.15]),
    ]:
        x = [mp.mpf(v) for v in x]
        z = [mp.mpf(v) for v in z]
        print(n, [float(v) for v in x], [float(v) for v in z], fmt(airy_sum_over(lambda y: psi(y, z), x) / psi(x, z)))

    print("// n = 2: D2[sigma](x, z), D2[sigma](z, x), H~ D2[sigma] / D2[sigma], D2[psi] / psi")
    for x, z in [([-1.3, -1.9], [-1.1, -1.7]), ([0.4, -0.35], [0.2, 0.9])]:
        x = [mp.mpf(v) for v in x]
        z = [mp.mpf(v) for v in z]
        st = lambda y, w: d2(lambda u: sigma(u, w), y)
        a, b = st(x, z), st(z, x)
        ratio = deformed(lambda u: d2(lambda v: sigma(v, z), u), x) / a
        pr = d2(lambda u: psi(u, z), x) / psi(x, z)
        print([float(v) for v in x], [float(v) for v in z], fmt(a), fmt(b), fmt(ratio), fmt(pr))


def d3():
    print("// D3 written out: symbol relation check, coefficients at x = (1/2, -1/3, 2)")
    a, b, c = X = sp.symbols("x1:4")
    P = sp.symbols("p1:4")
    den = -(a - b) * (a - c) * (b - c)
    coef = {
        (0, 0, 0): 12 / den,
        (1, 0, 0): (-8 * a + 4 * b + 4 * c) / den,
        (0, 1, 0): (4 * a - 8 * b + 4 * c) / den,
        (0, 0, 1): (4 * a + 4 * b - 8 * c) / den,
        (2, 0, 0): 2 / (c - b),
        (0, 2, 0): -2 / (c - a),
        (0, 0, 2): 2 / (b - a),
        (1, 1, 0): (-2 * a**2 + 6 * a * b - 2 * a * c - 2 * b**2 - 2 * b * c + 2 * c**2) / den,
        (1, 0, 1): (-2 * a**2 - 2 * a * b + 6 * a * c + 2 * b**2 - 2 * b * c - 2 * c**2) / den,
        (0, 1, 1): (2 * a**2 - 2 * a * b - 2 * a * c - 2 * b**2 + 6 * b * c - 2 * c**2) / den,
        (2, 1, 0): 1, (0, 2, 1): 1, (1, 0, 2): 1,
        (1, 2, 0): -1, (2, 0, 1): -1, (0, 1, 2): -1,
    }
    # on exp(p.x) the intertwining relation with the Laplacian pair becomes
    # a PDE for the symbol g(x, p)
    g = sum(v * sp.Mul(*[q**e for q, e in zip(P, k)]) for k, v in coef.items())
    pairs = [(0, 1), (0, 2), (1, 2)]
    pde = sum(sp.diff(g, v, 2) + 2 * q * sp.diff(g, v) for v, q in zip(X, P))
    pde -= sum(4 / (X[i] - X[j]) ** 2 for i, j in pairs) * g
    print("relation residual:", sp.cancel(sp.together(pde)))
    point = {a: sp.Rational(1, 2), b: sp.Rational(-1, 3), c: 2}
    for k, v in coef.items():
        print(k, sp.sympify(v).subs(point))


for name in SECTIONS:
    globals()[name]()
