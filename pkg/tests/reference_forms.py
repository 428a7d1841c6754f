"""Independent cross-check forms for the test suite.

The distribution functions here are the unsimplified single-expression
variants of the shipped quantities, transcribed verbatim from the source
closed forms.  They cancel badly at large rate*x, which is exactly why the
shipped code uses incomplete-gamma compositions instead; at the moderate
arguments used in tests both agree to ~1e-10.  Also provides brute-force
root enumerations of the three-parameter moment systems, used to decide
whether a parameter vector is the canonical (smallest-c) root of its own
moments.  Production code never imports this module.
"""

import math

import numpy as np
from scipy import optimize

from lindleyfit import specfun

exp = math.exp


def _whit(kappa, mu, z):
    sv = specfun.whittaker_m(kappa, mu, z)
    assert sv.converged, f"whittaker series did not converge at ({kappa}, {mu}, {z})"
    return sv.value


# -- textbook CDFs ----------------------------------------------------------

def lindley1_cdf(x, c):
    return 1.0 - (1.0 + c * x / (1.0 + c)) * exp(-c * x)


def tpld_cdf(x, b, c):
    return 1.0 - (b * c + c * x + 1.0) * exp(-c * x) / (b * c + 1.0)


def pld_cdf(x, b, c):
    t = x**c
    return ((-b * t - b - 1.0) * exp(-b * t) + b + 1.0) / (b + 1.0)


def gld_cdf(x, a, b, c, whittaker=_whit):
    m_val = whittaker(a / 2.0, a / 2.0 + 0.5, b * x)
    return (
        exp(-0.5 * b * x)
        * (
            x ** (a / 2.0) * (c * b ** (a / 2.0) + b ** (a / 2.0 + 1.0)) * m_val
            + b ** (a + 1.0) * x**a * exp(-0.5 * b * x) * (a + 1.0)
        )
    ) / ((c + b) * math.gamma(a + 2.0))


def ngld_cdf(x, a, b, c):
    G = math.gamma
    uig = specfun.upper_incomplete_gamma
    z = c * x
    nb = (
        G(b + 2) * x**a * c ** (a + 1) * exp(-z) * a
        + G(a + 2) * x**b * c**b * exp(-z) * b
        - G(b + 2) * c * uig(a + 1, z) * a
        + G(b + 2) * x**a * c ** (a + 1) * exp(-z)
        + G(a + 2) * x**b * c**b * exp(-z)
        - G(b + 2) * c * uig(a + 1, z)
        + G(b + 2) * G(a + 2) * c
        - G(a + 2) * uig(b + 1, z) * b
        + G(b + 2) * G(a + 2)
        - G(a + 2) * uig(b + 1, z)
    )
    return nb / ((1.0 + c) * G(b + 2) * G(a + 2))


def nwl_cdf(x, b, c):
    nc = (
        -exp(-c * x) * b**2 * c * x
        + exp(-c * (1 + b) * x) * b * c * x
        - exp(-c * x) * b**2 * c
        - 2 * exp(-c * x) * b * c * x
        + exp(-c * (1 + b) * x) * b * c
        + exp(-c * (1 + b) * x) * c * x
        - exp(-c * x) * b**2
        - 2 * exp(-c * x) * b * c
        - exp(-c * x) * c * x
        + b**2 * c
        + exp(-c * (1 + b) * x) * c
        - 2 * exp(-c * x) * b
        - exp(-c * x) * c
        + b**2
        + c * b
        + exp(-c * (1 + b) * x)
        - exp(-c * x)
        + 2 * b
    )
    return nc / (b * (c * b + b + c + 2.0))


def dtl_cdf(x, c, x_l, x_u):
    # only usable while exp(c*(x_l + x_u)) stays in range
    nf = -exp(c * (x_l + x_u)) * (
        -((1 + (x_l + 1) * c) ** 2) * exp(-c * (x_l - x_u))
        - (1 + (x + 1) * c) * (1 + (x_u + 1) * c) * exp(c * (-x + x_l))
        + ((1 + (x + 1) * c) * exp(c * (-x + x_u)) + 1 + (x_u + 1) * c) * (1 + (x_l + 1) * c)
    )
    den = ((-1 + (-x_u - 1) * c) * exp(c * x_l) + (1 + (x_l + 1) * c) * exp(c * x_u)) ** 2
    return nf / den


def lognormal_cdf(x, m, sigma):
    return 0.5 + 0.5 * math.erf(math.sqrt(2.0) * (-math.log(m) + math.log(x)) / (2.0 * sigma))


# -- textbook variances and moments -----------------------------------------

def pld_variance(b, c):
    G = math.gamma
    na = (
        -(b ** (-2.0 / c)) * G((c + 1) / c) ** 2 * c**2
        + b ** (-2.0 / c) * G((c + 2) / c) * b * c**2
        - b ** ((2 * c - 2.0) / c) * G((c + 1) / c) ** 2 * c**2
        - 2 * G((c + 1) / c) ** 2 * b ** ((-2.0 + c) / c) * c**2
        + b ** ((-2.0 + c) / c) * G((c + 2) / c) * b * c**2
        - 2 * b ** (-2.0 / c) * G((c + 1) / c) ** 2 * c
        + 2 * b ** (-2.0 / c) * G((c + 2) / c) * b * c
        + b ** (-2.0 / c) * G((c + 2) / c) * c**2
        - 2 * G((c + 1) / c) ** 2 * b ** ((-2.0 + c) / c) * c
        + b ** ((-2.0 + c) / c) * G((c + 2) / c) * c**2
        - b ** (-2.0 / c) * G((c + 1) / c) ** 2
        + 2 * b ** (-2.0 / c) * G((c + 2) / c) * c
    )
    da = (b + 1.0) ** 2 * c**2
    return na / da


def pld_mean(b, c):
    return (
        (b ** (-1.0 / c) * c + b ** ((c - 1.0) / c) * c + b ** (-1.0 / c))
        * math.gamma((c + 1.0) / c)
        / ((b + 1.0) * c)
    )


def nwl_variance(b, c):
    nd = (
        b**4 * c**2
        + 4 * b**4 * c
        + 4 * b**3 * c**2
        + 2 * b**4
        + 18 * b**3 * c
        + 7 * b**2 * c**2
        + 12 * b**3
        + 32 * b**2 * c
        + 6 * b * c**2
        + 24 * b**2
        + 30 * b * c
        + 2 * c**2
        + 24 * b
        + 12 * c
        + 12
    )
    return nd / (c**2 * (b * c + b + c + 2.0) ** 2 * (1.0 + b) ** 2)


def nwl_raw_moment(r, b, c):
    w = (1.0 + b) / b
    ne = -(
        c ** (1.0 - r) * b ** (1.0 - r) * w ** (-r)
        + b ** (-r) * w ** (-r) * c ** (-r) * r
        - c ** (-r) * b**2 * r
        + c ** (1.0 - r) * b ** (-r) * w ** (-r)
        - c ** (1.0 - r) * b**2
        + b ** (-r) * w ** (-r) * c ** (-r)
        - c ** (-r) * b**2
        - 2 * c ** (-r) * b * r
        - 2 * c ** (1.0 - r) * b
        - 2 * c ** (-r) * b
        - c ** (-r) * r
        - c ** (1.0 - r)
        - c ** (-r)
    ) * math.gamma(1.0 + r)
    return ne / (b * (b * c + b + c + 2.0))


def dtl_raw_moment(r, c, x_l, x_u, whittaker=_whit):
    mu_arg = r / 2.0 + 0.5
    pref = c ** (1.0 - r / 2.0) + c ** (-r / 2.0) * (r + 1.0)
    lower_term = 0.0
    if x_l > 0:
        lower_term = x_l ** (r / 2.0) * exp(-0.5 * c * x_l) * pref * whittaker(r / 2.0, mu_arg, c * x_l)
    ng = (
        -lower_term
        + pref * exp(-0.5 * c * x_u) * x_u ** (r / 2.0) * whittaker(r / 2.0, mu_arg, c * x_u)
        + c * (r + 1.0) * (exp(-c * x_l) * x_l ** (r + 1.0) - exp(-c * x_u) * x_u ** (r + 1.0))
    )
    den = (
        (1.0 + (x_l + 1.0) * c) * exp(-c * x_l) - (1.0 + (x_u + 1.0) * c) * exp(-c * x_u)
    ) * (r + 1.0)
    return ng / den


def dtl_mean(c, x_l, x_u):
    num = (2 + (x_u**2 + x_u) * c**2 + (2 * x_u + 1) * c) * exp(c * x_l) - exp(c * x_u) * (
        2 + (x_l**2 + x_l) * c**2 + (2 * x_l + 1) * c
    )
    den = -c * ((-1 + (-x_u - 1) * c) * exp(c * x_l) + exp(c * x_u) * (1 + (x_l + 1) * c))
    return num / den


def gld_hazard(x, a, b, c, whittaker=_whit):
    num = -(b ** (a + 1.0)) * x ** (a - 1.0) * (c * x + a) * exp(-b * x) * (a + 1.0)
    den = (
        exp(-0.5 * b * x)
        * x ** (a / 2.0)
        * (c * b ** (a / 2.0) + b ** (a / 2.0 + 1.0))
        * whittaker(a / 2.0, a / 2.0 + 0.5, b * x)
        + x**a * b ** (a + 1.0) * (a + 1.0) * exp(-b * x)
        - (c + b) * math.gamma(a + 2.0)
    )
    return num / den


def gld_third_moment(a, b, c):
    return math.gamma(3.0 + a) * (a * b + a * c + 3.0 * c) / ((c + b) * math.gamma(a + 1.0) * b**3)


def ngld_third_moment(a, b, c):
    G = math.gamma
    return (G(3.0 + a) * G(b) * c + G(3.0 + b) * G(a)) / (c**3 * (1.0 + c) * G(a) * G(b))


# -- moment-system root enumeration ------------------------------------------
#
# Both three-parameter families are finite mixtures of two gamma components,
# and their first three raw moments determine the parameters only up to a
# small set of discrete roots.  The scans below enumerate those roots through
# a one-dimensional elimination, independently of the shipped estimator.

def gld_raw_moments(a, b, c):
    w = c / (c + b)
    return (
        (a + w) / b,
        (a + 1.0) * (a + 2.0 * w) / b**2,
        (a + 1.0) * (a + 2.0) * (a + 3.0 * w) / b**3,
    )


def gld_moment_roots(m1, m2, m3, n_grid=4000):
    """All (a, b, c) > 0 with the given first three raw moments."""
    r2 = m2 / (m1 * m1)
    r3 = m3 / (m1 * m2)
    half = np.geomspace(1e-11, 0.5, n_grid)
    ws = np.unique(np.concatenate([half, 1.0 - half]))

    def a_at(w, branch):
        qa = 1.0 - r2
        qb = 1.0 + 2.0 * w - 2.0 * r2 * w
        qc = 2.0 * w - r2 * w * w
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0 or qa == 0:
            return None
        a = (-qb + branch * math.sqrt(disc)) / (2.0 * qa)
        return a if a > 0 else None

    roots = []
    for branch in (1.0, -1.0):
        def defect(w):
            a = a_at(w, branch)
            if a is None:
                return math.nan
            return (a + 2.0) * (a + 3.0 * w) / ((a + w) * (a + 2.0 * w)) - r3

        vals = np.array([defect(w) for w in ws])
        for i in range(len(ws) - 1):
            v0, v1 = vals[i], vals[i + 1]
            if math.isfinite(v0) and math.isfinite(v1) and (v0 > 0) != (v1 > 0):
                w_root = optimize.brentq(defect, ws[i], ws[i + 1], xtol=1e-15)
                a = a_at(w_root, branch)
                if a is None:
                    continue
                b = (a + w_root) / m1
                c = b * w_root / (1.0 - w_root)
                if b > 0 and c > 0 and math.isfinite(c):
                    roots.append((a, b, c))
        # tangency dips (double roots) produce no crossing; polish local minima
        mags = np.where(np.isfinite(vals), np.abs(vals), np.inf)
        for i in range(1, len(ws) - 1):
            if mags[i] < 1e-5 and mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]:
                a = a_at(ws[i], branch)
                if a is None:
                    continue
                b = (a + ws[i]) / m1
                c = b * ws[i] / (1.0 - ws[i])
                if b > 0 and c > 0 and math.isfinite(c):
                    roots.append((a, b, c))
    return _dedupe(roots)


def ngld_raw_moments(a, b, c):
    return (
        (c * a + b) / ((1.0 + c) * c),
        (c * a * (a + 1.0) + b * (b + 1.0)) / ((1.0 + c) * c**2),
        (c * a * (a + 1.0) * (a + 2.0) + b * (b + 1.0) * (b + 2.0)) / ((1.0 + c) * c**3),
    )


def ngld_moment_roots(m1, m2, m3, n_grid=12000):
    """All (a, b, c) > 0 with the given first three raw moments."""
    cs = np.geomspace(1e-6, 1e6, n_grid)

    def ab_at(c, branch):
        t = (1.0 + c) * m1
        qa = 1.0 + c
        qb = -2.0 * c * t
        qc = c * t * t + t - (1.0 + c) * c * m2
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            return None
        a = (-qb + branch * math.sqrt(disc)) / (2.0 * qa)
        if a <= 0:
            return None
        b = c * (t - a)
        if b <= 0:
            return None
        return a, b

    roots = []
    for branch in (1.0, -1.0):
        def defect(c):
            ab = ab_at(c, branch)
            if ab is None:
                return math.nan
            a, b = ab
            return (
                c * a * (a + 1.0) * (a + 2.0)
                + b * (b + 1.0) * (b + 2.0)
                - (1.0 + c) * c**3 * m3
            )

        vals = np.array([defect(c) for c in cs])
        for i in range(len(cs) - 1):
            v0, v1 = vals[i], vals[i + 1]
            if math.isfinite(v0) and math.isfinite(v1) and (v0 > 0) != (v1 > 0):
                c_root = optimize.brentq(defect, cs[i], cs[i + 1], xtol=1e-15)
                ab = ab_at(c_root, branch)
                if ab is not None:
                    roots.append((ab[0], ab[1], c_root))
        scale = np.abs((1.0 + cs) * cs**3 * m3)
        rel = np.where(np.isfinite(vals), np.abs(vals) / scale, np.inf)
        for i in range(1, len(cs) - 1):
            if rel[i] < 1e-5 and rel[i] <= rel[i - 1] and rel[i] <= rel[i + 1]:
                ab = ab_at(cs[i], branch)
                if ab is not None:
                    roots.append((ab[0], ab[1], cs[i]))
    return _dedupe(roots)


def _dedupe(roots, rtol=1e-4):
    out = []
    for r in roots:
        if not any(
            all(abs(x - y) <= rtol * max(abs(y), 1e-12) for x, y in zip(r, s)) for s in out
        ):
            out.append(r)
    return out


def is_canonical_root(params, roots, rtol=1e-5):
    """True when ``params`` appears among ``roots`` and has the smallest c."""
    match = [r for r in roots if all(abs(x - y) <= rtol * max(abs(y), 1e-12) for x, y in zip(r, params))]
    if not match:
        return False
    c_gen = params[-1]
    return all(r[-1] >= c_gen * (1.0 - 1e-6) for r in roots)
