"""Independent numerical oracles used by the test suite.

Everything here deliberately avoids the package's own derivative engine:
the Levi-Civita oracle uses only metric pairings and plain directional
derivatives, and the Lie-derivative oracle integrates the actual flow with
a fixed-step RK4 and differentiates the pullback in the flow time.  Their
job is to catch a bug that the engine would otherwise propagate into every
check simultaneously.
"""

import numpy as np


def numeric_directional(f, p, v, h=1e-5):
    """Fourth-order central difference of closure f at p along v."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    f1 = np.asarray(f(p + h * v), dtype=float)
    f_1 = np.asarray(f(p - h * v), dtype=float)
    f2 = np.asarray(f(p + 2 * h * v), dtype=float)
    f_2 = np.asarray(f(p - 2 * h * v), dtype=float)
    return (8.0 * (f1 - f_1) - (f2 - f_2)) / (12.0 * h)


def koszul_lc_pairing(triad, u, v, w, p):
    """<nabla^{LC}_u V, w> for constant-coefficient fields via the six-term
    Koszul formula.  With constant fields all bracket terms vanish, leaving

        2 <nabla_u V, w> = u.g(V,w) + V.g(u,w) - w.g(u,V).
    """

    def g_pair(a, b):
        return lambda q: float(a @ triad.metric_any(q) @ b)

    total = (numeric_directional(g_pair(v, w), p, u)
             + numeric_directional(g_pair(u, w), p, v)
             - numeric_directional(g_pair(u, v), p, w))
    return 0.5 * float(total)


def _rk4_flow_with_jacobian(field, jac, p, t, steps=16):
    """Integrate q' = field(q), M' = jac(q) M from (p, I) for time t."""
    q = np.asarray(p, dtype=float).copy()
    M = np.eye(len(q))
    h = t / steps

    def rhs(state):
        qq, MM = state
        return np.asarray(field(qq), dtype=float), jac(qq) @ MM

    for _ in range(steps):
        k1q, k1m = rhs((q, M))
        k2q, k2m = rhs((q + 0.5 * h * k1q, M + 0.5 * h * k1m))
        k3q, k3m = rhs((q + 0.5 * h * k2q, M + 0.5 * h * k2m))
        k4q, k4m = rhs((q + h * k3q, M + h * k3m))
        q = q + (h / 6.0) * (k1q + 2 * k2q + 2 * k3q + k4q)
        M = M + (h / 6.0) * (k1m + 2 * k2m + 2 * k3m + k4m)
    return q, M


def flow_lie_derivative_endo(field, jac, endo, p, t=1e-3, steps=16):
    """d/dt at t=0 of the flow pullback of the endomorphism field.

    The pullback at flow time t is  M(t)^{-1} A(q(t)) M(t)  with M the
    flow differential, integrated by RK4;  the t-derivative is a central
    difference, so the overall error is O(t^2) + O((t/steps)^4).
    """

    def pull(tt):
        q, M = _rk4_flow_with_jacobian(field, jac, p, tt, steps)
        return np.linalg.solve(M, np.asarray(endo(q), dtype=float) @ M)

    return (pull(t) - pull(-t)) / (2.0 * t)


def fd_jacobian(field, q, h=1e-6):
    """Plain central-difference Jacobian of a vector closure (column l = d/dx_l)."""
    q = np.asarray(q, dtype=float)
    d = len(q)
    cols = []
    for l in range(d):
        e = np.zeros(d)
        e[l] = 1.0
        hi = np.asarray(field(q + h * e), dtype=float)
        lo = np.asarray(field(q - h * e), dtype=float)
        cols.append((hi - lo) / (2.0 * h))
    return np.stack(cols, axis=-1)
