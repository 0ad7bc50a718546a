"""Affine connections attached to a contact triad.

The Levi-Civita connection of the triad metric is realised through its
Christoffel table.  The canonical family is then built compositionally,

    nabla^c  =  nabla^LC  +  B1  +  B2(c),

with the two correction tensors evaluated from their closed forms:

    B1(Z1, Z2)   = -1/2 J ((nabla^LC_{Pi Z1} J) Pi Z2)
    B2(c)(Z1,Z2) = (1+c)/2 (-g(Z2,X) J Z1 - g(Z1,X) J Z2 + g(J Z1, Z2) X)

where X is the Reeb field.  The family is never given its own Christoffel
table; every evaluation goes through the Levi-Civita data plus the tensors.

Connections evaluate as ``conn.apply(Xf, Yf, p)`` on vector-field closures;
``gamma_apply(p, u, v)`` exposes the bilinear part (the value on fields with
vanishing coordinate Jacobian at p), which is what tensorial quantities such
as torsion contract against.
"""

from __future__ import annotations

import numpy as np

from .contact import ContactTriad, TriadMetric
from .engine import is_float_point, solve


class AffineConnection:
    label = "affine"

    def apply(self, Xf, Yf, p):
        """nabla_X Y at p for vector-field closures X, Y."""
        return self.apply_vec(Xf(p), Yf, p)

    def apply_vec(self, u, Yf, p):
        raise NotImplementedError


class LocalConnection(AffineConnection):
    """Connection given by a bilinear pointwise part plus the flat derivative."""

    def __init__(self, triad: ContactTriad):
        self.triad = triad
        self.engine = triad.engine
        self._gamma_cache: dict = {}

    def apply_vec(self, u, Yf, p):
        dY_u = self.engine.deriv(Yf, p, u)
        return dY_u + self.gamma_apply(p, u, Yf(p))

    def gamma_apply(self, p, u, v):
        raise NotImplementedError

    def gamma_tensor(self, p):
        """Full bilinear table gamma[k, i, j] = gamma(e_i, e_j)^k at a float point."""
        key = p.tobytes()
        hit = self._gamma_cache.get(key)
        if hit is None:
            d = self.triad.dim
            eye = np.eye(d)
            hit = np.empty((d, d, d))
            for i in range(d):
                for j in range(d):
                    hit[:, i, j] = self.gamma_apply(p, eye[i], eye[j])
            self._gamma_cache[key] = hit
        return hit


class LeviCivitaConnection(LocalConnection):
    label = "levi-civita"

    def gamma_apply(self, p, u, v):
        G = self.triad.christoffel_at(p)
        return np.einsum('kij,i,j->k', G, u, v)

    def gamma_tensor(self, p):
        return self.triad.christoffel_at(p)


def levi_civita(metric: TriadMetric) -> LeviCivitaConnection:
    return LeviCivitaConnection(metric.triad)


def _lc_nabla_j(triad: ContactTriad, u, p):
    """(nabla^LC_u J) as a matrix at a float point, from cached tables."""
    G = triad.christoffel_at(p)
    J = triad.j_any(p)
    K = np.einsum('kij,i->kj', G, u)
    dJ_u = np.einsum('abl,l->ab', triad.jac_j_at(p), u)
    return dJ_u + np.dot(K, J) - np.dot(J, K)


def tensor_P(triad: ContactTriad, u, w, p):
    """The obstruction tensor 4P(X,Y) = (n_JY J)X + J((n_Y J)X) + 2J((n_X J)Y)."""
    J = triad.j_any(p)
    n_jw = _lc_nabla_j(triad, np.dot(J, w), p)
    n_w = _lc_nabla_j(triad, w, p)
    n_u = _lc_nabla_j(triad, u, p)
    four = np.dot(n_jw, u) + np.dot(J, np.dot(n_w, u)) + 2.0 * np.dot(J, np.dot(n_u, w))
    return 0.25 * four


def tensor_B1(triad: ContactTriad, z1, z2, p):
    """First correction tensor -1/2 J((nabla^LC_{Pi z1} J) Pi z2)."""
    P = triad.pi_any(p)
    J = triad.j_any(p)
    nj = _lc_nabla_j(triad, np.dot(P, z1), p)
    return -0.5 * np.dot(J, np.dot(nj, np.dot(P, z2)))


def tensor_B2(triad: ContactTriad, c: float, z1, z2, p):
    """Second correction tensor, with the (1+c)/2 weight of the family."""
    G = triad.metric_any(p)
    X = triad.reeb_any(p)
    J = triad.j_any(p)
    g_z2_x = np.dot(z2, np.dot(G, X))
    g_z1_x = np.dot(z1, np.dot(G, X))
    g_jz1_z2 = np.dot(np.dot(J, z1), np.dot(G, z2))
    return 0.5 * (1.0 + c) * (-g_z2_x * np.dot(J, z1)
                              - g_z1_x * np.dot(J, z2)
                              + g_jz1_z2 * X)


class TriadConnection(LocalConnection):
    """Member of the canonical family, assembled as LC + B1 + B2(c).

    ``b1_sign`` exists only for fault injection in the negative controls;
    every real construction uses the default +1.
    """

    def __init__(self, triad: ContactTriad, c: float, b1_sign: float = 1.0):
        super().__init__(triad)
        self.c = float(c)
        self.b1_sign = float(b1_sign)
        self.label = "triad(c=%g)" % c
        self.lc = LeviCivitaConnection(triad)

    def gamma_apply(self, p, u, v):
        out = self.lc.gamma_apply(p, u, v)
        out = out + self.b1_sign * tensor_B1(self.triad, u, v, p)
        out = out + tensor_B2(self.triad, self.c, u, v, p)
        return out


def triad_connection(triad: ContactTriad, c: float) -> TriadConnection:
    return TriadConnection(triad, c)


def tmp1_connection(triad: ContactTriad) -> TriadConnection:
    """The intermediate connection LC + B1, i.e. the family member at c = -1."""
    return triad_connection(triad, -1.0)


# -- tensors built from a connection --------------------------------------


def torsion(conn: AffineConnection, Xf, Yf, p):
    """T(X, Y) = nabla_X Y - nabla_Y X - [X, Y] on field closures."""
    engine = conn.engine
    return conn.apply(Xf, Yf, p) - conn.apply(Yf, Xf, p) - engine.lie_bracket(Xf, Yf, p)


def torsion_tensor(conn: LocalConnection, p, u, v):
    """Torsion contracted on raw vectors, using constant-coefficient extensions.

    T is a tensor, so the value is extension independent (asserted in tests);
    with constant extensions the bracket and flat-derivative terms vanish and
    only the bilinear part survives.
    """
    return conn.gamma_apply(p, u, v) - conn.gamma_apply(p, v, u)


def nijenhuis(triad: ContactTriad, Xf, Yf, p):
    """N(X,Y) = [JX,JY] - [X,Y] - J[X,JY] - J[JX,Y] (no factor-2 convention)."""
    engine = triad.engine

    def JX(q):
        return np.dot(triad.j_any(q), Xf(q))

    def JY(q):
        return np.dot(triad.j_any(q), Yf(q))

    J = triad.j_any(p)
    t1 = engine.lie_bracket(JX, JY, p)
    t2 = engine.lie_bracket(Xf, Yf, p)
    t3 = np.dot(J, engine.lie_bracket(Xf, JY, p))
    t4 = np.dot(J, engine.lie_bracket(JX, Yf, p))
    return t1 - t2 - t3 - t4


def _k_matrix(conn: LocalConnection, p, u):
    """K[:, j] = gamma(u, e_j); the column table of the bilinear part."""
    if is_float_point(p):
        return np.einsum('kij,i->kj', conn.gamma_tensor(p), u)
    raise ValueError("connection tables require a float chart point")


def covariant_derivative_endo(conn: LocalConnection, A, Xf, p):
    """(nabla_X A) as a matrix: nabla_X (A Y) - A nabla_X Y for frozen Y."""
    u = Xf(p)
    dA_u = conn.engine.deriv(A, p, u)
    K = _k_matrix(conn, p, u)
    Ap = A(p)
    return dA_u + np.dot(K, Ap) - np.dot(Ap, K)


def covariant_derivative_form(conn: LocalConnection, alpha, Xf, p):
    """(nabla_X alpha) as a covector: X[alpha(Y)] - alpha(nabla_X Y)."""
    u = Xf(p)
    da_u = conn.engine.deriv(alpha, p, u)
    K = _k_matrix(conn, p, u)
    return da_u - np.dot(K.T, alpha(p))


def covariant_derivative_two_form(conn: LocalConnection, beta, Xf, p):
    """(nabla_X beta) as an antisymmetric matrix, beta given as a matrix closure."""
    u = Xf(p)
    dB_u = conn.engine.deriv(beta, p, u)
    K = _k_matrix(conn, p, u)
    B = beta(p)
    return dB_u - np.dot(K.T, B) - np.dot(B, K)


class PullbackConnection(AffineConnection):
    """(phi^* nabla)_X Y = dphi^{-1} ( nabla_{phi_* X} (phi_* Y) ) o phi.

    Needs the map's closed-form inverse to realise pushforward fields.
    """

    def __init__(self, base: AffineConnection, cmap):
        self.base = base
        self.cmap = cmap
        self.engine = base.engine
        self.label = "pullback(%s)" % getattr(base, "label", "conn")

    def apply_vec(self, u, Yf, p):
        cm = self.cmap
        q = cm.forward(p)
        dphi_p = cm.differential(p)
        u_push = np.dot(dphi_p, u)

        def y_push(qq):
            pp = cm.inverse(qq)
            return np.dot(cm.differential(pp), Yf(pp))

        w = self.base.apply_vec(u_push, y_push, q)
        return solve(np.asarray(dphi_p, dtype=float), w)
