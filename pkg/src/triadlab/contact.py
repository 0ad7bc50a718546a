"""Contact triads in explicit charts.

A triad bundles a contact form ``lam`` on a (2n+1)-chart with a compatible
almost complex structure ``J`` on the contact distribution xi = ker(lam).
From these it derives, at any chart point (float or dual-valued):

* the Reeb field, as the unique solution of the bordered linear system
  ``(d lam + lam lam^T) X = lam`` (equivalent to lam(X) = 1, X -| d lam = 0),
* the projection ``Pi = I - X lam^T`` onto xi along the Reeb direction,
* ``J`` extended to the whole tangent space by ``J X = 0`` (so J^2 = -Pi),
* the triad metric  g(u, v) = lam(u) lam(v) + d lam(Pi u, J Pi v),
* Christoffel symbols of g (float points only; they seed the connections).

Float-point evaluations are memoised per point; dual-valued points bypass
the caches so the same pipelines stay differentiable.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .engine import DiffEngine, as_float_array, inv, is_float_point, outer, solve

REEB_RESIDUAL_TOL = 1e-10


def _merge_sign(I, J):
    """Sign of sorting the concatenation of two disjoint sorted index tuples."""
    s = 1
    for i in I:
        for j in J:
            if j < i:
                s = -s
    return s


def wedge(f: dict, g: dict) -> dict:
    """Wedge product of forms given as {sorted index tuple: coefficient}."""
    out: dict = {}
    for I, a in f.items():
        for J, b in g.items():
            if set(I) & set(J):
                continue
            K = tuple(sorted(I + J))
            out[K] = out.get(K, 0.0) + _merge_sign(I, J) * a * b
    return out


class ContactTriad:
    """Chart data of a contact triad plus cached derived quantities."""

    def __init__(self, dim: int, lam: Callable, j_full: Callable | None,
                 domain: tuple, engine: DiffEngine | None = None,
                 label: str = ""):
        if dim < 3 or dim % 2 != 1:
            raise ValueError("triad dimension must be odd and >= 3")
        self.dim = dim
        self.n = (dim - 1) // 2
        self.lam = lam
        self._j_closure = j_full
        lo, hi = domain
        self.domain = (np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
        self.engine = engine if engine is not None else DiffEngine()
        self.label = label
        self._cache: dict = {}

    @classmethod
    def from_frame_action(cls, dim, lam, xi_frame, frame_j, domain,
                          engine=None, label=""):
        """Build a triad from J's action on a stated xi-frame.

        ``xi_frame(q)`` returns a (dim, 2n) matrix of frame columns (they are
        Pi-projected before use, so they only need to span a complement of
        the Reeb line), ``frame_j(q)`` the (2n, 2n) action matrix C with
        C^2 = -I; column a of C holds the frame coefficients of J f_a.
        """
        triad = cls(dim, lam, None, domain, engine=engine, label=label)

        def j_full(q):
            F = xi_frame(q)
            P = triad.pi_any(q)
            X = triad.reeb_any(q)
            C = frame_j(q)
            m = F.shape[1]
            B = np.empty((dim, dim), dtype=object)
            PF = np.dot(P, F)
            for a in range(m):
                B[:, a] = PF[:, a]
            B[:, m] = X
            D = np.zeros((dim, dim), dtype=object)
            D[:m, :m] = C
            JB = np.dot(B, D)
            return as_float_array(np.dot(JB, inv(B)))

        triad._j_closure = j_full
        return triad

    # -- caching ---------------------------------------------------------

    def _cached(self, tag: str, q, fn):
        if is_float_point(q):
            key = (tag, q.tobytes())
            hit = self._cache.get(key)
            if hit is None:
                hit = fn(q)
                self._cache[key] = hit
            return hit
        return fn(q)

    # -- pointwise pipelines (valid at float or dual points) -------------

    def lam_any(self, q):
        return self._cached("lam", q, self.lam)

    def dlam_any(self, q):
        return self._cached("dlam", q, lambda x: self.engine.exterior_derivative(self.lam, x))

    def _reeb_impl(self, q):
        lam = self.lam_any(q)
        A = self.dlam_any(q)
        M = A + outer(lam, lam)
        X = solve(M, lam)
        if is_float_point(q):
            r1 = abs(float(np.dot(lam, X)) - 1.0)
            r2 = float(np.max(np.abs(np.dot(A, X))))
            if max(r1, r2) > REEB_RESIDUAL_TOL:
                raise ValueError(
                    "Reeb residual %.3e exceeds %.1e at %s; contact condition "
                    "violated?" % (max(r1, r2), REEB_RESIDUAL_TOL, q))
        return X

    def reeb_any(self, q):
        return self._cached("reeb", q, self._reeb_impl)

    def pi_any(self, q):
        def impl(x):
            return np.eye(self.dim) - outer(self.reeb_any(x), self.lam_any(x))
        return self._cached("pi", q, impl)

    def j_any(self, q):
        return self._cached("j", q, self._j_closure)

    def metric_any(self, q):
        def impl(x):
            lam = self.lam_any(x)
            A = self.dlam_any(x)
            P = self.pi_any(x)
            J = self.j_any(x)
            JP = np.dot(J, P)
            return outer(lam, lam) + np.dot(P.T, np.dot(A, JP))
        return self._cached("metric", q, impl)

    # -- float-point tables ----------------------------------------------

    def metric_inv_at(self, p):
        return self._cached("metric_inv", p, lambda x: np.linalg.inv(self.metric_any(x)))

    def jac_lam_at(self, p):
        return self._cached("jac_lam", p, lambda x: self.engine.jacobian(self.lam, x))

    def jac_reeb_at(self, p):
        return self._cached("jac_reeb", p, lambda x: self.engine.jacobian(self.reeb_any, x))

    def jac_j_at(self, p):
        return self._cached("jac_j", p, lambda x: self.engine.jacobian(self.j_any, x))

    def dmetric_at(self, p):
        return self._cached("dmetric", p, lambda x: self.engine.jacobian(self.metric_any, x))

    def christoffel_at(self, p):
        """Christoffel symbols of the triad metric, Gamma[k, i, j] = Gamma^k_ij."""
        def impl(x):
            dG = self.dmetric_at(x)
            Gi = self.metric_inv_at(x)
            t1 = np.transpose(dG, (2, 0, 1))   # t1[i,j,l] = d_i g_jl
            t2 = np.transpose(dG, (0, 2, 1))   # t2[i,j,l] = d_j g_il
            s = t1 + t2 - dG
            return 0.5 * np.einsum('kl,ijl->kij', Gi, s)
        return self._cached("christoffel", p, impl)

    def lie_reeb_j_at(self, p):
        """(L_X J) for X the Reeb field, from cached coordinate Jacobians."""
        def impl(x):
            X = self.reeb_any(x)
            J = self.j_any(x)
            dX = self.jac_reeb_at(x)
            dJ_X = np.einsum('ijl,l->ij', self.jac_j_at(x), X)
            return dJ_X - np.dot(dX, J) + np.dot(J, dX)
        return self._cached("lie_reeb_j", p, impl)

    # -- geometric operations --------------------------------------------

    def project_xi(self, v, p):
        """v minus its Reeb component: Pi v = v - lam(v) X."""
        return np.dot(self.pi_any(p), v)

    def contact_coefficient(self, p) -> float:
        """Signed coefficient of lam ^ (d lam)^n against the chart volume form.

        Nonzero iff the contact condition holds at p; the sign reports the
        induced orientation relative to the chart.
        """
        lam = self.lam_any(p)
        A = self.dlam_any(p)
        d = self.dim
        two = {}
        for i in range(d):
            for j in range(i + 1, d):
                if A[i, j] != 0.0:
                    two[(i, j)] = A[i, j]
        power = two
        for _ in range(self.n - 1):
            power = wedge(power, two)
        one = {(i,): lam[i] for i in range(d) if lam[i] != 0.0}
        top = wedge(one, power)
        return float(top.get(tuple(range(d)), 0.0))

    def metric_value(self, u, v, p):
        return float(np.dot(u, np.dot(self.metric_any(p), v)))

    def j_squared_residual(self, p) -> float:
        J = self.j_any(p)
        P = self.pi_any(p)
        r1 = np.max(np.abs(np.dot(J, J) + P))
        r2 = np.max(np.abs(np.dot(J, self.reeb_any(p))))
        return float(max(r1, r2))

    def compatibility(self, p, seed: int = 0, samples: int = 32):
        """(max |d lam(JY, JZ) - d lam(Y, Z)|, min d lam(Y, JY) over unit Y).

        Y, Z are Gaussian chart vectors pushed through Pi; Y is normalised by
        sqrt(|g(Y, Y)|), so a compatible J scores exactly +1 in the second
        slot and J -> -J scores -1.
        """
        rng = np.random.default_rng([seed, 2 * self.dim + 1])
        A = self.dlam_any(p)
        P = self.pi_any(p)
        J = self.j_any(p)
        G = self.metric_any(p)
        ys = []
        for _ in range(samples):
            w = np.dot(P, rng.standard_normal(self.dim))
            nrm = abs(float(np.dot(w, np.dot(G, w))))
            if nrm < 1e-12:
                continue
            ys.append(w / np.sqrt(nrm))
        inv_defect = 0.0
        positivity = np.inf
        for k, y in enumerate(ys):
            jy = np.dot(J, y)
            positivity = min(positivity, float(np.dot(y, np.dot(A, jy))))
            z = ys[(k + 1) % len(ys)]
            lhs = float(np.dot(jy, np.dot(A, np.dot(J, z))))
            rhs = float(np.dot(y, np.dot(A, z)))
            inv_defect = max(inv_defect, abs(lhs - rhs))
        return inv_defect, positivity

    def scaled(self, a: float) -> "ContactTriad":
        """The triad (a * lam, J) on the same chart; J is unchanged on xi."""
        if a <= 0:
            raise ValueError("scale factor must be positive")
        base_lam = self.lam
        scaled = ContactTriad(self.dim, lambda q: a * base_lam(q), self._j_closure,
                              self.domain, engine=self.engine,
                              label=self.label + "*scaled(%g)" % a)
        return scaled

    def sample_points(self, count: int, seed: int) -> np.ndarray:
        lo, hi = self.domain
        rng = np.random.default_rng(seed)
        return lo + (hi - lo) * rng.random((count, self.dim))


class TriadMetric:
    """Evaluator view of the triad metric g = lam (x) lam + d lam(Pi ., J Pi .)."""

    def __init__(self, triad: ContactTriad):
        self.triad = triad

    def value(self, u, v, p):
        return self.triad.metric_value(u, v, p)

    def matrix(self, p):
        return self.triad.metric_any(p)

    def inverse(self, p):
        return self.triad.metric_inv_at(p)


def triad_metric(triad: ContactTriad) -> TriadMetric:
    return TriadMetric(triad)
