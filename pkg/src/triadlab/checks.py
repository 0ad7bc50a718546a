"""Residual battery for the connection family.

Every check evaluates one identity the family is supposed to satisfy and
reports the worst residual it saw, together with the tolerance it is held
to.  Identities that are linear in their free slots are evaluated in matrix
form (all directions at once); the genuinely multilinear ones are sampled
with seeded Gaussian draws.

The registry :data:`CHECK_INFO` maps every check name to a one-line
statement of the identity, which is what the CLI's ``describe-check``
prints.  Fault injections (``fault_*``) deliberately break one ingredient
and must push at least one residual far above tolerance; they are the
suite's own sensitivity controls.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .connections import (
    LeviCivitaConnection,
    PullbackConnection,
    TriadConnection,
    _lc_nabla_j,
    covariant_derivative_form,
    covariant_derivative_two_form,
    covariant_derivative_endo,
    nijenhuis,
    tensor_P,
    torsion_tensor,
    triad_connection,
)
from .contact import ContactTriad
from .engine import solve

TOL_ALGEBRAIC = 1e-8
TOL_DERIVATIVE = 1e-7
TOL_EXACT = 1e-12

STRICTNESS_TOL = 1e-9


@dataclass
class CheckResult:
    """Outcome of one named residual check at one chart point."""

    name: str
    anchor: str
    residual: float
    tolerance: float
    passed: bool
    point: tuple
    witness: tuple | None = None


CHECK_INFO = {
    # axiom battery
    "axiom-hermitian": "projected covariant derivative commutes with J on the "
                       "distribution and differentiates the induced metric",
    "axiom-xi-torsion": "torsion vanishes on conjugate pairs (J Y, Y) of "
                        "distribution vectors after projection",
    "axiom-reeb-torsion": "torsion with the Reeb field in one slot vanishes",
    "axiom-reeb-invariance": "Reeb field is parallel along itself and its "
                             "covariant derivative stays inside the distribution",
    "axiom-cr-coupling": "nabla_{JY} X + J nabla_Y X = c Y, the parameter "
                         "coupling of the family",
    "axiom-reeb-metric-dual": "covariant derivative of the Reeb field is "
                              "metric-dual to that of distribution sections",
    # holomorphicity of the contact form
    "cr-form-reeb": "the contact form is parallel in the Reeb direction",
    "cr-form-xi": "nabla_Y lam + J nabla_{JY} lam = 0 on the distribution "
                  "(holomorphicity in the CR sense)",
    # scaling / naturality
    "scaling-transfer": "the connection of (a lam, J) at parameter 1 matches "
                        "the connection of (lam, J) at parameter a up to the "
                        "closed-form Reeb-component offset",
    "naturality-pullback": "pulling the connection back through a strict "
                           "contact transformation gives the connection of "
                           "the pulled-back triad",
    # supporting identity suite (Levi-Civita and intermediate connection)
    "two-form-j-invariance": "d lam(JY, JZ) = d lam(Y, Z)",
    "reeb-lie-j-symmetry": "the Lie transport of J along the Reeb field is "
                           "g-symmetric on the distribution",
    "reeb-geodesic-foliation": "Reeb orbits are Levi-Civita geodesics and "
                               "nabla^LC X stays in the distribution",
    "lc-j-derivative-pairing": "2<(nabla^LC_X J)Y, Z> = <N(Y,Z), JX> "
                               "- <JX,JY> lam(Z) + <JX,JZ> lam(Y)",
    "lc-j-derivative-reeb-slots": "the Reeb-slot specialisations of the "
                                  "pairing between nabla^LC J and the "
                                  "Nijenhuis tensor",
    "nijenhuis-reeb-slots": "N(X, Z) = -J((L_X J)Z) and N(Z, X) = +J((L_X J)Z) "
                            "for the Reeb field X",
    "nijenhuis-j-shuffle": "J N(Y, JZ) = Pi N(Y, Z) and "
                           "Pi N(Y, JZ) + Pi N(Z, JY) = 0",
    "lc-j-antilinear-cancellation": "Pi (nabla^LC_{JY} J)X + J (nabla^LC_Y J)X "
                                    "= 0 on the distribution",
    "lc-reeb-parallel-j": "nabla^LC_X J = 0 for the Reeb field X",
    "lc-reeb-covariant-slope": "nabla^LC_Y X = 1/2 JY + 1/2 (L_X J)JY on the "
                               "distribution",
    "semi-connection-j-linearity": "the intermediate connection (parameter -1) "
                                   "is J-linear after projection",
    "p-tensor-metric-skew": "<P(X,Y), Z> + <Y, P(X,Z)> = 0 on the distribution",
    "semi-connection-metric": "the intermediate connection differentiates the "
                              "metric on distribution sections",
    "semi-connection-reeb-metric-dual": "Reeb/metric duality for the "
                                        "intermediate connection",
    "semi-connection-torsion-quarter-n": "the intermediate connection has "
                                         "torsion 1/4 Pi N on the distribution "
                                         "and none against the Reeb field",
    "reeb-covariant-family": "nabla_Y X = -1/2 c JY + 1/2 (L_X J)JY across "
                             "the parameter family",
    "torsion-split-values": "lam(T(Y,Z)) = (1+c) d lam(Y,Z) and "
                            "Pi T = 1/4 ((L_{JY}J)Z + (L_Y J)JZ)",
    "torsion-type-symmetries": "projected torsion satisfies T(JY,Z) = T(Y,JZ) "
                               "and J T(JY,Z) = T(Y,Z)",
    "p-antisymmetrized-bracket": "-P(Y,Z) + P(Z,Y) equals the quarter bracket "
                                 "combination of J-shuffled commutators",
    "reeb-parallel-two-form": "d lam is parallel in the Reeb direction",
    # frame-level names (computed in the frames module, registered here so
    # the CLI can describe them)
    "frame-orthonormality": "moving frames are g-orthonormal with dual coframe",
    "frame-coefficient-rederivation": "frame coefficients recomputed from the "
                                      "defining axioms match the directly "
                                      "evaluated connection",
    "structure-equation": "d theta^i + Omega^i_k ^ theta^k reproduces the "
                          "torsion two-forms",
    "frame-skew-hermitian": "the distribution block of the connection matrix "
                            "is skew-Hermitian",
    # fault injections
    "fault-flipped-correction": "flipping the sign of the first correction "
                                "tensor must break the quarter-Nijenhuis "
                                "torsion value",
    "fault-wrong-family-parameter": "checking parameter c against the axiom "
                                    "for c' leaves a residual |c - c'| per "
                                    "unit vector",
    "fault-levi-civita-not-complex-linear": "the Levi-Civita connection fails "
                                            "J-linearity whenever J is not "
                                            "parallel",
    "fault-scale-mismatch": "comparing the scaled connection against the "
                            "unscaled parameter-1 connection must disagree",
    "control-structure-equation-dropped-torsion": "dropping the torsion forms "
                                                  "from the structure equation "
                                                  "exposes the d lam component",
}


def make_result(name: str, residual, tolerance: float, p,
                witness=None) -> CheckResult:
    residual = float(residual)
    return CheckResult(name=name, anchor=CHECK_INFO[name], residual=residual,
                       tolerance=float(tolerance),
                       passed=bool(residual <= tolerance),
                       point=tuple(float(x) for x in np.asarray(p).ravel()),
                       witness=witness)


# -- seeded draws ----------------------------------------------------------


def field_rng(seed: int, *tags) -> np.random.Generator:
    """Deterministic generator keyed by a seed plus string-ish tags."""
    words = [int(seed) & 0xFFFFFFFF]
    for t in tags:
        words.append(zlib.crc32(str(t).encode()) & 0xFFFFFFFF)
    return np.random.default_rng(words)


def tq_vector(dim: int, rng) -> np.ndarray:
    w = rng.standard_normal(dim)
    return w / np.linalg.norm(w)


def xi_vector(triad: ContactTriad, p, rng) -> np.ndarray:
    """Unit (triad-metric) vector in the contact distribution at p."""
    while True:
        w = np.dot(triad.pi_any(p), rng.standard_normal(triad.dim))
        n2 = float(np.dot(w, np.dot(triad.metric_any(p), w)))
        if n2 > 1e-10:
            return w / np.sqrt(n2)


def xi_section(triad: ContactTriad, w) -> Callable:
    """Smooth distribution section q -> Pi(q) w for a frozen chart vector."""
    w = np.asarray(w, dtype=float)
    return lambda q: np.dot(triad.pi_any(q), w)


def j_image(triad: ContactTriad, Yf: Callable) -> Callable:
    return lambda q: np.dot(triad.j_any(q), Yf(q))


def const_field(w) -> Callable:
    w = np.asarray(w, dtype=float)
    return lambda q: w


# -- small shared evaluators ----------------------------------------------


def _reeb_cov_matrix(conn, p) -> np.ndarray:
    """M with M v = nabla_v X for the Reeb field X, as a chart matrix."""
    t = conn.triad
    return t.jac_reeb_at(p) + np.einsum('kil,l->ki', conn.gamma_tensor(p),
                                        t.reeb_any(p))


def _metric_pair_deriv(triad: ContactTriad, Yf, Zf, p, u):
    """Directional derivative of q -> g_q(Y(q), Z(q)) along u."""
    def gyz(q):
        return np.dot(Yf(q), np.dot(triad.metric_any(q), Zf(q)))
    return triad.engine.deriv(gyz, p, u)


# -- axiom battery ---------------------------------------------------------


def check_axioms(triad: ContactTriad, c: float, p, seed: int = 0,
                 samples: int = 3, conn=None) -> list:
    """One CheckResult per defining axiom of the family member at c.

    ``conn`` may substitute a different connection (the Levi-Civita control
    uses this); the residuals then report how that connection fails.
    """
    p = np.asarray(p, dtype=float)
    if conn is None:
        conn = triad_connection(triad, c)
    rng = field_rng(seed, "axioms", triad.label, c)
    d = triad.dim
    G = triad.metric_any(p)
    J = triad.j_any(p)
    P = triad.pi_any(p)
    lam = triad.lam_any(p)
    X = triad.reeb_any(p)
    reeb = triad.reeb_any

    r_herm = r_xtor = r_rtor = r_inv = r_cr = r_dual = 0.0
    for _ in range(samples):
        u = tq_vector(d, rng)
        wy = rng.standard_normal(d)
        wz = rng.standard_normal(d)
        Yf = xi_section(triad, wy)
        Zf = xi_section(triad, wz)
        y, z = Yf(p), Zf(p)

        # (1) J-linearity and metric property of the projected connection
        jlin = (np.dot(P, conn.apply_vec(u, j_image(triad, Yf), p))
                - np.dot(J, np.dot(P, conn.apply_vec(u, Yf, p))))
        dg = _metric_pair_deriv(triad, Yf, Zf, p, u)
        met = (dg - np.dot(np.dot(P, conn.apply_vec(u, Yf, p)), np.dot(G, z))
               - np.dot(y, np.dot(G, np.dot(P, conn.apply_vec(u, Zf, p)))))
        r_herm = max(r_herm, float(np.max(np.abs(jlin))), abs(float(met)))

        # (2) projected torsion on conjugate pairs
        v = xi_vector(triad, p, rng)
        t2 = np.dot(P, torsion_tensor(conn, p, np.dot(J, v), v))
        r_xtor = max(r_xtor, float(np.max(np.abs(t2))))

        # (3) torsion against the Reeb field
        t3 = torsion_tensor(conn, p, X, tq_vector(d, rng))
        r_rtor = max(r_rtor, float(np.max(np.abs(t3))))

        # (4) nabla_X X = 0 and lam(nabla_Y X) = 0
        r_inv = max(r_inv, abs(float(np.dot(lam, conn.apply_vec(v, reeb, p)))))

        # (5;c) the parameter coupling
        cr = (conn.apply_vec(np.dot(J, v), reeb, p)
              + np.dot(J, conn.apply_vec(v, reeb, p)) - c * v)
        r_cr = max(r_cr, float(np.max(np.abs(cr))))

        # (6) metric duality against the Reeb field
        dual = (np.dot(conn.apply_vec(v, reeb, p), np.dot(G, Zf(p)))
                + np.dot(X, np.dot(G, conn.apply_vec(v, Zf, p))))
        r_dual = max(r_dual, abs(float(dual)))

    r_inv = max(r_inv, float(np.max(np.abs(conn.apply_vec(X, reeb, p)))))

    tol = TOL_ALGEBRAIC
    return [
        make_result("axiom-hermitian", r_herm, tol, p),
        make_result("axiom-xi-torsion", r_xtor, tol, p),
        make_result("axiom-reeb-torsion", r_rtor, tol, p),
        make_result("axiom-reeb-invariance", r_inv, tol, p),
        make_result("axiom-cr-coupling", r_cr, tol, p),
        make_result("axiom-reeb-metric-dual", r_dual, tol, p),
    ]


def check_cr_form(triad: ContactTriad, c: float, p, seed: int = 0,
                  samples: int = 3) -> tuple:
    """Both holomorphicity residuals of the contact form under nabla^c."""
    p = np.asarray(p, dtype=float)
    conn = triad_connection(triad, c)
    rng = field_rng(seed, "cr-form", triad.label, c)
    J = triad.j_any(p)

    nx = covariant_derivative_form(conn, triad.lam, triad.reeb_any, p)
    r_reeb = float(np.max(np.abs(nx)))

    r_xi = 0.0
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(triad.dim))
        a1 = covariant_derivative_form(conn, triad.lam, Yf, p)
        a2 = covariant_derivative_form(conn, triad.lam, j_image(triad, Yf), p)
        r_xi = max(r_xi, float(np.max(np.abs(a1 + np.dot(J.T, a2)))))

    return (make_result("cr-form-reeb", r_reeb, TOL_ALGEBRAIC, p),
            make_result("cr-form-xi", r_xi, TOL_ALGEBRAIC, p))


def check_scaling(triad: ContactTriad, a: float, p, seed: int = 0,
                  samples: int = 4) -> CheckResult:
    """Verify the exact transfer law between nabla^{a lam; 1} and nabla^{lam; a}.

    Rescaling the contact form by a > 0 turns the family parameter 1 into a:
    the two connections coincide on every slot involving the Reeb field and,
    after projection to the contact plane, on plane-valued slots as well.
    They are *not* equal as full connections: for plane vectors Y, Z the
    Reeb components differ by the computable offset

        nabla^{a lam; 1}_Y Z - nabla^{lam; a}_Y Z
            = -(1/a - 1) <Z, nabla^{lam; a}_Y X> X,

    a consequence of the Reeb-metric duality axiom being weighted by the
    form scale (the torsion values (1+c) d(lam) on the two sides already
    rule out full equality).  The residual reported here is the deviation
    of the measured difference table from that closed-form offset, plus
    the requirement that both Reeb slots agree exactly; it pins the whole
    relationship rather than a projection of it.
    """
    p = np.asarray(p, dtype=float)
    assert a > 0
    conn_s = triad_connection(triad.scaled(a), 1.0)
    conn_b = triad_connection(triad, a)
    rng = field_rng(seed, "scaling", triad.label, a)
    X = triad.reeb_any(p)
    Pi = triad.pi_any(p)
    G = triad.metric_any(p)
    reeb_cov = _reeb_cov_matrix(conn_b, p)
    worst = 0.0
    for _ in range(samples):
        u = tq_vector(triad.dim, rng)
        v = tq_vector(triad.dim, rng)
        diff = conn_s.gamma_apply(p, u, v) - conn_b.gamma_apply(p, u, v)
        offset = -(1.0 / a - 1.0) * float(Pi @ v @ G @ (reeb_cov @ (Pi @ u))) * X
        worst = max(worst, float(np.max(np.abs(diff - offset))))
    w = tq_vector(triad.dim, rng)
    worst = max(worst, float(np.max(np.abs(
        conn_s.gamma_apply(p, X, w) - conn_b.gamma_apply(p, X, w)))))
    worst = max(worst, float(np.max(np.abs(
        conn_s.gamma_apply(p, w, X) - conn_b.gamma_apply(p, w, X)))))
    return make_result("scaling-transfer", worst, TOL_DERIVATIVE, p)


# -- naturality ------------------------------------------------------------


@dataclass(frozen=True)
class StrictContactMap:
    """A chart diffeomorphism preserving the contact form, in closed form.

    ``differential(q)`` must stay evaluable when q carries derivative
    payloads, since pulled-back structures get differentiated through it.
    """

    label: str
    forward: Callable
    inverse: Callable
    differential: Callable

    def strictness_residual(self, triad: ContactTriad, pts) -> float:
        worst = 0.0
        for q in pts:
            q = np.asarray(q, dtype=float)
            dphi = np.asarray(self.differential(q), dtype=float)
            pulled = np.dot(dphi.T, triad.lam_any(self.forward(q)))
            worst = max(worst, float(np.max(np.abs(pulled - triad.lam_any(q)))))
        return worst

    def roundtrip_residual(self, pts) -> float:
        worst = 0.0
        for q in pts:
            q = np.asarray(q, dtype=float)
            worst = max(worst, float(np.max(np.abs(self.inverse(self.forward(q)) - q))))
        return worst


def pullback_triad(triad: ContactTriad, cmap: StrictContactMap) -> ContactTriad:
    """The triad (lam, phi^*J) on the same chart, for strict phi."""
    def j_pull(q):
        dphi = cmap.differential(q)
        Jq = triad.j_any(cmap.forward(q))
        return solve(np.asarray(dphi), np.dot(Jq, dphi))

    return ContactTriad(triad.dim, triad.lam, j_pull, triad.domain,
                        engine=triad.engine,
                        label=triad.label + "<-" + cmap.label)


def check_naturality(triad: ContactTriad, cmap: StrictContactMap, c: float,
                     p, seed: int = 0, samples: int = 3) -> CheckResult:
    p = np.asarray(p, dtype=float)
    strict = cmap.strictness_residual(triad, [p])
    if strict > STRICTNESS_TOL:
        raise ValueError(
            "map %s does not preserve the contact form (residual %.3e) "
            "at %s" % (cmap.label, strict, p))

    pulled = pullback_triad(triad, cmap)
    direct = triad_connection(pulled, c)
    through = PullbackConnection(triad_connection(triad, c), cmap)
    rng = field_rng(seed, "naturality", triad.label, cmap.label, c)

    worst = 0.0
    fields = [const_field(tq_vector(triad.dim, rng)) for _ in range(samples)]
    fields.append(xi_section(pulled, rng.standard_normal(triad.dim)))
    for Yf in fields:
        u = tq_vector(triad.dim, rng)
        diff = through.apply_vec(u, Yf, p) - direct.apply_vec(u, Yf, p)
        worst = max(worst, float(np.max(np.abs(diff))))
    return make_result("naturality-pullback", worst, TOL_DERIVATIVE, p)


# -- the supporting identity suite ----------------------------------------


def check_lemma_suite(triad: ContactTriad, p, seed: int = 0, samples: int = 3,
                      c_values=(-1.0, 0.0, 1.0)) -> list:
    """Every supporting identity behind the family, one CheckResult each."""
    p = np.asarray(p, dtype=float)
    rng = field_rng(seed, "lemma-suite", triad.label)
    d = triad.dim
    engine = triad.engine
    G = triad.metric_any(p)
    A = triad.dlam_any(p)
    J = triad.j_any(p)
    P = triad.pi_any(p)
    lam = triad.lam_any(p)
    X = triad.reeb_any(p)
    L = triad.lie_reeb_j_at(p)
    reeb = triad.reeb_any
    lc = LeviCivitaConnection(triad)
    tmp = triad_connection(triad, -1.0)
    conn0 = triad_connection(triad, 0.0)

    def ip(a, b):
        return float(np.dot(a, np.dot(G, b)))

    out = []

    # d lam(JY, JZ) = d lam(Y, Z): all vectors at once.
    m = np.dot(J.T, np.dot(A, J)) - np.dot(P.T, np.dot(A, P))
    out.append(make_result("two-form-j-invariance",
                           np.max(np.abs(m)), TOL_ALGEBRAIC, p))

    # g-symmetry of L = L_X J on the distribution.
    gl = np.dot(G, L)
    m = np.dot(P.T, np.dot(gl - gl.T, P))
    out.append(make_result("reeb-lie-j-symmetry",
                           np.max(np.abs(m)), TOL_ALGEBRAIC, p))

    # Reeb orbits are geodesics; nabla^LC X is distribution-valued.
    mlc = _reeb_cov_matrix(lc, p)
    r = max(float(np.max(np.abs(np.dot(mlc, X)))),
            float(np.max(np.abs(np.dot(lam, mlc)))))
    out.append(make_result("reeb-geodesic-foliation", r, TOL_ALGEBRAIC, p))

    # Pairing of nabla^LC J with the Nijenhuis tensor, full tangent slots.
    r = 0.0
    for _ in range(samples):
        x = tq_vector(d, rng)
        y = tq_vector(d, rng)
        z = tq_vector(d, rng)
        nj = np.dot(_lc_nabla_j(triad, x, p), y)
        nyz = nijenhuis(triad, const_field(y), const_field(z), p)
        jx = np.dot(J, x)
        lhs = 2.0 * ip(nj, z)
        rhs = (ip(nyz, jx) - ip(jx, np.dot(J, y)) * float(np.dot(lam, z))
               + ip(jx, np.dot(J, z)) * float(np.dot(lam, y)))
        r = max(r, abs(lhs - rhs))
    out.append(make_result("lc-j-derivative-pairing", r, TOL_ALGEBRAIC, p))

    # Reeb-slot specialisations of the same pairing.
    r = 0.0
    for _ in range(samples):
        y = xi_vector(triad, p, rng)
        z = xi_vector(triad, p, rng)
        ny = _lc_nabla_j(triad, y, p)
        lz = np.dot(L, z)
        r = max(r, abs(2.0 * ip(np.dot(ny, X), z) + ip(lz, y) - ip(y, z)))
        r = max(r, abs(2.0 * ip(np.dot(ny, z), X) - ip(lz, y) + ip(y, z)))
        x = xi_vector(triad, p, rng)
        nx = np.dot(_lc_nabla_j(triad, x, p), y)
        nyz = nijenhuis(triad, xi_section(triad, y), xi_section(triad, z), p)
        r = max(r, abs(2.0 * ip(nx, z) - ip(nyz, np.dot(J, x))))
    out.append(make_result("lc-j-derivative-reeb-slots", r, TOL_ALGEBRAIC, p))

    # Nijenhuis tensor with the Reeb field in a slot.
    r = 0.0
    for _ in range(samples):
        wz = rng.standard_normal(d)
        Zf = xi_section(triad, wz)
        z = Zf(p)
        jlz = np.dot(J, np.dot(L, z))
        r = max(r, float(np.max(np.abs(nijenhuis(triad, reeb, Zf, p) + jlz))))
        r = max(r, float(np.max(np.abs(nijenhuis(triad, Zf, reeb, p) - jlz))))
    out.append(make_result("nijenhuis-reeb-slots", r, TOL_ALGEBRAIC, p))

    # J-shuffles of the Nijenhuis tensor on the distribution.
    r = 0.0
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(d))
        Zf = xi_section(triad, rng.standard_normal(d))
        n_y_jz = nijenhuis(triad, Yf, j_image(triad, Zf), p)
        n_y_z = nijenhuis(triad, Yf, Zf, p)
        n_z_jy = nijenhuis(triad, Zf, j_image(triad, Yf), p)
        r = max(r, float(np.max(np.abs(np.dot(J, n_y_jz) - np.dot(P, n_y_z)))))
        r = max(r, float(np.max(np.abs(np.dot(P, n_y_jz) + np.dot(P, n_z_jy)))))
    out.append(make_result("nijenhuis-j-shuffle", r, TOL_ALGEBRAIC, p))

    # Antilinear cancellation of nabla^LC J.
    r = 0.0
    for _ in range(samples):
        y = xi_vector(triad, p, rng)
        x = xi_vector(triad, p, rng)
        t = (np.dot(P, np.dot(_lc_nabla_j(triad, np.dot(J, y), p), x))
             + np.dot(J, np.dot(_lc_nabla_j(triad, y, p), x)))
        r = max(r, float(np.max(np.abs(t))))
    out.append(make_result("lc-j-antilinear-cancellation", r,
                           TOL_ALGEBRAIC, p))

    # J is Levi-Civita parallel in the Reeb direction.
    r = np.max(np.abs(covariant_derivative_endo(lc, triad.j_any, reeb, p)))
    out.append(make_result("lc-reeb-parallel-j", r, TOL_ALGEBRAIC, p))

    # Levi-Civita covariant derivative of the Reeb field on the distribution.
    m = np.dot(mlc - 0.5 * J - 0.5 * np.dot(L, J), P)
    out.append(make_result("lc-reeb-covariant-slope",
                           np.max(np.abs(m)), TOL_ALGEBRAIC, p))

    # J-linearity of the intermediate (parameter -1) connection.
    r = 0.0
    for _ in range(samples):
        u = tq_vector(d, rng)
        Yf = xi_section(triad, rng.standard_normal(d))
        t = (np.dot(P, tmp.apply_vec(u, j_image(triad, Yf), p))
             - np.dot(J, np.dot(P, tmp.apply_vec(u, Yf, p))))
        r = max(r, float(np.max(np.abs(t))))
    out.append(make_result("semi-connection-j-linearity", r,
                           TOL_ALGEBRAIC, p))

    # Metric skew property of the obstruction tensor P.
    r = 0.0
    for _ in range(samples):
        x = xi_vector(triad, p, rng)
        y = xi_vector(triad, p, rng)
        z = xi_vector(triad, p, rng)
        r = max(r, abs(ip(tensor_P(triad, x, y, p), z)
                       + ip(y, tensor_P(triad, x, z, p))))
    out.append(make_result("p-tensor-metric-skew", r, TOL_ALGEBRAIC, p))

    # Metric property of the intermediate connection on sections.
    r = 0.0
    for _ in range(samples):
        u = tq_vector(d, rng)
        Yf = xi_section(triad, rng.standard_normal(d))
        Zf = xi_section(triad, rng.standard_normal(d))
        dg = _metric_pair_deriv(triad, Yf, Zf, p, u)
        t = (dg - ip(tmp.apply_vec(u, Yf, p), Zf(p))
             - ip(Yf(p), tmp.apply_vec(u, Zf, p)))
        r = max(r, abs(float(t)))
    out.append(make_result("semi-connection-metric", r, TOL_ALGEBRAIC, p))

    # Reeb/metric duality for the intermediate connection.
    r = 0.0
    for _ in range(samples):
        y = xi_vector(triad, p, rng)
        Zf = xi_section(triad, rng.standard_normal(d))
        t = (ip(tmp.apply_vec(y, reeb, p), Zf(p))
             + ip(X, tmp.apply_vec(y, Zf, p)))
        r = max(r, abs(float(t)))
    out.append(make_result("semi-connection-reeb-metric-dual", r,
                           TOL_ALGEBRAIC, p))

    # Torsion of the intermediate connection: quarter Nijenhuis, no lam part.
    r = float(np.max(np.abs(torsion_tensor(tmp, p, X, tq_vector(d, rng)))))
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(d))
        Zf = xi_section(triad, rng.standard_normal(d))
        y, z = Yf(p), Zf(p)
        t = torsion_tensor(tmp, p, y, z)
        n = nijenhuis(triad, Yf, Zf, p)
        r = max(r, float(np.max(np.abs(np.dot(P, t) - 0.25 * np.dot(P, n)))))
        r = max(r, abs(float(np.dot(lam, t))))
    out.append(make_result("semi-connection-torsion-quarter-n", r,
                           TOL_DERIVATIVE, p))

    # Covariant derivative of the Reeb field across the family.
    r = 0.0
    for c in c_values:
        mc = _reeb_cov_matrix(triad_connection(triad, c), p)
        m = np.dot(mc + 0.5 * c * J - 0.5 * np.dot(L, J), P)
        r = max(r, float(np.max(np.abs(m))))
    out.append(make_result("reeb-covariant-family", r, TOL_DERIVATIVE, p))

    # Torsion split values across the family.
    r = 0.0
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(d))
        Zf = xi_section(triad, rng.standard_normal(d))
        y, z = Yf(p), Zf(p)
        dlyz = float(np.dot(y, np.dot(A, z)))
        for c in c_values:
            t = torsion_tensor(triad_connection(triad, c), p, y, z)
            r = max(r, abs(float(np.dot(lam, t)) - (1.0 + c) * dlyz))
        t0 = torsion_tensor(conn0, p, y, z)
        l_jy = engine.lie_derivative_endo(j_image(triad, Yf), triad.j_any, p)
        l_y = engine.lie_derivative_endo(Yf, triad.j_any, p)
        lie_side = 0.25 * (np.dot(l_jy, z) + np.dot(l_y, np.dot(J, z)))
        r = max(r, float(np.max(np.abs(np.dot(P, t0) - lie_side))))
    out.append(make_result("torsion-split-values", r, TOL_DERIVATIVE, p))

    # Type symmetries of the projected torsion.
    r = 0.0
    for _ in range(samples):
        y = xi_vector(triad, p, rng)
        z = xi_vector(triad, p, rng)
        t_jy_z = np.dot(P, torsion_tensor(conn0, p, np.dot(J, y), z))
        t_y_jz = np.dot(P, torsion_tensor(conn0, p, y, np.dot(J, z)))
        t_y_z = np.dot(P, torsion_tensor(conn0, p, y, z))
        r = max(r, float(np.max(np.abs(t_jy_z - t_y_jz))))
        r = max(r, float(np.max(np.abs(np.dot(J, t_jy_z) - t_y_z))))
    out.append(make_result("torsion-type-symmetries", r, TOL_DERIVATIVE, p))

    # The antisymmetrisation of P as a bracket combination.
    r = 0.0
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(d))
        Zf = xi_section(triad, rng.standard_normal(d))
        y, z = Yf(p), Zf(p)
        lhs = -tensor_P(triad, y, z, p) + tensor_P(triad, z, y, p)
        jy, jz = j_image(triad, Yf), j_image(triad, Zf)
        rhs = 0.25 * (engine.lie_bracket(jy, jz, p)
                      - np.dot(P, engine.lie_bracket(Yf, Zf, p))
                      - np.dot(J, engine.lie_bracket(jy, Zf, p))
                      - np.dot(J, engine.lie_bracket(Yf, jz, p)))
        r = max(r, float(np.max(np.abs(lhs - rhs))))
    out.append(make_result("p-antisymmetrized-bracket", r, TOL_ALGEBRAIC, p))

    # d lam is parallel along the Reeb direction for the canonical member.
    r = np.max(np.abs(covariant_derivative_two_form(conn0, triad.dlam_any,
                                                    reeb, p)))
    out.append(make_result("reeb-parallel-two-form", r, TOL_ALGEBRAIC, p))

    return out


LEMMA_SUITE_NAMES = (
    "two-form-j-invariance", "reeb-lie-j-symmetry", "reeb-geodesic-foliation",
    "lc-j-derivative-pairing", "lc-j-derivative-reeb-slots",
    "nijenhuis-reeb-slots", "nijenhuis-j-shuffle",
    "lc-j-antilinear-cancellation", "lc-reeb-parallel-j",
    "lc-reeb-covariant-slope", "semi-connection-j-linearity",
    "p-tensor-metric-skew", "semi-connection-metric",
    "semi-connection-reeb-metric-dual", "semi-connection-torsion-quarter-n",
    "reeb-covariant-family", "torsion-split-values", "torsion-type-symmetries",
    "p-antisymmetrized-bracket", "reeb-parallel-two-form",
)


# -- fault injections ------------------------------------------------------


def fault_flipped_b1(triad: ContactTriad, p, seed: int = 0,
                     samples: int = 4) -> CheckResult:
    """Quarter-Nijenhuis torsion residual with the first correction negated.

    On any triad with nonvanishing projected Nijenhuis tensor the residual
    equals half its norm, so the check must FAIL there.
    """
    p = np.asarray(p, dtype=float)
    conn = TriadConnection(triad, -1.0, b1_sign=-1.0)
    rng = field_rng(seed, "fault-b1", triad.label)
    Pm = triad.pi_any(p)
    r = 0.0
    for _ in range(samples):
        Yf = xi_section(triad, rng.standard_normal(triad.dim))
        Zf = xi_section(triad, rng.standard_normal(triad.dim))
        t = torsion_tensor(conn, p, Yf(p), Zf(p))
        n = nijenhuis(triad, Yf, Zf, p)
        r = max(r, float(np.max(np.abs(np.dot(Pm, t) - 0.25 * np.dot(Pm, n)))))
    return make_result("fault-flipped-correction", r, TOL_DERIVATIVE, p)


def fault_wrong_c(triad: ContactTriad, p, seed: int = 0, built_c: float = 1.0,
                  tested_c: float = 0.0, samples: int = 4) -> CheckResult:
    """Parameter coupling of the built_c member against the tested_c axiom."""
    p = np.asarray(p, dtype=float)
    conn = triad_connection(triad, built_c)
    rng = field_rng(seed, "fault-c", triad.label)
    J = triad.j_any(p)
    r = 0.0
    for _ in range(samples):
        y = xi_vector(triad, p, rng)
        t = (conn.apply_vec(np.dot(J, y), triad.reeb_any, p)
             + np.dot(J, conn.apply_vec(y, triad.reeb_any, p)) - tested_c * y)
        r = max(r, float(np.max(np.abs(t))))
    return make_result("fault-wrong-family-parameter", r, TOL_ALGEBRAIC, p)


def fault_levi_civita(triad: ContactTriad, p, seed: int = 0,
                      samples: int = 4) -> CheckResult:
    """J-linearity failure of the Levi-Civita connection.

    The Levi-Civita connection is torsion free, so it trivially passes the
    torsion axioms; what breaks is complex linearity of its projection, by
    exactly the projected derivative of J.  Needs a triad with non-parallel
    J (the perturbed examples) to produce a visible residual.
    """
    p = np.asarray(p, dtype=float)
    lc = LeviCivitaConnection(triad)
    rng = field_rng(seed, "fault-lc", triad.label)
    P = triad.pi_any(p)
    J = triad.j_any(p)
    r = 0.0
    for _ in range(samples):
        u = tq_vector(triad.dim, rng)
        Yf = xi_section(triad, rng.standard_normal(triad.dim))
        t = (np.dot(P, lc.apply_vec(u, j_image(triad, Yf), p))
             - np.dot(J, np.dot(P, lc.apply_vec(u, Yf, p))))
        r = max(r, float(np.max(np.abs(t))))
    return make_result("fault-levi-civita-not-complex-linear", r,
                       TOL_ALGEBRAIC, p)


def fault_scale_mismatch(triad: ContactTriad, a: float, p, seed: int = 0,
                         samples: int = 4) -> CheckResult:
    """Residual between nabla^{a lam; 1} and the UNscaled parameter-1 member."""
    p = np.asarray(p, dtype=float)
    conn_s = triad_connection(triad.scaled(a), 1.0)
    conn_b = triad_connection(triad, 1.0)
    rng = field_rng(seed, "fault-scale", triad.label, a)
    r = 0.0
    for _ in range(samples):
        u = tq_vector(triad.dim, rng)
        v = tq_vector(triad.dim, rng)
        diff = conn_s.gamma_apply(p, u, v) - conn_b.gamma_apply(p, u, v)
        r = max(r, float(np.max(np.abs(diff))))
    return make_result("fault-scale-mismatch", r, TOL_DERIVATIVE, p)
