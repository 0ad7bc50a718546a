"""Differentiation engine and dense linear algebra over dual scalars.

Geometric fields are plain closures over chart coordinates: a scalar field
maps a coordinate array to a scalar, a vector field to a length-``dim``
array, an endomorphism field to a ``dim x dim`` matrix.  The engine turns
closures into derivatives either with nested dual numbers (``mode="ad"``,
exact to rounding, supports second-order nesting) or with central finite
differences (``mode="fd"``, an independent cross-check path).

The linear algebra helpers (:func:`solve`, :func:`inv`) dispatch between
``numpy.linalg`` for float matrices and a hand-rolled LU factorisation with
partial pivoting that works elementwise over dual scalars, so the same
geometric pipelines run unchanged inside a differentiation pass.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .ad import Dual, pop_level, push_level, value

Point = np.ndarray
ScalarField = Callable[[np.ndarray], object]
VectorField = Callable[[np.ndarray], np.ndarray]
OneForm = Callable[[np.ndarray], np.ndarray]
EndoField = Callable[[np.ndarray], np.ndarray]


def is_float_point(q) -> bool:
    return isinstance(q, np.ndarray) and q.dtype != np.dtype(object)


def as_float_array(a: np.ndarray) -> np.ndarray:
    """Demote an object array of plain floats; leave dual-bearing arrays alone."""
    if a.dtype != np.dtype(object):
        return a
    try:
        return a.astype(float)
    except (TypeError, ValueError):
        return a


def _seed(p, v, lvl) -> np.ndarray:
    xs = np.empty(len(p), dtype=object)
    for i in range(len(p)):
        xs[i] = Dual(lvl, p[i], v[i])
    return xs


def _extract(y, lvl, grad_shape=()):
    """Pull the level-``lvl`` derivative slot out of a closure result."""
    if isinstance(y, np.ndarray):
        if y.dtype != np.dtype(object):
            return np.zeros(y.shape + grad_shape)
        if not grad_shape:
            out = np.empty(y.shape, dtype=object)
            for idx in np.ndindex(*y.shape):
                e = y[idx]
                out[idx] = e.du if isinstance(e, Dual) and e.lvl == lvl else 0.0
            return as_float_array(out)
        # Gradient slots are vectors; stack them along a trailing axis.
        grads = {}
        all_float = True
        for idx in np.ndindex(*y.shape):
            e = y[idx]
            if isinstance(e, Dual) and e.lvl == lvl:
                g = e.du
                if not isinstance(g, np.ndarray):
                    raise TypeError("scalar derivative slot in a vector-mode pass")
                if g.dtype == np.dtype(object):
                    all_float = False
            else:
                g = np.zeros(grad_shape)
            grads[idx] = g
        out = np.empty(y.shape + grad_shape,
                       dtype=float if all_float else object)
        for idx, g in grads.items():
            out[idx] = g
        return out
    if isinstance(y, Dual) and y.lvl == lvl:
        return y.du
    return np.zeros(grad_shape) if grad_shape else 0.0


class DiffEngine:
    """Directional derivatives of chart-coordinate closures.

    mode : ``"ad"`` for nested forward-mode duals, ``"fd"`` for central
        finite differences with step ``step``.
    """

    def __init__(self, mode: str = "ad", step: float = 1e-4):
        if mode not in ("ad", "fd"):
            raise ValueError("mode must be 'ad' or 'fd', got %r" % (mode,))
        if not step > 0:
            raise ValueError("finite-difference step must be positive")
        self.mode = mode
        self.step = float(step)

    # -- core passes -----------------------------------------------------

    def deriv(self, f, p, v):
        """Directional derivative of a scalar/vector/matrix closure at p along v."""
        if self.mode == "ad":
            lvl = push_level()
            try:
                y = f(_seed(p, v, lvl))
            finally:
                pop_level()
            return _extract(y, lvl)
        h = self.step
        vp = np.asarray(v, dtype=float)
        hi = f(p + h * vp)
        lo = f(p - h * vp)
        return (hi - lo) * (0.5 / h)

    def jacobian(self, f, p):
        """Full coordinate Jacobian; result has one trailing axis of length dim.

        ``jacobian(f, p)[..., l]`` is the partial derivative of ``f`` along
        chart coordinate ``l``.
        """
        d = len(p)
        if self.mode == "ad":
            eye = np.eye(d)
            lvl = push_level()
            try:
                xs = np.empty(d, dtype=object)
                for i in range(d):
                    xs[i] = Dual(lvl, p[i], eye[i])
                y = f(xs)
            finally:
                pop_level()
            return _extract(y, lvl, grad_shape=(d,))
        cols = [self.deriv(f, p, e) for e in np.eye(d)]
        out = np.stack([np.asarray(c, dtype=float) for c in cols], axis=-1)
        return out

    # -- named operations ------------------------------------------------

    def directional_derivative(self, f: ScalarField, p, v):
        """Scalar directional derivative; rejects non-finite results."""
        out = self.deriv(f, p, v)
        if is_float_point(p) and not np.all(np.isfinite(np.asarray(out, dtype=float))):
            raise ValueError("non-finite derivative: field evaluated outside its domain")
        return out

    def lie_bracket(self, X: VectorField, Y: VectorField, p):
        """[X, Y] = DY(X) - DX(Y) evaluated at p."""
        return self.deriv(Y, p, X(p)) - self.deriv(X, p, Y(p))

    def exterior_derivative(self, alpha: OneForm, p):
        """d(alpha) as the exactly antisymmetric matrix of a two-form.

        Entry [i, j] equals (d alpha)(e_i, e_j) = d_i alpha_j - d_j alpha_i,
        in the convention without a 1/2 factor, so that
        d(alpha)(X, Y) = X[alpha(Y)] - Y[alpha(X)] - alpha([X, Y]).
        """
        jac = self.jacobian(alpha, p)            # jac[i, l] = d_l alpha_i
        return jac.T - jac

    def lie_derivative_endo(self, X: VectorField, A: EndoField, p):
        """Lie derivative of a (1,1)-tensor: (L_X A)(Y) = [X, AY] - A[X, Y]."""
        dX = self.jacobian(X, p)
        Ap = A(p)
        dA_X = self.deriv(A, p, X(p))
        return dA_X - np.dot(dX, Ap) + np.dot(Ap, dX)


# -- dense linear algebra over float or dual scalars ----------------------


def _lu_solve_generic(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    M = np.array(A, dtype=object, copy=True)
    one_d = B.ndim == 1
    R = np.array(B if not one_d else B[:, None], dtype=object, copy=True)
    for k in range(n):
        piv, best = k, abs(value(M[k, k]))
        for i in range(k + 1, n):
            m = abs(value(M[i, k]))
            if m > best:
                piv, best = i, m
        if best < 1e-300:
            raise np.linalg.LinAlgError("singular system in generic LU solve")
        if piv != k:
            M[[k, piv]] = M[[piv, k]]
            R[[k, piv]] = R[[piv, k]]
        inv_p = 1.0 / M[k, k]
        for i in range(k + 1, n):
            f = M[i, k] * inv_p
            M[i, k + 1:] = M[i, k + 1:] - f * M[k, k + 1:]
            R[i] = R[i] - f * R[k]
    X = np.empty_like(R)
    for i in range(n - 1, -1, -1):
        acc = R[i]
        if i + 1 < n:
            acc = acc - np.dot(M[i, i + 1:], X[i + 1:])
        X[i] = acc / M[i, i]
    X = as_float_array(X)
    return X[:, 0] if one_d else X


def solve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve A x = B; works for float and dual-valued systems."""
    if A.dtype != np.dtype(object) and B.dtype != np.dtype(object):
        return np.linalg.solve(A, B)
    return _lu_solve_generic(A, B)


def inv(A: np.ndarray) -> np.ndarray:
    if A.dtype != np.dtype(object):
        return np.linalg.inv(A)
    return _lu_solve_generic(A, np.eye(A.shape[0]))


def outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[:, None] * b[None, :]
