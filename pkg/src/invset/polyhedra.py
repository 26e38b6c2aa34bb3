"""H-representation polyhedron algebra.

A :class:`Polyhedron` is {x : H x <= h}; no vertex representation is kept and
no redundancy removal is ever performed (redundant rows are harmless to LPs,
and removing them is exactly the expensive geometry this package avoids).
Minkowski sums and other projected sets live in :class:`ImplicitPolytope`:
the projection of a higher-dimensional polyhedron onto its leading
coordinates, with membership decided by one LP feasibility problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import sparse

from .lp import DEFAULT_CONFIG, LpProblem, LpStatus, SolverConfig, require_ok, solve


@dataclass(frozen=True)
class Polyhedron:
    """{x in R^dim : H x <= h}. Possibly empty; emptiness is decided lazily by LP."""

    H: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        H = np.atleast_2d(np.asarray(self.H, dtype=float))
        h = np.asarray(self.h, dtype=float).ravel()
        if H.shape[0] != h.shape[0]:
            raise ValueError(f"H has {H.shape[0]} rows but h has length {h.shape[0]}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "h", h)

    @property
    def dim(self) -> int:
        return self.H.shape[1]

    @property
    def num_rows(self) -> int:
        return self.H.shape[0]

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float).ravel()
        if x.shape[0] != self.dim:
            raise ValueError("point dimension mismatch")
        return bool(np.all(self.H @ x <= self.h + tol))

    def contains_origin(self, tol: float = 1e-9) -> bool:
        # 0 is a member exactly when h >= 0 component-wise.
        return bool(np.all(self.h >= -tol))

    def is_empty(self, config: SolverConfig = DEFAULT_CONFIG) -> bool:
        problem = LpProblem(num_vars=self.dim, A_ub=self.H, b_ub=self.h, name="emptiness check")
        outcome = require_ok(solve(problem, config), "is_empty")
        return outcome.status is LpStatus.INFEASIBLE


def unit_box(n: int) -> Polyhedron:
    """The unit box in R^n: 2n rows, x_i <= 1 and -x_i <= 1."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    eye = np.eye(n)
    return Polyhedron(np.vstack([eye, -eye]), np.ones(2 * n))


def box(bounds: Sequence[Tuple[float, float]]) -> Polyhedron:
    """Axis-aligned box from per-coordinate (lo, hi) bounds."""
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    n = lo.shape[0]
    eye = np.eye(n)
    return Polyhedron(np.vstack([eye, -eye]), np.concatenate([hi, -lo]))


def scale(P: Polyhedron, gamma: float) -> Polyhedron:
    """gamma * P = {gamma x : x in P} for gamma >= 0.

    For gamma > 0 this is {x : H x <= gamma h}. For gamma == 0 the result is
    the singleton {0} when P is nonempty, kept in pure inequality form with
    2*dim rows; if P is empty the result is the (detectably) empty set.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if gamma == 0:
        if P.is_empty():
            # 0 * empty = empty; one infeasible row keeps that decidable.
            return Polyhedron(np.zeros((1, P.dim)), np.array([-1.0]))
        eye = np.eye(P.dim)
        return Polyhedron(np.vstack([eye, -eye]), np.zeros(2 * P.dim))
    return Polyhedron(P.H.copy(), gamma * P.h)


def preimage(A: np.ndarray, P: Polyhedron) -> Polyhedron:
    """{x : A x in P} = {x : H A x <= h}; well-defined for singular A."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != P.dim:
        raise ValueError(f"A maps into R^{A.shape[0]} but P lives in R^{P.dim}")
    return Polyhedron(P.H @ A, P.h.copy())


@dataclass(frozen=True)
class ImplicitPolytope:
    """proj_x {xbar in R^total_dim : G_bar xbar <= g_bar}, x = first ambient_dim coords."""

    G_bar: sparse.csr_matrix
    g_bar: np.ndarray
    ambient_dim: int
    total_dim: int

    def __post_init__(self):
        G = self.G_bar if sparse.issparse(self.G_bar) else sparse.csr_matrix(np.atleast_2d(self.G_bar))
        object.__setattr__(self, "G_bar", G.tocsr())
        object.__setattr__(self, "g_bar", np.asarray(self.g_bar, dtype=float).ravel())
        if self.G_bar.shape[0] != self.g_bar.shape[0]:
            raise ValueError("G_bar rows != g_bar length")
        if self.G_bar.shape[1] != self.total_dim:
            raise ValueError("G_bar columns != total_dim")
        if not (1 <= self.ambient_dim <= self.total_dim):
            raise ValueError("need 1 <= ambient_dim <= total_dim")

    @property
    def num_rows(self) -> int:
        return self.G_bar.shape[0]


def minkowski_sum_implicit(terms: Sequence[Tuple[np.ndarray, Polyhedron]]) -> ImplicitPolytope:
    """Implicit representation of P_1 Gamma_1 + ... + P_k Gamma_k.

    Lifted coordinates are (x, y_1, ..., y_k); the equality x = sum P_i y_i is
    encoded as the paired inequality blocks [I, -P_1, ..., -P_k] <= 0 and
    [-I, P_1, ..., P_k] <= 0, followed by one F_i y_i <= f_i block per term.
    """
    if not terms:
        raise ValueError("at least one summand required")
    mats = []
    polys = []
    n = None
    for P_i, gamma_i in terms:
        P_i = np.atleast_2d(np.asarray(P_i, dtype=float))
        if n is None:
            n = P_i.shape[0]
        elif P_i.shape[0] != n:
            raise ValueError("all maps must have the same number of rows")
        if P_i.shape[1] != gamma_i.dim:
            raise ValueError(f"map has {P_i.shape[1]} columns but set lives in R^{gamma_i.dim}")
        mats.append(P_i)
        polys.append(gamma_i)

    total = n + sum(p.dim for p in polys)
    eye = sparse.eye(n, format="csr")
    top = sparse.hstack([eye] + [sparse.csr_matrix(-P) for P in mats], format="csr")
    rows = [top, -top]
    g = [np.zeros(n), np.zeros(n)]
    offset = n
    for P_i, gamma_i in zip(mats, polys):
        block = sparse.lil_matrix((gamma_i.num_rows, total))
        block[:, offset : offset + gamma_i.dim] = gamma_i.H
        rows.append(block.tocsr())
        g.append(gamma_i.h)
        offset += gamma_i.dim
    return ImplicitPolytope(
        G_bar=sparse.vstack(rows, format="csr"),
        g_bar=np.concatenate(g),
        ambient_dim=n,
        total_dim=total,
    )


def member_implicit(S: ImplicitPolytope, x, config: SolverConfig = DEFAULT_CONFIG) -> bool:
    """True iff some lifted tail completes x into the defining polyhedron (one LP)."""
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != S.ambient_dim:
        raise ValueError("point dimension != ambient_dim")
    G_x = S.G_bar[:, : S.ambient_dim]
    rhs = S.g_bar - G_x @ x
    tail = S.total_dim - S.ambient_dim
    if tail == 0:
        return bool(np.all(rhs >= -config.ineq_tol))
    problem = LpProblem(
        num_vars=tail,
        A_ub=S.G_bar[:, S.ambient_dim :],
        b_ub=rhs,
        name="implicit membership",
    )
    outcome = require_ok(solve(problem, config), "member_implicit")
    return outcome.ok
