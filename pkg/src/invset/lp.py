"""Solver-agnostic linear programs and LP feasibility problems.

Every set-inclusion test in this package reduces to one LP. Problems are
described by :class:`LpProblem` (sparse equalities/inequalities, optional
per-variable lower bounds, optional cost) and solved through a single entry
point, :func:`solve`, currently backed by HiGHS via ``scipy.optimize.linprog``.
Feasibility problems are posed as minimize-0 LPs so everything goes through
the same code path. Solutions reported Optimal/Feasible are re-verified
against the problem data before being returned; the solver is not trusted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linprog


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    NUMERICAL_FAILURE = "numerical_failure"


class SolverFailure(RuntimeError):
    """Raised by higher-level operations when the LP backend reports numerical trouble."""


class InfeasibleProblem(RuntimeError):
    """Raised by scaling solvers when no scaling satisfies the requested condition."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and limits shared by all LP-based checks.

    Set inclusions certified downstream hold only up to these tolerances.
    """

    eq_tol: float = 1e-7
    ineq_tol: float = 1e-7
    max_iterations: Optional[int] = None
    feasibility_only: bool = False

    def __post_init__(self):
        if not (self.eq_tol > 0 and self.ineq_tol > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_CONFIG = SolverConfig()


def _as_csr(A) -> Optional[sparse.csr_matrix]:
    if A is None:
        return None
    if sparse.issparse(A):
        return A.tocsr()
    return sparse.csr_matrix(np.atleast_2d(np.asarray(A, dtype=float)))


@dataclass
class LpProblem:
    """minimize objective·x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= lb.

    ``var_lower_bounds`` entries of -inf mark free variables; variables are
    never bounded above. ``objective`` of None means a pure feasibility
    problem (solved as minimize 0).
    """

    num_vars: int
    A_eq: Optional[sparse.csr_matrix] = None
    b_eq: Optional[np.ndarray] = None
    A_ub: Optional[sparse.csr_matrix] = None
    b_ub: Optional[np.ndarray] = None
    var_lower_bounds: Optional[np.ndarray] = None
    objective: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        self.A_eq = _as_csr(self.A_eq)
        self.A_ub = _as_csr(self.A_ub)
        if self.b_eq is not None:
            self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        if self.b_ub is not None:
            self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()
        if self.var_lower_bounds is not None:
            self.var_lower_bounds = np.asarray(self.var_lower_bounds, dtype=float).ravel()
        if self.objective is not None:
            self.objective = np.asarray(self.objective, dtype=float).ravel()
        self.validate()

    def validate(self):
        n = self.num_vars
        if n < 1:
            raise ValueError("num_vars must be positive")
        for A, b, what in ((self.A_eq, self.b_eq, "equalities"), (self.A_ub, self.b_ub, "inequalities")):
            if (A is None) != (b is None):
                raise ValueError(f"{what}: matrix and rhs must be given together")
            if A is not None:
                if A.shape[1] != n:
                    raise ValueError(f"{what}: {A.shape[1]} columns != num_vars {n}")
                if A.shape[0] != b.shape[0]:
                    raise ValueError(f"{what}: {A.shape[0]} rows != rhs length {b.shape[0]}")
        if self.var_lower_bounds is not None:
            if self.var_lower_bounds.shape[0] != n:
                raise ValueError("var_lower_bounds length != num_vars")
            if np.any(np.isnan(self.var_lower_bounds)) or np.any(self.var_lower_bounds == np.inf):
                raise ValueError("lower bounds must be finite or -inf (free)")
        if self.objective is not None and self.objective.shape[0] != n:
            raise ValueError("objective length != num_vars")


@dataclass
class LpOutcome:
    status: LpStatus
    solution: Optional[np.ndarray] = None
    objective_value: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status in (LpStatus.OPTIMAL, LpStatus.FEASIBLE)


def verify_solution(problem: LpProblem, solution: np.ndarray, config: SolverConfig = DEFAULT_CONFIG) -> bool:
    """True iff every equality holds within eq_tol and every inequality within ineq_tol."""
    x = np.asarray(solution, dtype=float).ravel()
    if x.shape[0] != problem.num_vars:
        raise ValueError("solution length != num_vars")
    if problem.A_eq is not None:
        if np.max(np.abs(problem.A_eq @ x - problem.b_eq), initial=0.0) > config.eq_tol:
            return False
    if problem.A_ub is not None:
        if np.max(problem.A_ub @ x - problem.b_ub, initial=0.0) > config.ineq_tol:
            return False
    if problem.var_lower_bounds is not None:
        lb = problem.var_lower_bounds
        finite = np.isfinite(lb)
        if np.any(lb[finite] - x[finite] > config.ineq_tol):
            return False
    return True


# scipy.optimize.linprog status codes -> LpStatus
_STATUS_MAP = {
    2: LpStatus.INFEASIBLE,
    3: LpStatus.UNBOUNDED,
    1: LpStatus.NUMERICAL_FAILURE,  # iteration limit
    4: LpStatus.NUMERICAL_FAILURE,
}


def solve(problem: LpProblem, config: SolverConfig = DEFAULT_CONFIG) -> LpOutcome:
    """Solve an LP (or feasibility problem) and re-verify the reported solution.

    Returns FEASIBLE instead of OPTIMAL when the problem carries no objective
    or the config asks for feasibility only. A solution that fails
    re-verification at the config tolerances is reported as NUMERICAL_FAILURE.
    """
    problem.validate()
    feasibility = problem.objective is None or config.feasibility_only
    c = np.zeros(problem.num_vars) if problem.objective is None else problem.objective

    if problem.var_lower_bounds is None:
        bounds = np.full((problem.num_vars, 2), [-np.inf, np.inf])
    else:
        bounds = np.column_stack(
            [problem.var_lower_bounds, np.full(problem.num_vars, np.inf)]
        )

    # Run HiGHS one decade tighter than the contract tolerances so that
    # re-verification at the contract tolerances has headroom.
    options = {
        "presolve": True,
        "primal_feasibility_tolerance": max(min(config.eq_tol, config.ineq_tol) * 0.1, 1e-10),
        "dual_feasibility_tolerance": max(min(config.eq_tol, config.ineq_tol) * 0.1, 1e-10),
    }
    if config.max_iterations is not None:
        options["maxiter"] = config.max_iterations

    res = linprog(
        c,
        A_ub=problem.A_ub,
        b_ub=problem.b_ub,
        A_eq=problem.A_eq,
        b_eq=problem.b_eq,
        bounds=bounds,
        method="highs",
        options=options,
    )

    if res.status != 0:
        return LpOutcome(status=_STATUS_MAP.get(res.status, LpStatus.NUMERICAL_FAILURE))

    x = np.asarray(res.x, dtype=float)
    if not verify_solution(problem, x, config):
        return LpOutcome(status=LpStatus.NUMERICAL_FAILURE)
    if feasibility:
        return LpOutcome(status=LpStatus.FEASIBLE, solution=x)
    return LpOutcome(status=LpStatus.OPTIMAL, solution=x, objective_value=float(res.fun))


def require_ok(outcome: LpOutcome, what: str) -> LpOutcome:
    """Pass through Feasible/Optimal/Infeasible/Unbounded, raise on numerical failure."""
    if outcome.status is LpStatus.NUMERICAL_FAILURE:
        raise SolverFailure(f"{what}: LP backend reported numerical failure")
    return outcome
