"""Frame data model and its structural maps.

A frame pairs N scalar-valued Lipschitz maps on a subset M with N points of
M.  The analysis map sends x to its coefficient vector, the synthesis
operator sums coefficients against the points, and their composition is the
frame map S.  S is inverted numerically by damped fixed-point iteration,
which is all the reconstruction and projection operators need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConvergenceError,
    DivergenceError,
    FrameMismatchError,
    MembershipError,
)
from .spaces import MEMBERSHIP_TOL, SeqVec, SubsetSpec, as_point, bucket_key

_DIVERGENCE_STREAK = 10


@dataclass(frozen=True)
class LipMap:
    """A scalar-valued Lipschitz map on the owning frame's subset.

    ``claimed_lip`` is an analytic Lipschitz constant when one is known; it
    is advisory and only ever compared against empirical estimates.
    """

    eval: Callable[[np.ndarray], complex]
    claimed_lip: float | None = None
    label: str = ""


@dataclass(frozen=True)
class SolverCfg:
    """Damped fixed-point settings for inverting the frame map."""

    damping: float = 1.0
    max_iter: int = 500
    residual_tol: float = 1e-10

    def __post_init__(self):
        if self.damping <= 0:
            raise ValueError("damping must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.residual_tol <= 0:
            raise ValueError("residual_tol must be positive")


DEFAULT_SOLVER = SolverCfg()


@dataclass(frozen=True)
class Frame:
    """N Lipschitz maps paired with N subset points, with lp exponent p.

    ``tail_bound(x)`` bounds the norm of the series tail omitted by the
    truncation at N.  Fixtures carry analytic bounds (geometric or Taylor
    remainders); exact finite frames use the constant 0.  ``kind_hint`` is
    advisory metadata and is never trusted; certification is the only way to
    upgrade it.
    """

    M: SubsetSpec
    p: float
    f: tuple[LipMap, ...]
    tau: np.ndarray  # shape (N, ambient_dim)
    tail_bound: Callable[[np.ndarray], float]
    kind_hint: str = "unverified"

    def __post_init__(self):
        maps = tuple(self.f)
        if len(maps) < 1:
            raise ValueError("a frame needs at least one map")
        tau = np.atleast_2d(np.asarray(self.tau, dtype=complex)).copy()
        if tau.shape != (len(maps), self.M.ambient_dim):
            raise FrameMismatchError(
                f"expected {len(maps)} vectors of dimension {self.M.ambient_dim}, "
                f"got array of shape {tau.shape}"
            )
        if not np.all(np.isfinite(tau)):
            raise ValueError("frame vectors must be finite")
        p = float(self.p)
        if not (1.0 <= p < np.inf):
            raise ValueError(f"exponent must satisfy 1 <= p < inf, got {self.p}")
        tau.setflags(write=False)
        object.__setattr__(self, "f", maps)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "p", p)

    @property
    def N(self) -> int:
        return len(self.f)


def validate_tau_membership(F: Frame, tol: float = MEMBERSHIP_TOL) -> None:
    """Check every frame vector against the subset predicate."""
    for n, t in enumerate(F.tau):
        if not F.M.member(t, tol):
            raise MembershipError(f"frame vector {n + 1} = {t} is outside {F.M.description or 'M'}")


def check_compatible(F: Frame, G: Frame) -> None:
    """Frames must share ambient dimension, exponent and truncation length."""
    if F.M.ambient_dim != G.M.ambient_dim or F.p != G.p or F.N != G.N:
        raise FrameMismatchError(
            f"frames disagree: (dim, p, N) = ({F.M.ambient_dim}, {F.p}, {F.N}) "
            f"vs ({G.M.ambient_dim}, {G.p}, {G.N})"
        )


def analysis(F: Frame, x, check: bool = True) -> SeqVec:
    """Coefficient vector of x: entry n is the n-th map evaluated at x.

    With ``check`` on (the public contract) a point outside M raises
    MembershipError.  Solver internals evaluate unchecked because iterates
    and truncated inverses may legitimately sit outside M.
    """
    pt = as_point(x, F.M.ambient_dim)
    if check and not F.M.member(pt):
        raise MembershipError(f"point {pt} is outside {F.M.description or 'M'}")
    vals = np.array([m.eval(pt) for m in F.f], dtype=complex)
    return SeqVec(vals, F.p)


def synthesis(F: Frame, a: SeqVec) -> np.ndarray:
    """Sum of a_n times vector n; linear in the coefficients."""
    if a.N != F.N or a.p != F.p:
        raise FrameMismatchError(
            f"coefficient vector (N={a.N}, p={a.p}) does not match frame (N={F.N}, p={F.p})"
        )
    return a.entries @ F.tau


def frame_map(F: Frame, x, check: bool = True) -> np.ndarray:
    """The self-map S of M: synthesis composed with analysis."""
    return synthesis(F, analysis(F, x, check=check))


def invert_map(fn, y, cfg: SolverCfg, norm, start=None) -> np.ndarray:
    """Solve fn(x) = y by damped iteration x <- x - damping * (fn(x) - y).

    Raises DivergenceError when the residual grows for 10 consecutive
    iterations (the map is not contractive at this damping, or y is outside
    the range) and ConvergenceError when max_iter runs out first.
    """
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    x = np.array(y if start is None else start, dtype=complex)
    fx = fn(x)
    res = norm(fx - y)
    streak = 0
    for _ in range(cfg.max_iter):
        if res <= cfg.residual_tol:
            return x
        x = x - cfg.damping * (fx - y)
        fx = fn(x)
        nxt = norm(fx - y)
        streak = streak + 1 if nxt > res else 0
        if streak >= _DIVERGENCE_STREAK:
            raise DivergenceError(
                f"residual grew for {streak} consecutive iterations "
                f"(last {nxt:.3e}) at damping {cfg.damping:g}"
            )
        res = nxt
    if res <= cfg.residual_tol:
        return x
    raise ConvergenceError(
        f"residual {res:.3e} still above tolerance {cfg.residual_tol:.1e} "
        f"after {cfg.max_iter} iterations"
    )


def invert_frame_map(F: Frame, y, cfg: SolverCfg = DEFAULT_SOLVER) -> np.ndarray:
    """Preimage of y under the frame map.

    Iterates run through the ambient space unchecked; only convergence is
    enforced.  The result of a truncated solve may sit within one tail-width
    outside M, which callers needing membership must tolerate.
    """
    target = as_point(y, F.M.ambient_dim)
    return invert_map(lambda z: frame_map(F, z, check=False), target, cfg, F.M.norm)


def membership_slack(F: Frame, point, cfg: SolverCfg = DEFAULT_SOLVER) -> float:
    """Tolerance for membership checks of solver outputs near ``point``."""
    return MEMBERSHIP_TOL + 2.0 * float(F.tail_bound(point)) + 2.0 * cfg.residual_tol


def reconstruct(F: Frame, x, cfg: SolverCfg = DEFAULT_SOLVER) -> np.ndarray:
    """Sum of f_n(x) times the inverted vector S^{-1} tau_n.

    Agrees with x up to the truncation tail plus solver tolerance.  Repeated
    vectors are inverted once (the worked fixtures all use tau_n = 1).
    """
    coeffs = analysis(F, x)
    cache: dict[tuple, np.ndarray] = {}
    out = np.zeros(F.M.ambient_dim, dtype=complex)
    for n in range(F.N):
        key = bucket_key(F.tau[n])
        pre = cache.get(key)
        if pre is None:
            pre = invert_frame_map(F, F.tau[n], cfg)
            cache[key] = pre
        out = out + coeffs.entries[n] * pre
    return out


def coefficient_projection(F: Frame, a: SeqVec, cfg: SolverCfg = DEFAULT_SOLVER) -> SeqVec:
    """Project a coefficient vector onto the analysis image of M.

    Computes analysis(S^{-1}(synthesis(a))); idempotent up to solver and
    truncation tolerance whenever synthesis(a) lies in the frame-map range.
    The final analysis runs unchecked because the solver output may sit a
    tail-width outside M.
    """
    y = synthesis(F, a)
    x = invert_frame_map(F, y, cfg)
    return analysis(F, x, check=False)
