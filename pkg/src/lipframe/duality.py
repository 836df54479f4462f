"""Canonical duals, dual verification, and the full dual parametrization.

A dual of a frame is a second frame whose mixed analysis/synthesis
compositions reproduce every point of M.  The canonical dual composes the
maps with the inverted frame map and inverts the vectors; the general dual
family is parametrized by a Lipschitz perturbation U into coefficient space
and a linear perturbation V back into the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConvergenceError,
    DivergenceError,
    DualityError,
    FrameMismatchError,
    MembershipError,
    NotInvertibleError,
)
from .frame_core import (
    DEFAULT_SOLVER,
    Frame,
    LipMap,
    SolverCfg,
    analysis,
    check_compatible,
    invert_frame_map,
    invert_map,
    membership_slack,
    synthesis,
)
from .spaces import SeqVec, bucket_key, sample_points


@dataclass(frozen=True)
class LipOperatorU:
    """A Lipschitz map from the subset into coefficient space."""

    eval: Callable[[np.ndarray], SeqVec]
    label: str = ""


@dataclass(frozen=True)
class LinOperatorV:
    """A linear coefficient-to-ambient operator in matrix form (dim x N)."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.matrix, dtype=complex)).copy()
        if not np.all(np.isfinite(m)):
            raise ValueError("operator matrix must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, a: SeqVec) -> np.ndarray:
        return self.matrix @ a.entries

    def column(self, n: int) -> np.ndarray:
        return np.array(self.matrix[:, n])


@dataclass(frozen=True)
class CoeffMap:
    """A coefficient-to-point map (linear only when the frame-map inverse is)."""

    eval: Callable[[SeqVec], np.ndarray]
    label: str = ""


def zero_U(N: int, p: float) -> LipOperatorU:
    return LipOperatorU(lambda x: SeqVec(np.zeros(N, dtype=complex), p), label="0")


def zero_V(dim: int, N: int) -> LinOperatorV:
    return LinOperatorV(np.zeros((dim, N)), label="0")


class _PointMemo:
    """Memoize a function of a point on 1e-12 coordinate buckets.

    Plain dict storage: concurrent duplicate computation is harmless because
    results for the same bucket are identical, so no locking is needed.
    """

    def __init__(self, fn):
        self._fn = fn
        self._cache: dict[tuple, object] = {}

    def __call__(self, x):
        key = bucket_key(x)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._fn(x)
            self._cache[key] = hit
        return hit


def canonical_dual(F: Frame, cfg: SolverCfg = DEFAULT_SOLVER) -> Frame:
    """The dual with maps composed with S^{-1} and vectors S^{-1} tau_n.

    Map evaluations run the damped solver lazily behind a per-frame memo
    cache.  The vectors are inverted eagerly and membership-checked with
    truncation slack, since a truncated inverse may sit a tail-width outside
    M.
    """
    inv = _PointMemo(lambda y: invert_frame_map(F, y, cfg))
    omega = np.array([inv(t) for t in F.tau])
    for n, w in enumerate(omega):
        if not F.M.member(w, membership_slack(F, w, cfg)):
            raise MembershipError(f"inverted vector {n + 1} = {w} left the subset")
    maps = tuple(
        LipMap(
            eval=(lambda x, m=m: m.eval(inv(x))),
            label=f"{m.label} o inv(S)" if m.label else "inv(S) composite",
        )
        for m in F.f
    )
    return Frame(
        M=F.M, p=F.p, f=maps, tau=omega,
        tail_bound=F.tail_bound, kind_hint="unverified",
    )


def is_dual(F: Frame, G: Frame, samples: int = 200, seed: int = 0, tol: float = 1e-8) -> bool:
    """True when both mixed compositions reproduce sampled points to tol.

    Checks synthesis_F(analysis_G(x)) = x and synthesis_G(analysis_F(x)) = x
    over ``samples`` points of M.
    """
    check_compatible(F, G)
    for x in sample_points(F.M, samples, seed):
        if F.M.norm(synthesis(F, analysis(G, x)) - x) > tol:
            return False
        if F.M.norm(synthesis(G, analysis(F, x)) - x) > tol:
            return False
    return True


def right_inverse_family(F: Frame, U: LipOperatorU, cfg: SolverCfg = DEFAULT_SOLVER) -> LipOperatorU:
    """The Lipschitz right-inverses of synthesis, parametrized by U.

    R(x) = analysis(S^{-1} x) + U(x) - analysis(S^{-1} synthesis(U(x))); for
    every U the result satisfies synthesis(R(x)) = x.
    """
    inv = _PointMemo(lambda y: invert_frame_map(F, y, cfg))

    def evaluate(x):
        base = analysis(F, inv(x), check=False)
        ux = U.eval(x)
        correction = analysis(F, inv(synthesis(F, ux)), check=False)
        return base + ux - correction

    return LipOperatorU(evaluate, label=f"right-inverse({U.label or 'U'})")


def left_inverse_family(F: Frame, V: LinOperatorV, cfg: SolverCfg = DEFAULT_SOLVER) -> CoeffMap:
    """The bounded left-inverses of analysis, parametrized by V.

    L(a) = S^{-1} synthesis(a) + V(a - analysis(S^{-1} synthesis(a))); for
    every V the result satisfies L(analysis(x)) = x.  L is returned as a
    general coefficient-to-point map because it is linear only when the
    frame-map inverse is.
    """

    def evaluate(a: SeqVec) -> np.ndarray:
        x = invert_frame_map(F, synthesis(F, a), cfg)
        return x + V.apply(a - analysis(F, x, check=False))

    return CoeffMap(evaluate, label=f"left-inverse({V.label or 'V'})")


def dual_from_parameters(
    F: Frame,
    U: LipOperatorU,
    V: LinOperatorV,
    cfg: SolverCfg = DEFAULT_SOLVER,
    probe_starts: int = 20,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
) -> Frame:
    """Candidate dual frame from the (U, V) parametrization.

    Maps: g_n(x) = f_n(S^{-1} x) + coordinate_n(U x) - f_n(S^{-1} synthesis(U x)).
    Vectors: w_n = S^{-1} tau_n + V e_n - V analysis(S^{-1} tau_n).

    The combined reconstruction map S^{-1} + V U - V analysis S^{-1} synthesis U
    must be invertible; that is probed (not proven) by running the solver
    against ``probe_starts`` seeded targets.  The duality identity is then
    verified on samples; failure raises DualityError.
    """
    if V.matrix.shape != (F.M.ambient_dim, F.N):
        raise FrameMismatchError(
            f"V must be {F.M.ambient_dim} x {F.N}, got {V.matrix.shape}"
        )
    inv = _PointMemo(lambda y: invert_frame_map(F, y, cfg))
    u_of = _PointMemo(lambda x: U.eval(x))
    inv_synth_u = _PointMemo(lambda x: inv(synthesis(F, u_of(x))))

    maps = tuple(
        LipMap(
            eval=(
                lambda x, n=n, m=m:
                m.eval(inv(x)) + u_of(x).entries[n] - m.eval(inv_synth_u(x))
            ),
            label=f"dual map {n + 1}",
        )
        for n, m in enumerate(F.f)
    )

    omega = []
    for n in range(F.N):
        w = inv(F.tau[n])
        omega.append(w + V.column(n) - V.matrix @ analysis(F, w, check=False).entries)
    omega = np.array(omega)
    for n, w in enumerate(omega):
        if not F.M.member(w, membership_slack(F, w, cfg)):
            raise MembershipError(f"dual vector {n + 1} = {w} left the subset")

    def composite(x):
        return (
            inv(x)
            + V.apply(u_of(x))
            - V.matrix @ analysis(F, inv_synth_u(x), check=False).entries
        )

    for x0 in sample_points(F.M, probe_starts, seed + 1):
        target = composite(x0)
        try:
            invert_map(composite, target, cfg, F.M.norm, start=target)
        except (ConvergenceError, DivergenceError) as exc:
            raise NotInvertibleError(
                f"reconstruction map failed its invertibility probe: {exc}"
            ) from exc

    G = Frame(
        M=F.M, p=F.p, f=maps, tau=omega,
        tail_bound=F.tail_bound, kind_hint="unverified",
    )
    if not is_dual(F, G, samples=samples, seed=seed, tol=tol):
        raise DualityError(
            "candidate frame failed the duality identity on samples; the "
            "reconstruction condition does not hold for these parameters"
        )
    return G
