"""Similarity transport and recovery, orthogonality, interpolation, direct sums.

Two frames are similar when one arises from the other by composing the maps
with a bi-Lipschitz self-map of M and pushing the vectors through an
invertible linear map preserving M; similar frames share their coefficient
projection.  Orthogonal frames have vanishing mixed compositions and can be
blended (interpolation) or stacked on the doubled subset (direct sum).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import LipFrameError, MembershipError, PreconditionError
from .frame_core import (
    DEFAULT_SOLVER,
    Frame,
    LipMap,
    SolverCfg,
    analysis,
    check_compatible,
    coefficient_projection,
    frame_map,
    invert_frame_map,
    synthesis,
    validate_tau_membership,
)
from .spaces import SubsetSpec, basis_vector, lp_norm, sample_points


@dataclass(frozen=True)
class BiLipMap:
    """A bi-Lipschitz self-map of the subset, with optional inverse."""

    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = ""


@dataclass(frozen=True)
class AmbientLinMap:
    """A bounded linear self-map of the ambient space, in matrix form."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.atleast_2d(np.asarray(self.matrix, dtype=complex)).copy()
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"ambient operator must be square, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator matrix must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x


@dataclass(frozen=True)
class PointMap:
    """A recovered point-to-point transform (linear in exact arithmetic)."""

    forward: Callable[[np.ndarray], np.ndarray]
    label: str = ""


@dataclass(frozen=True)
class CheckCfg:
    """Sampling budget for precondition and postcondition checks."""

    samples: int = 200
    seed: int = 0
    tol: float = 1e-9


def scalar_bi_lip(a: float) -> BiLipMap:
    """x -> a*x as a self-map; invertible when a is nonzero."""
    a = complex(a)
    inverse = (lambda x: x / a) if a != 0 else None
    return BiLipMap(lambda x: a * x, inverse, label=f"scale({a.real:g})")


def scalar_ambient(c: float, dim: int) -> AmbientLinMap:
    """c times the identity on the ambient space."""
    return AmbientLinMap(complex(c) * np.eye(dim), label=f"{c:g}*I")


def _op_norm_bound(matrix: np.ndarray, M: SubsetSpec) -> float:
    """Upper bound on the induced operator norm for M's norm.

    Exact for coordinate q-norms with q in {1, 2, sup}; the general case and
    custom product norms use interpolation between the column and row sums.
    """
    m = np.abs(matrix)
    col = float(m.sum(axis=0).max())
    row = float(m.sum(axis=1).max())
    if M.norm_fn is not None:
        return max(col, row)
    if M.ambient_q == "sup":
        return row
    q = float(M.ambient_q)
    if q == 1.0:
        return col
    if q == 2.0:
        return float(np.linalg.norm(matrix, 2))
    return col ** (1.0 / q) * row ** (1.0 - 1.0 / q)


def apply_similarity(
    F: Frame,
    point_transform: BiLipMap,
    ambient_transform: AmbientLinMap,
    check: CheckCfg = CheckCfg(),
) -> Frame:
    """Transport a frame along a similarity.

    New maps compose the old ones with the point transform; new vectors push
    the old ones through the ambient transform.  The transformed vectors must
    stay inside M (checked exactly), and the point transform must map M into
    itself (sample-checked).
    """
    new_tau = (ambient_transform.matrix @ F.tau.T).T
    for n, w in enumerate(new_tau):
        if not F.M.member(w):
            raise MembershipError(
                f"transformed vector {n + 1} = {w} left {F.M.description or 'M'}"
            )
    for x in sample_points(F.M, check.samples, check.seed):
        if not F.M.member(point_transform.forward(x)):
            raise PreconditionError(
                f"point transform leaves the subset at sampled point {x}"
            )
    maps = tuple(
        LipMap(
            eval=(lambda x, m=m: m.eval(point_transform.forward(x))),
            label=f"{m.label} o {point_transform.label or 'T'}" if m.label else "",
        )
        for m in F.f
    )
    bound = _op_norm_bound(ambient_transform.matrix, F.M)

    def tail(x, _b=bound):
        return _b * float(F.tail_bound(point_transform.forward(x)))

    return Frame(M=F.M, p=F.p, f=maps, tau=new_tau, tail_bound=tail, kind_hint="unverified")


def recover_similarity(
    F: Frame, G: Frame, cfg: SolverCfg = DEFAULT_SOLVER
) -> tuple[BiLipMap, PointMap]:
    """Recover the unique transports between two similar frames.

    Point transform: S_F^{-1} o synthesis_F o analysis_G.  Ambient transform:
    synthesis_G o analysis_F o S_F^{-1}.  The returned inverse of the point
    transform swaps the roles of the frames, so it needs S_G invertible too.
    """
    check_compatible(F, G)

    def forward(x):
        return invert_frame_map(F, synthesis(F, analysis(G, x)), cfg)

    def backward(x):
        return invert_frame_map(G, synthesis(G, analysis(F, x)), cfg)

    def ambient(y):
        return synthesis(G, analysis(F, invert_frame_map(F, y, cfg), check=False))

    return (
        BiLipMap(forward, backward, label="recovered point transform"),
        PointMap(ambient, label="recovered ambient transform"),
    )


def projections_equal(
    F: Frame,
    G: Frame,
    n_probes: int = 64,
    seed: int = 0,
    tol: float = 1e-8,
    cfg: SolverCfg = DEFAULT_SOLVER,
) -> bool:
    """Whether the two coefficient projections agree on probe vectors.

    Probes are the N basis vectors plus analysis images of sampled points;
    the latter guarantee that every probe synthesizes into the frame-map
    range, which both projections require.
    """
    check_compatible(F, G)
    probes = [basis_vector(n, F.N, F.p) for n in range(1, F.N + 1)]
    for x in sample_points(F.M, n_probes, seed):
        probes.append(analysis(F, x))
    for a in probes:
        pF = coefficient_projection(F, a, cfg)
        pG = coefficient_projection(G, a, cfg)
        if lp_norm(pF - pG) > tol:
            return False
    return True


def is_orthogonal(F: Frame, G: Frame, samples: int = 200, seed: int = 0, tol: float = 1e-9) -> bool:
    """True when both mixed frame maps vanish on all sampled points."""
    check_compatible(F, G)
    for x in sample_points(F.M, samples, seed):
        if F.M.norm(synthesis(F, analysis(G, x))) > tol:
            return False
        if F.M.norm(synthesis(G, analysis(F, x))) > tol:
            return False
    return True


def interpolate(
    F: Frame,
    G: Frame,
    A: BiLipMap,
    B: BiLipMap,
    C: AmbientLinMap,
    D: AmbientLinMap,
    check: CheckCfg = CheckCfg(),
) -> Frame:
    """Blend two orthogonal identity frames through the quadruple (A, B, C, D).

    New maps evaluate f_n(A x) + g_n(B x); new vectors are C tau_n + D w_n.
    Requires C A + D B = identity on M, orthogonality, identity frame maps,
    and all four range conditions A(M), B(M) inside M and C(M), D(M) inside
    M; each failure raises PreconditionError naming the check.  The blended
    frame map is verified to be the identity on the same samples.
    """
    check_compatible(F, G)
    pts = sample_points(F.M, check.samples, check.seed)
    if not is_orthogonal(F, G, check.samples, check.seed, check.tol):
        raise PreconditionError("orthogonality: the two frames are not orthogonal")
    for name, H in (("first", F), ("second", G)):
        slack = check.tol + 2.0 * max(float(H.tail_bound(x)) for x in pts)
        dev = max(F.M.norm(frame_map(H, x) - x) for x in pts)
        if dev > slack:
            raise PreconditionError(
                f"identity frame map ({name} frame): deviation {dev:.3e} exceeds {slack:.3e}"
            )
    for label, T in (("A", A.forward), ("B", B.forward)):
        for x in pts:
            if not F.M.member(T(x)):
                raise PreconditionError(f"range: {label}(M) is not inside M at {x}")
    for label, L in (("C", C), ("D", D)):
        for x in pts:
            if not F.M.member(L.apply(x)):
                raise PreconditionError(f"range: {label}(M) is not inside M at {x}")
    partition_dev = max(
        F.M.norm(C.apply(A.forward(x)) + D.apply(B.forward(x)) - x) for x in pts
    )
    if partition_dev > check.tol:
        raise PreconditionError(
            f"partition: C A + D B differs from the identity by {partition_dev:.3e} on samples"
        )

    maps = tuple(
        LipMap(
            eval=(lambda x, mf=mf, mg=mg: mf.eval(A.forward(x)) + mg.eval(B.forward(x))),
            label=f"blend({mf.label}, {mg.label})",
        )
        for mf, mg in zip(F.f, G.f)
    )
    tau = (C.matrix @ F.tau.T).T + (D.matrix @ G.tau.T).T
    c_bound = _op_norm_bound(C.matrix, F.M)
    d_bound = _op_norm_bound(D.matrix, F.M)

    def tail(x):
        return c_bound * float(F.tail_bound(A.forward(x))) + d_bound * float(
            G.tail_bound(B.forward(x))
        )

    H = Frame(M=F.M, p=F.p, f=maps, tau=tau, tail_bound=tail, kind_hint="SF")
    validate_tau_membership(H)
    post_slack = check.tol + 2.0 * max(tail(x) for x in pts)
    post_dev = max(F.M.norm(frame_map(H, x) - x) for x in pts)
    if post_dev > post_slack:
        raise LipFrameError(
            f"interpolated frame map deviates from the identity by {post_dev:.3e}"
        )
    return H


def direct_sum(F: Frame, G: Frame, check: CheckCfg = CheckCfg()) -> Frame:
    """Frame on the doubled subset from two orthogonal frames.

    Maps send a stacked point (x, y) to f_n(x) + g_n(y); vectors stack as
    (tau_n, w_n).  The product subset carries the p-sum norm
    (||u||^p + ||v||^p)^(1/p), so the summed frame constants stay
    dimensionless; the frame map acts blockwise.
    """
    check_compatible(F, G)
    if not is_orthogonal(F, G, check.samples, check.seed, check.tol):
        raise PreconditionError("orthogonality: direct sum requires orthogonal frames")
    d = F.M.ambient_dim
    p = F.p
    MF, MG = F.M, G.M

    def contains(pt, tol):
        return MF.contains(pt[:d], tol) and MG.contains(pt[d:], tol)

    def sampler(rng, n):
        left = np.asarray(MF.sampler(rng, n), dtype=complex)
        right = np.asarray(MG.sampler(rng, n), dtype=complex)
        return np.hstack([left.reshape(n, d), right.reshape(n, d)])

    def norm_fn(v):
        return float((MF.norm(v[:d]) ** p + MG.norm(v[d:]) ** p) ** (1.0 / p))

    field = "complex" if "complex" in (MF.scalar_field, MG.scalar_field) else "real"
    product = SubsetSpec(
        ambient_dim=2 * d,
        scalar_field=field,
        contains=contains,
        sampler=sampler,
        description=(
            f"({MF.description or 'M'}) (+) ({MG.description or 'M'}), "
            f"p-sum norm with p={p:g}"
        ),
        ambient_q=p,
        norm_fn=norm_fn,
    )
    maps = tuple(
        LipMap(
            eval=(lambda pt, mf=mf, mg=mg: mf.eval(pt[:d]) + mg.eval(pt[d:])),
            label=f"{mf.label} (+) {mg.label}",
        )
        for mf, mg in zip(F.f, G.f)
    )
    tau = np.hstack([F.tau, G.tau])

    def tail(pt):
        return float(
            (float(F.tail_bound(pt[:d])) ** p + float(G.tail_bound(pt[d:])) ** p)
            ** (1.0 / p)
        )

    return Frame(M=product, p=p, f=maps, tau=tau, tail_bound=tail, kind_hint="unverified")
