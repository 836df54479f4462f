"""Worked fixture frames with closed-form oracles.

disc
    Moebius-power maps (z/(1+z))^n with unit vectors on the closed disc
    |z| <= |z+1|/2 (equivalently center 1/3, radius 2/3), p = 1.  On the
    disc |z/(1+z)| <= 1/2, so the frame map is a geometric series summing
    to z with truncation tail at most 2^-N, and map n is Lipschitz with
    constant at most (9/4) n 2^(1-n).

log
    Exponential-series maps 1, log x, (log x)^2/2!, ... on the half line
    [1, inf) with unit vectors, p = 1.  The analysis map is an isometry
    (the coefficient differences telescope to |x - y|) and the frame map
    sums back to x.  Sampling is restricted to a bounded window.

linear
    f_n(x) = (row n of U) . x and tau_n = column n of V on the full space,
    so the frame map is the matrix V U and everything is exact.

orthogonal pair
    Two identity frames on the real line with disjoint index support;
    their mixed compositions vanish identically.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import FrameMismatchError, NotInvertibleError, SchemaError
from .frame_core import Frame, LipMap, validate_tau_membership
from .spaces import SubsetSpec

_DISC_CENTER = 1.0 / 3.0
_DISC_RADIUS = 2.0 / 3.0


def full_space(
    dim: int, scalar_field: str = "real", ambient_q: float | str = 2.0, description: str = ""
) -> SubsetSpec:
    """The whole ambient space with a standard-normal sampler."""

    def contains(pt, tol):
        return True

    def sampler(rng, n):
        pts = rng.standard_normal((n, dim))
        if scalar_field == "complex":
            pts = pts + 1j * rng.standard_normal((n, dim))
        return pts.astype(complex)

    name = "C" if scalar_field == "complex" else "R"
    return SubsetSpec(
        ambient_dim=dim,
        scalar_field=scalar_field,
        contains=contains,
        sampler=sampler,
        description=description or f"full space {name}^{dim}",
        ambient_q=ambient_q,
    )


def _disc_contains(pt, tol):
    z = pt[0]
    return abs(z) <= 0.5 * abs(z + 1.0) + tol


def _disc_sampler(rng, n):
    # area-uniform, rejection-free polar parametrization
    radius = _DISC_RADIUS * np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    z = _DISC_CENTER + radius * np.exp(1j * angle)
    return z.reshape(n, 1)


def disc_frame(N: int) -> Frame:
    """Moebius-power frame on the disc |z| <= |z+1|/2, truncated at N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    M = SubsetSpec(
        ambient_dim=1,
        scalar_field="complex",
        contains=_disc_contains,
        sampler=_disc_sampler,
        description="disc |z| <= |z+1|/2 (center 1/3, radius 2/3)",
        ambient_q=2.0,
    )
    maps = tuple(
        LipMap(
            eval=(lambda pt, k=k: (pt[0] / (1.0 + pt[0])) ** k),
            claimed_lip=2.25 * k * 2.0 ** (1 - k),
            label=f"(z/(1+z))^{k}",
        )
        for k in range(1, N + 1)
    )
    tau = np.ones((N, 1), dtype=complex)
    tail = 2.0 ** (-N)
    frame = Frame(
        M=M, p=1.0, f=maps, tau=tau,
        tail_bound=(lambda x, _t=tail: _t), kind_hint="SF",
    )
    validate_tau_membership(frame)
    return frame


def _log_lip_constant(k: int) -> float:
    # sup over [1, inf) of the derivative (log x)^(k-1) / ((k-1)! x),
    # attained at log x = k - 1
    if k == 1:
        return 1.0
    t = float(k - 1)
    return math.exp(t * (math.log(t) - 1.0) - math.lgamma(k))


def log_frame(N: int, right_end: float = 10.0) -> Frame:
    """Exponential-series frame on [1, inf), sampled on [1, right_end].

    Maps are indexed so that the first one is the constant 1 and map k+1 is
    (log x)^k / k!.  The tail bound is the Taylor remainder
    x (log x)^N / N!.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if right_end <= 1.0:
        raise ValueError("right_end must exceed 1")

    def contains(pt, tol):
        z = pt[0]
        return z.real >= 1.0 - tol and abs(z.imag) <= tol

    def sampler(rng, n):
        return rng.uniform(1.0, right_end, n).astype(complex).reshape(n, 1)

    maps = [LipMap(eval=(lambda pt: 1.0 + 0.0j), claimed_lip=0.0, label="1")]
    for k in range(1, N):
        maps.append(
            LipMap(
                eval=(lambda pt, k=k: np.log(pt[0]) ** k / math.factorial(k)),
                claimed_lip=_log_lip_constant(k),
                label=f"(log x)^{k}/{k}!",
            )
        )

    def tail(pt, _n=N):
        t = math.log(max(pt[0].real, 1.0))
        if t == 0.0:
            return 0.0
        return math.exp(t + _n * math.log(t) - math.lgamma(_n + 1))

    M = SubsetSpec(
        ambient_dim=1,
        scalar_field="real",
        contains=contains,
        sampler=sampler,
        description=f"half line [1, inf), sampling window [1, {right_end:g}]",
        ambient_q=2.0,
    )
    frame = Frame(
        M=M, p=1.0, f=tuple(maps), tau=np.ones((N, 1), dtype=complex),
        tail_bound=tail, kind_hint="SF",
    )
    validate_tau_membership(frame)
    return frame


def _holder_conjugate_norm(row: np.ndarray, q: float | str) -> float:
    # |row . x| <= ||row||_q' ||x||_q
    a = np.abs(row)
    if q == "sup":
        return float(a.sum())
    q = float(q)
    if q == 1.0:
        return float(a.max())
    if q == 2.0:
        return float(np.linalg.norm(a))
    conj = q / (q - 1.0)
    return float((a ** conj).sum() ** (1.0 / conj))


def linear_frame(U_rows, V_cols, p: float = 1.0, ambient_q: float | str = 2.0) -> Frame:
    """Frame from a pair of matrices on the full space.

    ``U_rows`` is N x dim (row n gives the n-th functional), ``V_cols`` is
    dim x N (column n gives the n-th vector).  The frame map is the matrix
    V U; a numerically singular product raises NotInvertibleError.  The tail
    bound is exactly zero.
    """
    U = np.atleast_2d(np.asarray(U_rows, dtype=complex))
    V = np.atleast_2d(np.asarray(V_cols, dtype=complex))
    if U.shape[0] != V.shape[1] or U.shape[1] != V.shape[0]:
        raise FrameMismatchError(
            f"U of shape {U.shape} and V of shape {V.shape} do not pair up"
        )
    N, dim = U.shape
    S = V @ U
    with np.errstate(all="ignore"):
        cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > 1e12:
        raise NotInvertibleError(
            f"V U is numerically singular (condition number {cond:.3e})"
        )
    field = "complex" if (U.imag.any() or V.imag.any()) else "real"
    M = full_space(dim, field, ambient_q)
    maps = tuple(
        LipMap(
            eval=(lambda pt, row=U[n]: row @ pt),
            claimed_lip=_holder_conjugate_norm(U[n], ambient_q),
            label=f"row {n + 1} of U",
        )
        for n in range(N)
    )
    kind = "SF" if np.array_equal(S, np.eye(dim, dtype=complex)) else "ASF"
    return Frame(
        M=M, p=p, f=maps, tau=V.T.copy(),
        tail_bound=(lambda x: 0.0), kind_hint=kind,
    )


def orthogonal_pair() -> tuple[Frame, Frame]:
    """Two identity frames on the real line with disjoint index support.

    First frame: maps (x, 0) with vectors (1, 0).  Second: maps (0, x) with
    vectors (0, 1).  Both have identity frame maps; the mixed compositions
    vanish identically, so the pair is orthogonal.
    """
    M = full_space(1, "real", 2.0, "real line")
    zero = LipMap(eval=(lambda pt: 0.0 + 0.0j), claimed_lip=0.0, label="0")
    ident = LipMap(eval=(lambda pt: pt[0]), claimed_lip=1.0, label="x")
    first = Frame(
        M=M, p=1.0, f=(ident, zero),
        tau=np.array([[1.0], [0.0]], dtype=complex),
        tail_bound=(lambda x: 0.0), kind_hint="SF",
    )
    second = Frame(
        M=M, p=1.0, f=(zero, ident),
        tau=np.array([[0.0], [1.0]], dtype=complex),
        tail_bound=(lambda x: 0.0), kind_hint="SF",
    )
    return first, second


def _parse_params(rest: str) -> dict[str, str]:
    params: dict[str, str] = {}
    for chunk in rest.split(","):
        if not chunk.strip():
            continue
        key, eq, value = chunk.partition("=")
        if not eq:
            raise SchemaError(f"fixture parameter '{chunk.strip()}' is not key=value")
        params[key.strip()] = value.strip()
    return params


def _int_param(params: dict, key: str, default: int) -> int:
    raw = params.pop(key, None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"fixture parameter '{key}' must be an integer, got '{raw}'") from None


def _float_param(params: dict, key: str, default: float) -> float:
    raw = params.pop(key, None)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise SchemaError(f"fixture parameter '{key}' must be a number, got '{raw}'") from None


def _matrix_param(params: dict, key: str) -> list[list[float]]:
    raw = params.pop(key, None)
    if raw is None:
        raise SchemaError(f"linear fixture requires the '{key}' matrix")
    rows = []
    for row in raw.split(";"):
        try:
            rows.append([float(v) for v in row.split()])
        except ValueError:
            raise SchemaError(f"matrix '{key}' has a non-numeric entry in row '{row}'") from None
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise SchemaError(f"matrix '{key}' must have rectangular nonempty rows")
    return rows


def _reject_unknown(params: dict, name: str) -> None:
    if params:
        raise SchemaError(f"unknown parameter(s) {sorted(params)} for fixture '{name}'")


def parse_fixture(text: str):
    """Build a fixture from an id string.

    Accepted forms: ``disc:N=30``, ``log:N=40,right=10``,
    ``linear:U=<rows>,V=<rows>`` with semicolon-separated rows and
    whitespace-separated entries (optionally ``p=...``), and ``orthopair``,
    which returns the frame pair.  Parameters have fixture defaults.
    """
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    params = _parse_params(rest)
    if name == "disc":
        N = _int_param(params, "N", 30)
        _reject_unknown(params, name)
        return disc_frame(N)
    if name == "log":
        N = _int_param(params, "N", 40)
        right = _float_param(params, "right", 10.0)
        _reject_unknown(params, name)
        return log_frame(N, right)
    if name == "linear":
        U = _matrix_param(params, "U")
        V = _matrix_param(params, "V")
        p = _float_param(params, "p", 1.0)
        _reject_unknown(params, name)
        if p < 1.0:
            raise SchemaError(f"'p' must satisfy 1 <= p < inf, got {p:g}")
        return linear_frame(U, V, p=p)
    if name == "orthopair":
        _reject_unknown(params, name)
        return orthogonal_pair()
    raise SchemaError(f"unknown fixture '{name}' (expected disc, log, linear or orthopair)")
