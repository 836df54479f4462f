"""Ambient vectors, subset descriptions and truncated lp coefficient vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SamplerExhaustedError

#: Slack applied to membership-predicate inequalities so that boundary points
#: (where the defining inequality is tight) are accepted.
MEMBERSHIP_TOL = 1e-12

#: Default minimum pair separation for difference-quotient sampling; ratios at
#: smaller separations are numerically unstable and get discarded, not used.
MIN_SEP = 1e-6

#: Sampler draws happen in fixed-size chunks so that two runs with the same
#: seed consume the generator identically regardless of the requested count.
_PAIR_CHUNK = 256

#: A point of the ambient space: a 1-D complex coordinate array.  Real spaces
#: use the same representation with vanishing imaginary parts.
Point = np.ndarray


def as_point(value, dim: int | None = None) -> np.ndarray:
    """Coerce a scalar or sequence to a 1-D complex coordinate array."""
    pt = np.atleast_1d(np.asarray(value, dtype=complex))
    if pt.ndim != 1:
        raise ValueError(f"a point is a scalar or 1-D vector, got shape {pt.shape}")
    if dim is not None and pt.shape[0] != dim:
        raise ValueError(f"expected a point of dimension {dim}, got {pt.shape[0]}")
    if not np.all(np.isfinite(pt)):
        raise ValueError("point coordinates must be finite")
    return pt


def bucket_key(point, decimals: int = 12) -> tuple:
    """Hashable key identifying a point up to 10**-decimals per coordinate."""
    pt = np.atleast_1d(np.asarray(point, dtype=complex))
    return tuple(np.round(pt.real, decimals)) + tuple(np.round(pt.imag, decimals))


@dataclass(frozen=True)
class SubsetSpec:
    """A subset M of a finite-dimensional real or complex space.

    ``contains(point, tol)`` is the membership predicate; predicates written
    as inequalities must accept points violating them by at most ``tol``.
    ``sampler(rng, n)`` returns an ``(n, ambient_dim)`` array of members and
    is a pure function of the generator state, which makes every sampling
    routine deterministic for a fixed seed.  ``norm_fn`` overrides the
    coordinatewise q-norm (used by product constructions).
    """

    ambient_dim: int
    scalar_field: str  # "real" or "complex"
    contains: Callable[[np.ndarray, float], bool]
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    description: str = ""
    ambient_q: float | str = 2.0  # exponent of the coordinate norm, or "sup"
    norm_fn: Callable[[np.ndarray], float] | None = None

    def member(self, point: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
        return bool(self.contains(point, tol))

    def norm(self, v: np.ndarray) -> float:
        if self.norm_fn is not None:
            return float(self.norm_fn(v))
        if self.ambient_q == "sup":
            return float(np.max(np.abs(v)))
        q = float(self.ambient_q)
        if q == 1.0:
            return float(np.sum(np.abs(v)))
        if q == 2.0:
            return float(np.linalg.norm(v))
        return float(np.sum(np.abs(v) ** q) ** (1.0 / q))


@dataclass(frozen=True)
class SeqVec:
    """A truncated lp coefficient vector: N entries plus the exponent p."""

    entries: np.ndarray
    p: float

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.entries, dtype=complex)).copy()
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise ValueError("entries must form a nonempty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")
        p = float(self.p)
        if not (1.0 <= p < np.inf):
            raise ValueError(f"exponent must satisfy 1 <= p < inf, got {self.p}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "p", p)

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def _compat(self, other: "SeqVec") -> None:
        if self.N != other.N or self.p != other.p:
            raise ValueError(
                f"incompatible coefficient vectors: (N={self.N}, p={self.p}) "
                f"vs (N={other.N}, p={other.p})"
            )

    def __add__(self, other: "SeqVec") -> "SeqVec":
        self._compat(other)
        return SeqVec(self.entries + other.entries, self.p)

    def __sub__(self, other: "SeqVec") -> "SeqVec":
        self._compat(other)
        return SeqVec(self.entries - other.entries, self.p)

    def __mul__(self, scalar) -> "SeqVec":
        return SeqVec(self.entries * complex(scalar), self.p)

    __rmul__ = __mul__


def lp_norm(v: SeqVec) -> float:
    """(sum |a_n|^p)^(1/p); zero exactly when v is the zero vector."""
    a = np.abs(v.entries)
    if v.p == 1.0:
        return float(a.sum())
    if v.p == 2.0:
        return float(np.sqrt((a * a).sum()))
    return float((a ** v.p).sum() ** (1.0 / v.p))


def basis_vector(n: int, N: int, p: float) -> SeqVec:
    """The n-th canonical unit coefficient vector, 1-indexed."""
    if not 1 <= n <= N:
        raise IndexError(f"basis index {n} out of range 1..{N}")
    e = np.zeros(N, dtype=complex)
    e[n - 1] = 1.0
    return SeqVec(e, p)


def coordinate(v: SeqVec, n: int) -> complex:
    """The n-th coefficient of v, 1-indexed."""
    if not 1 <= n <= v.N:
        raise IndexError(f"coordinate index {n} out of range 1..{v.N}")
    return complex(v.entries[n - 1])


def sample_points(M: SubsetSpec, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` members of M, deterministic in ``seed``."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    pts = np.asarray(M.sampler(rng, count), dtype=complex)
    return pts.reshape(count, M.ambient_dim)


def sample_pairs(
    M: SubsetSpec, count: int, seed: int, min_sep: float = MIN_SEP
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs (x, y) of members of M with ||x - y|| >= min_sep.

    Draws stream through fixed-size sampler chunks, so a run with the same
    seed and a larger count extends the smaller run's list (nested samples:
    max/min statistics over the pairs are monotone in count).
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if min_sep <= 0:
        raise ValueError("min_sep must be positive")
    pairs: list[tuple[np.ndarray, np.ndarray]] = []
    if count == 0:
        return pairs
    rng = np.random.default_rng(seed)
    budget = 512 + 64 * count
    drawn = 0
    while len(pairs) < count:
        if drawn >= budget:
            raise SamplerExhaustedError(
                f"could not draw {count} pairs separated by {min_sep:g} from "
                f"{M.description or 'the subset'} within {budget} attempts"
            )
        xs = np.asarray(M.sampler(rng, _PAIR_CHUNK), dtype=complex)
        ys = np.asarray(M.sampler(rng, _PAIR_CHUNK), dtype=complex)
        for x, y in zip(xs, ys):
            drawn += 1
            if M.norm(x - y) >= min_sep:
                pairs.append((x, y))
                if len(pairs) == count:
                    break
    return pairs
