"""Empirical estimation of the four frame constants with pass/fail verdicts.

The constants bound, over all of M respectively all coefficient space,

* a, b: the two-sided distortion of the frame map,
* c: the Lipschitz constant of the analysis map into lp,
* d: the operator norm of the synthesis map.

Sampling can only certify one side: a_hat is an upper bound on the true
infimum a, while b_hat, c_hat, d_hat are lower bounds on the respective
suprema.  Every report says so in its notes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import LipFrameError
from .frame_core import Frame, analysis, synthesis
from .spaces import MIN_SEP, SeqVec, SubsetSpec, basis_vector, lp_norm, sample_pairs

VERDICT_ASF = "certified-ASF"
VERDICT_BS = "certified-BS"
VERDICT_FAILED_LOWER = "failed(lower-bound)"
VERDICT_FAILED_EVAL = "failed(evaluation)"

#: Frames whose observed lower ratio falls below this are classified as
#: numerically degenerate (not bi-Lipschitz).
DEFAULT_LOWER_FLOOR = 1e-9


@dataclass(frozen=True)
class CertificationReport:
    """Empirical frame constants plus sampling provenance and a verdict."""

    a_hat: float
    b_hat: float
    c_hat: float
    d_hat: float
    n_pairs: int
    seed: int
    verdict: str
    notes: str

    @property
    def certified(self) -> bool:
        return self.verdict.startswith("certified")

    def to_dict(self) -> dict:
        return {
            "a_hat": self.a_hat,
            "b_hat": self.b_hat,
            "c_hat": self.c_hat,
            "d_hat": self.d_hat,
            "n_pairs": self.n_pairs,
            "seed": self.seed,
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def estimate_lipschitz(g, M: SubsetSpec, n_pairs: int, seed: int, min_sep: float = MIN_SEP) -> float:
    """Largest difference quotient |g(x) - g(y)| / ||x - y|| over sampled pairs.

    A lower bound on the true Lipschitz constant of g on M.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    best = 0.0
    for x, y in sample_pairs(M, n_pairs, seed, min_sep):
        best = max(best, abs(g.eval(x) - g.eval(y)) / M.norm(x - y))
    return best


def estimate_synthesis_norm(F: Frame, n_probes: int, seed: int) -> float:
    """Largest ratio ||synthesis(a)|| / ||a||_p over probe vectors.

    The probe set always contains all N basis vectors (which attain the norm
    for the worked fixtures) followed by n_probes random unit vectors; a
    lower bound on the true operator norm.
    """
    if n_probes < 1:
        raise ValueError("n_probes must be at least 1")
    best = 0.0
    for n in range(1, F.N + 1):
        e = basis_vector(n, F.N, F.p)
        best = max(best, F.M.norm(synthesis(F, e)) / lp_norm(e))
    rng = np.random.default_rng(seed)
    for _ in range(n_probes):
        raw = rng.standard_normal(F.N)
        if F.M.scalar_field == "complex":
            raw = raw + 1j * rng.standard_normal(F.N)
        a = SeqVec(raw, F.p)
        nrm = lp_norm(a)
        if nrm == 0.0:
            continue
        best = max(best, F.M.norm(synthesis(F, a)) / nrm)
    return best


def certify_frame(
    F: Frame,
    n_pairs: int,
    n_probes: int,
    seed: int,
    min_sep: float = MIN_SEP,
    lower_floor: float = DEFAULT_LOWER_FLOOR,
) -> CertificationReport:
    """Estimate all four constants and attach a verdict.

    a_hat/b_hat come from frame-map difference ratios over sampled pairs,
    c_hat from analysis-map difference ratios on the same pairs, d_hat from
    the synthesis probes.  Any evaluation failure on a sampled point yields
    the failed(evaluation) verdict instead of raising.
    """
    if n_pairs < 1 or n_probes < 1:
        raise ValueError("n_pairs and n_probes must be at least 1")
    notes = (
        f"one-sided empirical certificates: upper bound on the infimum (a_hat), "
        f"lower bounds on the suprema (b_hat, c_hat, d_hat); {n_pairs} pairs at "
        f"min separation {min_sep:g}, {F.N}+{n_probes} synthesis probes; "
        f"subset: {F.M.description or 'unnamed'}"
    )
    try:
        pairs = sample_pairs(F.M, n_pairs, seed, min_sep)
        a_hat = np.inf
        b_hat = 0.0
        c_hat = 0.0
        for x, y in pairs:
            sep = F.M.norm(x - y)
            ax = analysis(F, x)
            ay = analysis(F, y)
            s_ratio = F.M.norm(synthesis(F, ax) - synthesis(F, ay)) / sep
            a_hat = min(a_hat, s_ratio)
            b_hat = max(b_hat, s_ratio)
            c_hat = max(c_hat, lp_norm(ax - ay) / sep)
        d_hat = estimate_synthesis_norm(F, n_probes, seed)
        if not all(np.isfinite(v) for v in (a_hat, b_hat, c_hat, d_hat)):
            return CertificationReport(
                0.0, 0.0, 0.0, 0.0, n_pairs, seed, VERDICT_FAILED_EVAL,
                notes + "; non-finite ratio encountered",
            )
    except (LipFrameError, ArithmeticError, ValueError) as exc:
        return CertificationReport(
            0.0, 0.0, 0.0, 0.0, n_pairs, seed, VERDICT_FAILED_EVAL,
            notes + f"; evaluation failed: {exc}",
        )
    if F.kind_hint == "BS":
        # Bessel target: only the upper bounds are claimed.
        verdict = VERDICT_BS
    elif a_hat < lower_floor:
        verdict = VERDICT_FAILED_LOWER
    else:
        verdict = VERDICT_ASF
    return CertificationReport(
        float(a_hat), float(b_hat), float(c_hat), float(d_hat),
        n_pairs, seed, verdict, notes,
    )
