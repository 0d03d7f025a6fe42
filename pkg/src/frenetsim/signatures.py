"""Shape curvatures: the dimensionless direct-similarity invariants.

For an indicatrix index i, with Q = sqrt(kappa_{i-1}^2 + kappa_i^2):

    kt   = -(dQ/dsigma_i) / Q      (diagonal invariant)
    kt_j = kappa_j / Q             (j = 1..n-1)

as functions of sigma_i. Together these determine a curve up to direct
similarity, which is what similarity_test decides by aligning two
signatures over a sigma shift.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .curves import TRIM, FrenetData, SampledCurve, field_derivative, frenet_apparatus
from .errors import BadIndex, BadParameters, IncompatibleSignatures
from .indicatrix import indicatrix_curve, indicatrix_speed
from .jsonio import render

log = logging.getLogger("frenetsim.signatures")

UNIT_CIRCLE_TOL = 1e-5
MIN_OVERLAP_FRACTION = 0.1
DEFAULT_MATCH_TOL = 1e-2


@dataclass(frozen=True)
class ShapeSignature:
    """Sampled shape-curvature functions over the sigma_i grid.

    ktj has shape (n-1, N): row j-1 is kt_j over the grid. The s field
    carries the underlying arc lengths when the signature was computed
    from a curve (None after JSON round trips); it feeds lambda
    estimation but is not part of the serialized format. notes records
    non-fatal caveats (e.g. extrapolated boundary conventions).
    """

    dimension: int
    index: int
    sigma: np.ndarray
    kt: np.ndarray
    ktj: np.ndarray
    s: np.ndarray | None = field(default=None, compare=False)
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.dimension
        if not 1 <= self.index <= n:
            raise BadIndex(f"index must be in 1..{n}, got {self.index}")
        sig = np.ascontiguousarray(np.asarray(self.sigma, dtype=float))
        kt = np.ascontiguousarray(np.asarray(self.kt, dtype=float))
        ktj = np.ascontiguousarray(np.asarray(self.ktj, dtype=float))
        if kt.shape != sig.shape or ktj.shape != (n - 1, len(sig)):
            raise BadParameters("signature arrays have inconsistent shapes")
        if not np.all(np.diff(sig) > 0):
            raise BadParameters("sigma grid must be strictly increasing")
        if not (np.all(np.isfinite(sig)) and np.all(np.isfinite(kt))
                and np.all(np.isfinite(ktj))):
            raise BadParameters("signature contains non-finite entries")
        i = self.index
        if i == 1:
            if np.any(np.abs(ktj[0] - 1.0) > UNIT_CIRCLE_TOL):
                raise BadParameters("for index 1, kt_1 must be identically 1")
        elif i < n:
            circ = ktj[i - 2] ** 2 + ktj[i - 1] ** 2
            if np.any(np.abs(circ - 1.0) > UNIT_CIRCLE_TOL):
                raise BadParameters(
                    "kt_{i-1}^2 + kt_i^2 must equal 1 on the signature grid"
                )
        for name, arr in (("sigma", sig), ("kt", kt), ("ktj", ktj)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def span(self) -> float:
        return float(self.sigma[-1] - self.sigma[0])


def shape_curvatures(fr: FrenetData, i: int) -> ShapeSignature:
    """Shape curvatures of the V_i-indicatrix, on its sigma_i grid."""
    sphere = indicatrix_curve(fr, i)  # validates i and degeneracy
    sl = slice(TRIM, fr.n_samples - TRIM)
    q = indicatrix_speed(fr, i)[sl]
    sigma = sphere.sigma
    # kt = -(dQ/dsigma)/Q == Q * d(1/Q)/dsigma; the latter differentiates
    # the flatter samples when Q decays exponentially
    kt = q * field_derivative(sigma, 1.0 / q, order=1)
    ktj = fr.kappas[sl].T / q
    return ShapeSignature(fr.dimension, i, sigma, kt, ktj, s=fr.s[sl])


def structure_matrix(fr: FrenetData, i: int, sample_index: int) -> np.ndarray:
    """The n x n coefficient matrix of the scaled-frame structure equations.

    d/dsigma_i of the scaled frame (1/Q) V_k equals this matrix acting
    on the scaled frame: kt on the whole diagonal, +kt_j above it and
    -kt_j below it in the Frenet tridiagonal pattern.
    """
    sig = shape_curvatures(fr, i)
    j = sample_index - TRIM
    if not 0 <= j < len(sig.sigma):
        raise BadIndex(
            f"sample_index {sample_index} outside the retained range "
            f"[{TRIM}, {fr.n_samples - TRIM})"
        )
    n = fr.dimension
    K = np.eye(n) * sig.kt[j]
    for r in range(n - 1):
        K[r, r + 1] += sig.ktj[r, j]
        K[r + 1, r] -= sig.ktj[r, j]
    return K


# ---------------------------------------------------------------------------
# matching


@dataclass(frozen=True)
class MatchResult:
    is_similar: bool
    distance: float
    lambda_est: float
    sigma_shift: float


def _interp_tuple(sig: ShapeSignature, grid: np.ndarray, shift: float = 0.0):
    x = sig.sigma + shift
    rows = [np.interp(grid, x, sig.kt)]
    for j in range(sig.ktj.shape[0]):
        rows.append(np.interp(grid, x, sig.ktj[j]))
    return np.stack(rows)


def signature_distance(a: ShapeSignature, b: ShapeSignature,
                       shift: float = 0.0) -> float:
    """RMS distance between signature tuples over the sigma overlap.

    b's grid is displaced by `shift` before comparison. Returns inf
    when the overlap is shorter than 10% of the shorter signature.
    """
    if a.dimension != b.dimension or a.index != b.index:
        raise IncompatibleSignatures(
            f"cannot compare (n={a.dimension}, i={a.index}) "
            f"with (n={b.dimension}, i={b.index})"
        )
    lo = max(a.sigma[0], b.sigma[0] + shift)
    hi = min(a.sigma[-1], b.sigma[-1] + shift)
    if hi - lo < MIN_OVERLAP_FRACTION * min(a.span, b.span):
        return math.inf
    grid = np.linspace(lo, hi, 512)
    ta = _interp_tuple(a, grid)
    tb = _interp_tuple(b, grid, shift)
    return float(np.sqrt(np.mean(np.sum((ta - tb) ** 2, axis=0))))


def signature_supnorm_deviation(a: ShapeSignature, b: ShapeSignature,
                                shift: float = 0.0) -> float:
    """Componentwise sup-norm deviation over the sigma overlap."""
    if a.dimension != b.dimension or a.index != b.index:
        raise IncompatibleSignatures("signatures are not comparable")
    lo = max(a.sigma[0], b.sigma[0] + shift)
    hi = min(a.sigma[-1], b.sigma[-1] + shift)
    if hi <= lo:
        return math.inf
    grid = np.linspace(lo, hi, 512)
    return float(np.abs(_interp_tuple(a, grid) - _interp_tuple(b, grid, shift)).max())


def _golden_minimize(f, lo: float, hi: float, iterations: int = 60):
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - phi * (hi - lo)
    x2 = lo + phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def similarity_test(curve_a: SampledCurve, curve_b: SampledCurve, i: int,
                    tol: float = DEFAULT_MATCH_TOL) -> MatchResult:
    """Decide direct-similarity equivalence through shape signatures.

    Minimizes signature_distance over the sigma shift (coarse grid then
    golden-section refinement); similar iff the minimum is <= tol.
    lambda_est is the ratio of arc lengths swept over the matched sigma
    window, which equals the similarity scale for genuinely similar
    curves.
    """
    if curve_a.dimension != curve_b.dimension:
        raise IncompatibleSignatures("curves live in different dimensions")
    if not tol > 0:
        raise BadParameters("tol must be positive")
    fa = frenet_apparatus(curve_a)
    fb = frenet_apparatus(curve_b)
    sa = shape_curvatures(fa, i)
    sb = shape_curvatures(fb, i)

    lo = sa.sigma[0] - sb.sigma[-1]
    hi = sa.sigma[-1] - sb.sigma[0]
    margin = MIN_OVERLAP_FRACTION * min(sa.span, sb.span)
    lo += margin
    hi -= margin
    if hi <= lo:
        shifts = np.array([0.5 * (lo + hi)])
    else:
        shifts = np.linspace(lo, hi, 201)
    dists = np.array([signature_distance(sa, sb, sh) for sh in shifts])
    best = int(np.argmin(dists))
    blo = shifts[max(0, best - 1)]
    bhi = shifts[min(len(shifts) - 1, best + 1)]
    shift, dist = _golden_minimize(lambda sh: signature_distance(sa, sb, sh),
                                   float(blo), float(bhi))
    if dists[best] < dist:
        shift, dist = float(shifts[best]), float(dists[best])

    w_lo = max(sa.sigma[0], sb.sigma[0] + shift)
    w_hi = min(sa.sigma[-1], sb.sigma[-1] + shift)
    ds_a = float(np.interp(w_hi, sa.sigma, sa.s)
                 - np.interp(w_lo, sa.sigma, sa.s))
    ds_b = float(np.interp(w_hi - shift, sb.sigma, sb.s)
                 - np.interp(w_lo - shift, sb.sigma, sb.s))
    lam = ds_b / ds_a if ds_a > 0 else math.nan
    ok = bool(dist <= tol)
    log.debug("match: distance %.3g at shift %.3g, lambda %.6g", dist, shift, lam)
    return MatchResult(ok, float(dist), lam, float(shift))


# ---------------------------------------------------------------------------
# JSON round trip


def signature_to_json(sig: ShapeSignature) -> str:
    return render({
        "dimension": sig.dimension,
        "index": sig.index,
        "sigma": sig.sigma,
        "kt": sig.kt,
        "ktj": sig.ktj,
    })


def signature_from_json(text: str) -> ShapeSignature:
    try:
        obj = json.loads(text)
        return ShapeSignature(
            int(obj["dimension"]), int(obj["index"]),
            np.array(obj["sigma"], dtype=float),
            np.array(obj["kt"], dtype=float),
            np.array(obj["ktj"], dtype=float),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParameters(f"malformed signature JSON: {exc}") from None
