"""Curve models and the numerical Frenet apparatus in E^n.

Two evaluation paths feed the same downstream pipeline:

* analytic sources (built-in curves, their similarity images, arclength
  reparameterizations of either) expose exact parameter-space jets;
* raw samples are interpolated once by a B-spline whose knots are
  subsampled to keep high-order derivatives away from the roundoff
  amplification floor.

Either way, jets in the curve parameter are converted to jets in arc
length through truncated-series composition (see series.py), so no
finite differencing of positions ever happens. Frames come from
Gram-Schmidt on the arclength derivatives; curvatures from pivot-norm
ratios, the last one signed by the projection of the n-th derivative
on V_n.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator, make_interp_spline

from .errors import (
    BadParameters,
    DimensionMismatch,
    FrameDegenerate,
    TooFewSamples,
    ZeroSpeed,
)
from .series import (
    flow_series,
    jet_to_derivatives,
    series_compose,
    series_derivative,
    series_mul,
    series_reciprocal,
    series_sqrt,
)

log = logging.getLogger("frenetsim.curves")

# boundary samples trimmed from all downstream signatures
TRIM = 2
# Gram-Schmidt pivot threshold, relative to the raw derivative magnitude
PIVOT_REL = 1e-8
# relative data noise assumed by the knot-stride rule
POSITION_NOISE = 1e-16
FIELD_NOISE = 1e-9
# knot spacing constant (calibrated on self-similar round trips)
STRIDE_C = 1.5
# chord-speed tolerance for the unit_speed parameterization claim
UNIT_SPEED_TOL = 0.05

TAU = 2.0 * math.pi


def min_samples(dimension: int) -> int:
    """Smallest admissible sample count for an n-dimensional analysis."""
    return 2 * (dimension + 2)


# ---------------------------------------------------------------------------
# curve models


@dataclass(frozen=True)
class BuiltinCurve:
    """Analytic fixture curve with exact derivatives of every order.

    kind is one of circle, helix, log_spiral, line, custom_poly; params
    holds the scalar parameters and t_span the default parameter window
    used when the curve is sampled or reparameterized.
    """

    kind: str
    dimension: int
    params: tuple = ()
    t_span: tuple = (0.0, TAU)

    def __post_init__(self):
        if len(self.t_span) != 2 or not self.t_span[0] < self.t_span[1]:
            raise BadParameters(
                f"t_span must be an increasing pair, got {self.t_span}")


def circle(r: float, t_span=(0.0, TAU)) -> BuiltinCurve:
    """Circle of radius r in E^2: (r cos t, r sin t)."""
    if not r > 0:
        raise BadParameters("circle radius must be positive")
    return BuiltinCurve("circle", 2, (float(r),), tuple(map(float, t_span)))


def helix(a: float, b: float, t_span=(0.0, TAU)) -> BuiltinCurve:
    """Circular helix in E^3: (a cos t, a sin t, b t)."""
    if not a > 0:
        raise BadParameters("helix radius a must be positive")
    if a * a + b * b <= 0:
        raise BadParameters("helix needs a^2 + b^2 > 0")
    return BuiltinCurve("helix", 3, (float(a), float(b)), tuple(map(float, t_span)))


def log_spiral(c: float, t_span=(0.0, TAU)) -> BuiltinCurve:
    """Logarithmic spiral r(phi) = e^{c phi} in E^2."""
    return BuiltinCurve("log_spiral", 2, (float(c),), tuple(map(float, t_span)))


def line(dimension: int = 3, t_span=(0.0, 1.0)) -> BuiltinCurve:
    """Straight line through the origin along the first axis."""
    if dimension < 2:
        raise BadParameters("line needs dimension >= 2")
    return BuiltinCurve("line", int(dimension), (), tuple(map(float, t_span)))


def custom_poly(coeffs, t_span=(0.0, 1.0)) -> BuiltinCurve:
    """Polynomial curve; coeffs[d] lists ascending-power coefficients of x_d."""
    coeffs = tuple(tuple(float(c) for c in row) for row in coeffs)
    if len(coeffs) < 2:
        raise BadParameters("custom_poly needs at least 2 coordinates")
    return BuiltinCurve("custom_poly", len(coeffs), coeffs, tuple(map(float, t_span)))


@dataclass(frozen=True)
class AffineImage:
    """A direct-similarity image lam * A x + b of another analytic source."""

    source: object
    scale: float
    matrix: np.ndarray
    offset: np.ndarray


@dataclass(frozen=True)
class SampledCurve:
    """Ordered (t, point) samples of a curve in E^n.

    param_kind is "generic", "unit_speed" or "sigma_i"; for "sigma_i"
    param_index records which indicatrix arclength parameterizes the
    curve. source, when present, is an analytic jet source that the
    numerical pipeline uses instead of refitting a spline.
    """

    dimension: int
    t: np.ndarray
    points: np.ndarray
    param_kind: str = "generic"
    param_index: int | None = None
    source: object | None = field(default=None, compare=False)

    def __post_init__(self):
        t = np.ascontiguousarray(np.asarray(self.t, dtype=float))
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        if self.dimension < 2:
            raise BadParameters("curves live in E^n with n >= 2")
        if t.ndim != 1 or len(t) < 2:
            raise BadParameters("need a 1-d parameter array with >= 2 samples")
        if pts.shape != (len(t), self.dimension):
            raise DimensionMismatch(
                f"points shape {pts.shape} does not match "
                f"{len(t)} samples in E^{self.dimension}"
            )
        if not np.all(np.diff(t) > 0):
            raise BadParameters("parameter values must be strictly increasing")
        if self.param_kind not in ("generic", "unit_speed", "sigma_i"):
            raise BadParameters(f"unknown param_kind {self.param_kind!r}")
        if self.param_kind == "sigma_i":
            if self.param_index is None or not 1 <= self.param_index <= self.dimension:
                raise BadParameters("sigma_i parameterization needs a valid index")
        if self.param_kind == "unit_speed":
            chord = np.linalg.norm(np.diff(pts, axis=0), axis=1) / np.diff(t)
            if len(chord) > 2:
                inner = chord[1:-1]
                if np.any(np.abs(inner - 1.0) > UNIT_SPEED_TOL):
                    raise BadParameters(
                        "unit_speed curve has interior chord speeds off 1 by "
                        f"{np.abs(inner - 1.0).max():.3g}"
                    )
        t.setflags(write=False)
        pts.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "points", pts)

    @property
    def n_samples(self) -> int:
        return len(self.t)


def builtin_evaluate(curve: BuiltinCurve, t_values) -> SampledCurve:
    """Sample an analytic curve exactly at the given parameters."""
    t = np.asarray(t_values, dtype=float)
    if t.ndim != 1 or len(t) < 2 or not np.all(np.diff(t) > 0):
        raise BadParameters("t_values must be strictly increasing, length >= 2")
    pts = _jet(curve, t, 0)[0]
    return SampledCurve(curve.dimension, t, pts, "generic", source=curve)


# ---------------------------------------------------------------------------
# jets


def _builtin_jet(bc: BuiltinCurve, tq: np.ndarray, order: int) -> np.ndarray:
    nq = len(tq)
    out = np.zeros((order + 1, nq, bc.dimension))
    if bc.kind == "circle":
        (r,) = bc.params
        z = r * np.exp(1j * tq)
        f = 1.0
        for k in range(order + 1):
            w = z * (1j**k) / f
            out[k, :, 0] = w.real
            out[k, :, 1] = w.imag
            f *= k + 1
    elif bc.kind == "helix":
        a, b = bc.params
        z = a * np.exp(1j * tq)
        f = 1.0
        for k in range(order + 1):
            w = z * (1j**k) / f
            out[k, :, 0] = w.real
            out[k, :, 1] = w.imag
            f *= k + 1
        out[0, :, 2] = b * tq
        if order >= 1:
            out[1, :, 2] = b
    elif bc.kind == "log_spiral":
        (c,) = bc.params
        lam = c + 1j
        z = np.exp(lam * tq)
        f = 1.0
        for k in range(order + 1):
            w = z * lam**k / f
            out[k, :, 0] = w.real
            out[k, :, 1] = w.imag
            f *= k + 1
    elif bc.kind == "line":
        out[0, :, 0] = tq
        if order >= 1:
            out[1, :, 0] = 1.0
    elif bc.kind == "custom_poly":
        from numpy.polynomial import polynomial as P

        for d, row in enumerate(bc.params):
            c = np.asarray(row, dtype=float)
            f = 1.0
            for k in range(order + 1):
                out[k, :, d] = P.polyval(tq, c) / f
                c = P.polyder(c) if len(c) > 1 else np.zeros(1)
                f *= k + 1
    else:
        raise BadParameters(f"unknown builtin curve kind {bc.kind!r}")
    return out


def _jet(source, tq: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients of the curve around each query parameter."""
    if isinstance(source, BuiltinCurve):
        return _builtin_jet(source, tq, order)
    if isinstance(source, AffineImage):
        base = _jet(source.source, tq, order)
        out = source.scale * (base @ source.matrix.T)
        out[0] += source.offset
        return out
    if isinstance(source, _ReparamSource):
        return source.jet(tq, order)
    if isinstance(source, _SplineSource):
        return source.jet(tq, order)
    raise BadParameters(f"cannot evaluate jets of {type(source).__name__}")


def _auto_stride(x: np.ndarray, points: np.ndarray, k: int, noise: float) -> int:
    """Knot stride balancing spline truncation against roundoff blowup.

    Target knot spacing ~ rho * noise^(1/(k+1)) where rho is the
    polyline's length per radian of turning, a cheap feature-scale
    estimate. Fully straight data gets the widest admissible stride.
    """
    ch = np.diff(points, axis=0)
    cl = np.linalg.norm(ch, axis=1)
    if np.any(cl == 0):
        # fall back to the parameter spacing when points repeat
        cl = np.diff(x)
    total = cl.sum()
    u = ch / np.maximum(cl, 1e-300)[:, None]
    cosang = np.clip(np.einsum("jd,jd->j", u[:-1], u[1:]), -1.0, 1.0)
    turning = np.arccos(cosang).sum()
    rho = total / max(turning, 1e-12)
    target = STRIDE_C * rho * noise ** (1.0 / (k + 1))
    stride = max(1, int(round(target / max(np.median(cl), 1e-300))))
    max_stride = max(1, (len(x) - 1) // (3 * (k + 1)))
    return min(stride, max_stride)


@dataclass(frozen=True)
class _SplineSource:
    """Strided B-spline interpolant of raw samples, exposing jets."""

    spline: object
    degree: int

    def jet(self, tq: np.ndarray, order: int) -> np.ndarray:
        out = np.zeros((order + 1, len(tq), self.spline.c.shape[-1]))
        for j in range(order + 1):
            if j <= self.degree:
                out[j] = self.spline(tq, j) / math.factorial(j)
        return out


def _fit_spline_source(curve: SampledCurve) -> _SplineSource:
    n = curve.dimension
    k = n + 4
    if k % 2 == 0:
        k += 1
    stride = _auto_stride(curve.t, curve.points, k, POSITION_NOISE)
    idx = np.arange(0, curve.n_samples, stride)
    if idx[-1] != curve.n_samples - 1:
        idx = np.append(idx, curve.n_samples - 1)
    if len(idx) <= k:
        k = len(idx) - 1
        if k % 2 == 0:
            k -= 1
        if k < 3:
            raise TooFewSamples(
                f"{curve.n_samples} samples are too few to fit a usable spline"
            )
    log.debug("spline fit: degree %d, stride %d, %d knots", k, stride, len(idx))
    spl = make_interp_spline(curve.t[idx], curve.points[idx], k=k)
    return _SplineSource(spl, k)


def _engine(curve) -> object:
    if isinstance(curve, BuiltinCurve):
        return curve
    if isinstance(curve, SampledCurve):
        return curve.source if curve.source is not None else _fit_spline_source(curve)
    if isinstance(curve, (AffineImage, _ReparamSource, _SplineSource)):
        return curve
    raise BadParameters(f"not a curve: {type(curve).__name__}")


def arclength_jet(source, tq: np.ndarray, order: int) -> np.ndarray:
    """Jet of the curve with respect to its own arc length, at parameters tq.

    Entry [j] times j! is d^j alpha / ds^j. Uses the chain rule in
    truncated-series form: invert the local speed series into t(s) by a
    flow recurrence, then compose.
    """
    P = _jet(source, tq, order)
    if order == 0:
        return P
    v = series_derivative(P)
    sp2 = np.zeros(v.shape[:2])
    for d in range(P.shape[-1]):
        sp2 += series_mul(v[..., d], v[..., d])
    speed = series_sqrt(sp2)
    g = series_reciprocal(speed)
    tau = flow_series(g, order)
    out = np.empty_like(P)
    for d in range(P.shape[-1]):
        out[..., d] = series_compose(P[..., d], tau)
    return out


def parameter_speeds(source, tq: np.ndarray) -> np.ndarray:
    """||dalpha/dt|| at the query parameters."""
    j = _jet(source, tq, 1)
    return np.linalg.norm(j[1], axis=1)


# ---------------------------------------------------------------------------
# arc length


def _speed_antiderivative(source, t_lo: float, t_hi: float, n_hint: int):
    """Smooth spline S(t) with S' = speed, plus a pchip inverse for guesses."""
    m = max(4 * n_hint, 4096) + 1
    tt = np.linspace(t_lo, t_hi, m)
    sp = parameter_speeds(source, tt)
    mx = sp.max()
    if mx <= 0 or sp.min() <= 1e-9 * mx:
        raise ZeroSpeed("curve speed vanishes inside the parameter window")
    S = make_interp_spline(tt, sp, k=5).antiderivative()
    svals = S(tt) - S(tt[0])
    guess = PchipInterpolator(svals, tt)
    return S, guess


def arclength_values(curve: SampledCurve) -> np.ndarray:
    """Arc length at each sample, measured from the first sample."""
    src = _engine(curve)
    S, _ = _speed_antiderivative(src, curve.t[0], curve.t[-1], curve.n_samples)
    return np.asarray(S(curve.t) - S(curve.t[0]))


@dataclass(frozen=True)
class _ReparamSource:
    """Arclength reparameterization of another jet source.

    Quer parameters are arc lengths; each jet call inverts s -> t by
    Newton on the speed antiderivative, then chains the inner jet
    through arclength_jet. Keeping the inner source alive avoids
    refitting splines to resampled data, which would destroy the
    high-order derivatives.
    """

    inner: object
    s_spline: object
    s0: float
    t_lo: float
    t_hi: float
    guess: object

    def t_of_s(self, sq: np.ndarray) -> np.ndarray:
        total = float(self.s_spline(self.t_hi)) - self.s0
        t = np.clip(self.guess(np.clip(sq, 0.0, total)), self.t_lo, self.t_hi)
        target = np.asarray(sq, dtype=float) + self.s0
        for _ in range(4):
            f = self.s_spline(t) - target
            t = np.clip(t - f / np.maximum(self.s_spline(t, 1), 1e-300),
                        self.t_lo, self.t_hi)
        return t

    def jet(self, sq: np.ndarray, order: int) -> np.ndarray:
        return arclength_jet(self.inner, self.t_of_s(sq), order)


def arclength_reparam(curve, n_samples: int) -> SampledCurve:
    """Resample a curve uniformly in arc length.

    Accepts a SampledCurve or a BuiltinCurve (sampled over its t_span).
    The result is unit_speed-parameterized and carries a jet source so
    downstream analysis keeps full accuracy.
    """
    if isinstance(curve, BuiltinCurve):
        dim = curve.dimension
        t_lo, t_hi = curve.t_span
        src = curve
    elif isinstance(curve, SampledCurve):
        dim = curve.dimension
        t_lo, t_hi = float(curve.t[0]), float(curve.t[-1])
        src = _engine(curve)
    else:
        raise BadParameters(f"not a curve: {type(curve).__name__}")
    n_samples = int(n_samples)
    if n_samples < min_samples(dim):
        raise TooFewSamples(
            f"need at least {min_samples(dim)} samples in E^{dim}, got {n_samples}"
        )
    S, guess = _speed_antiderivative(src, t_lo, t_hi, n_samples)
    s0 = float(S(t_lo))
    total = float(S(t_hi)) - s0
    rep = _ReparamSource(src, S, s0, t_lo, t_hi, guess)
    s_targets = np.linspace(0.0, total, n_samples)
    tk = rep.t_of_s(s_targets)
    pts = _jet(src, tk, 0)[0]
    return SampledCurve(dim, s_targets, pts, "unit_speed", source=rep)


# ---------------------------------------------------------------------------
# Frenet apparatus


@dataclass(frozen=True)
class FrenetData:
    """Per-sample arc length, position, frame and curvatures.

    frames[j] is the n x n matrix whose ROWS are V_1..V_n at sample j;
    kappas[j] holds kappa_1..kappa_{n-1}. kappa_1..kappa_{n-2} are
    positive; kappa_{n-1} is signed by the det = +1 orientation rule.
    """

    s: np.ndarray
    points: np.ndarray
    frames: np.ndarray
    kappas: np.ndarray

    def __post_init__(self):
        for name in ("s", "points", "frames", "kappas"):
            a = np.asarray(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        n = self.frames.shape[-1]
        if self.frames.shape != (len(self.s), n, n):
            raise DimensionMismatch("frames must be per-sample n x n matrices")
        if self.kappas.shape != (len(self.s), n - 1):
            raise DimensionMismatch("kappas must be per-sample (n-1)-vectors")

    @property
    def dimension(self) -> int:
        return self.frames.shape[-1]

    @property
    def n_samples(self) -> int:
        return len(self.s)


def frenet_apparatus(curve: SampledCurve) -> FrenetData:
    """Compute frames and curvatures at every sample of the curve.

    The curve may carry any parameterization; derivatives are taken
    with respect to arc length internally. Raises FrameDegenerate when
    a Gram-Schmidt pivot collapses (some kappa_i is effectively zero)
    and ZeroSpeed for stationary samples.
    """
    n = curve.dimension
    if curve.n_samples < min_samples(n):
        raise TooFewSamples(
            f"need at least {min_samples(n)} samples in E^{n}, "
            f"got {curve.n_samples}"
        )
    src = _engine(curve)
    speeds = parameter_speeds(src, curve.t)
    mx = speeds.max()
    if mx <= 0 or speeds.min() <= 1e-9 * mx:
        raise ZeroSpeed(
            f"curve speed collapses at sample {int(np.argmin(speeds))}"
        )
    jets = arclength_jet(src, curve.t, n)
    D = jet_to_derivatives(jets)[1:]  # D[j-1] = d^j alpha/ds^j, j = 1..n

    nq = curve.n_samples
    basis = []
    pivots = []
    for j in range(n - 1):
        w = D[j].copy()
        for e in basis:
            w -= np.einsum("qd,qd->q", D[j], e)[:, None] * e
        norm = np.linalg.norm(w, axis=1)
        dmag = np.linalg.norm(D[j], axis=1)
        bad = norm <= PIVOT_REL * dmag
        if np.any(bad):
            q = int(np.argmax(bad))
            raise FrameDegenerate(
                f"Gram-Schmidt pivot {j + 1} collapsed at sample {q} "
                f"(|w|={norm[q]:.3g} vs |d^{j + 1}a/ds^{j + 1}|={dmag[q]:.3g})"
            )
        pivots.append(norm)
        basis.append(w / norm[:, None])

    B = np.stack(basis, axis=1)  # (nq, n-1, n)
    # complete V_n by the cofactor rule; guarantees det(frame) = +1
    Vn = np.empty((nq, n))
    for d in range(n):
        cols = [c for c in range(n) if c != d]
        Vn[:, d] = (-1.0) ** (n - 1 + d) * np.linalg.det(B[:, :, cols])
    frames = np.concatenate([B, Vn[:, None, :]], axis=1)

    if n > 2:
        kap = np.stack([pivots[j + 1] / pivots[j] for j in range(n - 2)], axis=1)
    else:
        kap = np.empty((nq, 0))
    # signed last curvature: V_n-component of the n-th derivative
    last = np.einsum("qd,qd->q", D[n - 1], Vn) / pivots[n - 2]
    kappas = np.concatenate([kap, last[:, None]], axis=1)

    s = arclength_values(curve) if not isinstance(src, _ReparamSource) else (
        curve.t - curve.t[0])
    return FrenetData(np.asarray(s, dtype=float), curve.points, frames, kappas)


def frenet_residual_supnorm(fr: FrenetData) -> float:
    """Sup-norm residual of the frame structure equations.

    Central-differences dV_i/ds at interior samples against the
    skew-tridiagonal reconstruction -kappa_{i-1} V_{i-1} + kappa_i V_{i+1}.
    Converges to 0 at second order on smooth curves.
    """
    n = fr.dimension
    V = fr.frames
    ds = (fr.s[2:] - fr.s[:-2])[:, None, None]
    dV = (V[2:] - V[:-2]) / ds
    kap = fr.kappas[1:-1]
    recon = np.zeros_like(dV)
    for i in range(n):
        if i > 0:
            recon[:, i, :] -= kap[:, i - 1, None] * V[1:-1, i - 1, :]
        if i < n - 1:
            recon[:, i, :] += kap[:, i, None] * V[1:-1, i + 1, :]
    return float(np.linalg.norm(dV - recon, axis=2).max())


# ---------------------------------------------------------------------------
# derived-field differentiation


def field_derivative(x: np.ndarray, y: np.ndarray, order: int = 1,
                     k: int = 5, noise: float = FIELD_NOISE) -> np.ndarray:
    """Derivative of a sampled smooth field y(x) at the sample points.

    Same strided-knot strategy as the position spline, with a noise
    floor matched to fields we computed ourselves (~1e-9 relative).
    y may be 1-d or (N, m).
    """
    y = np.asarray(y, dtype=float)
    flat = y.reshape(len(x), -1)
    xr = x[-1] - x[0]
    scale = max(np.abs(flat).max(), 1e-300)
    graph = np.column_stack([np.asarray(x) / max(xr, 1e-300), flat / scale])
    stride = _auto_stride(x, graph, k, noise)
    idx = np.arange(0, len(x), stride)
    if idx[-1] != len(x) - 1:
        idx = np.append(idx, len(x) - 1)
    kk = min(k, len(idx) - 1)
    if kk % 2 == 0:
        kk -= 1
    if kk < 1:
        raise TooFewSamples("too few samples to differentiate a field")
    spl = make_interp_spline(x[idx], y[idx], k=kk)
    return np.asarray(spl(x, order))


# ---------------------------------------------------------------------------
# CSV input and output


def curve_to_csv(curve: SampledCurve, path) -> None:
    """Write the `t,x1,...,xn` CSV format with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t"] + [f"x{d + 1}" for d in range(curve.dimension)])
        for t, p in zip(curve.t, curve.points):
            w.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in p])


def curve_from_csv(path) -> SampledCurve:
    """Read a `t,x1,...,xn` CSV; dimension inferred from the header."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise BadParameters(f"{path}: empty curve file")
    header = [c.strip() for c in rows[0]]
    if len(header) < 3 or header[0] != "t" or header[1:] != [
        f"x{d + 1}" for d in range(len(header) - 1)
    ]:
        raise BadParameters(
            f"{path}: header must be t,x1,...,xn with n >= 2, got {header!r}"
        )
    dim = len(header) - 1
    try:
        data = np.array([[float(c) for c in row] for row in rows[1:] if row],
                        dtype=float)
    except ValueError as exc:
        raise BadParameters(f"{path}: non-numeric cell ({exc})") from None
    if data.ndim != 2 or data.shape[1] != dim + 1:
        raise BadParameters(f"{path}: ragged rows")
    return SampledCurve(dim, data[:, 0], data[:, 1:], "generic")
