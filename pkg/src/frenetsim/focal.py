"""Focal curves (osculating-sphere centers) and focal curvatures.

The focal curve is C = alpha + f_1 V_2 + ... + f_{n-1} V_n. Its
coefficients, the focal curvatures, satisfy f_1 = 1/kappa_1 and the
recursion f_i = (f_1 f_1' + ... + f_{i-1} f_{i-1}') / (kappa_i f_{i-1})
with derivatives in arc length. The running sums also express the
shape invariants directly (shape_from_focal), giving an independent
cross-path to the same signature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .curves import TRIM, FrenetData, field_derivative
from .errors import BadIndex, ZeroCurvature, ZeroFocalPivot
from .signatures import ShapeSignature

PIVOT_REL = 1e-8


@dataclass(frozen=True)
class FocalData:
    """Per-sample focal curvatures f_1..f_{n-1} and focal points."""

    s: np.ndarray
    f: np.ndarray
    focal_points: np.ndarray

    @property
    def n_samples(self) -> int:
        return len(self.s)


def _check_kappa(kap_i: np.ndarray, i: int) -> None:
    mx = np.abs(kap_i).max()
    # a sign change in the (signed) last curvature is the generic way
    # this degenerates: 1/kappa blows up between samples
    if mx == 0 or np.abs(kap_i).min() <= 1e-9 * mx \
            or kap_i.max() * kap_i.min() < 0:
        raise ZeroCurvature(
            f"kappa_{i} passes through zero; focal recursion undefined"
        )


def focal_curvatures(fr: FrenetData) -> FocalData:
    """Focal curvatures and focal points at every sample."""
    n = fr.dimension
    kap = fr.kappas
    _check_kappa(kap[:, 0], 1)
    f = np.empty((fr.n_samples, n - 1))
    f[:, 0] = 1.0 / kap[:, 0]
    running = f[:, 0] * field_derivative(fr.s, f[:, 0], order=1)
    fscale = np.abs(f[:, 0]).max()
    for j in range(2, n):
        _check_kappa(kap[:, j - 1], j)
        pivot = f[:, j - 2]
        if np.abs(pivot).min() <= PIVOT_REL * max(fscale, 1e-300):
            raise ZeroFocalPivot(
                f"f_{j - 1} vanishes; cannot continue the recursion to f_{j}"
            )
        f[:, j - 1] = running / (kap[:, j - 1] * pivot)
        fscale = max(fscale, np.abs(f[:, j - 1]).max())
        running = running + f[:, j - 1] * field_derivative(fr.s, f[:, j - 1],
                                                           order=1)
    centers = fr.points + np.einsum("qj,qjd->qd", f, fr.frames[:, 1:, :])
    return FocalData(fr.s, f, centers)


def shape_from_focal(fd: FocalData, i: int) -> ShapeSignature:
    """Shape curvatures expressed through focal curvatures alone.

    Boundary conventions extend the printed recursion downwards:
    f_{-1} = f_0 = 1, S_{-1} = 0, S_0 = 1, where S_j is the running
    sum of f_e f_e'. These reproduce kappa_1 = 1/f_1 and kappa_0 = 0,
    so every index 1 <= i <= n is covered; i <= 2 relies on the
    extrapolated terms and is flagged in the signature notes.
    """
    npts, ncols = fd.f.shape
    n = ncols + 1
    if not 1 <= i <= n:
        raise BadIndex(f"index must be in 1..{n}, got {i}")
    floor = PIVOT_REL * max(np.abs(fd.f).max(), 1e-300)
    if np.any(np.abs(fd.f) <= floor):
        col = int(np.argmax(np.any(np.abs(fd.f) <= floor, axis=0)))
        raise ZeroFocalPivot(
            f"f_{col + 1} vanishes somewhere; the focal expressions for the "
            "shape curvatures are inapplicable on this curve"
        )
    ones = np.ones(npts)
    f_ext = np.column_stack([ones, ones, fd.f])  # f_{-1}, f_0, f_1..
    S = np.empty((n, npts))  # S[j] = S_{j-1}: S_{-1}, S_0, S_1, ..
    S[0] = 0.0  # S_{-1}: makes kappa_0 = 0
    S[1] = 1.0  # S_0: makes kappa_1 = 1/f_1; conventions, not sums
    acc = np.zeros(npts)
    for j in range(1, n - 1):
        fpj = field_derivative(fd.s, fd.f[:, j - 1], order=1)
        acc = acc + fd.f[:, j - 1] * fpj
        S[j + 1] = acc
    # kappa_j = S_{j-1} / (f_{j-1} f_j), with kappa_0 = kappa_n = 0
    kap = np.zeros((n + 1, npts))
    for j in range(1, n):
        kap[j] = S[j] / (f_ext[:, j] * f_ext[:, j + 1])
    q = np.hypot(kap[i - 1], kap[i])
    sl = slice(TRIM, npts - TRIM)
    qs = q[sl]
    scale = max(qs.max(), 2.0 / (fd.s[-1] - fd.s[0]))
    if qs.min() <= 1e-8 * scale:
        raise ZeroFocalPivot(
            f"V_{i}-indicatrix speed derived from focal data collapses"
        )
    sigma = cumulative_simpson(qs, x=fd.s[sl], initial=0.0)
    kt = qs * field_derivative(sigma, 1.0 / qs, order=1)
    ktj = kap[1:n, sl] / qs
    notes = ()
    if i <= 2:
        notes = ("boundary conventions f_{-1}=f_0=1, S_{-1}=0, S_0=1 "
                 "extrapolate the focal expressions below j=3",)
    return ShapeSignature(n, i, sigma, kt, ktj, s=fd.s[sl], notes=notes)
