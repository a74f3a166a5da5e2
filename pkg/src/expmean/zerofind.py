"""Numerical zero location for exponential sums by the argument principle.

Every zero of a sum with at least two terms lies in an explicit vertical
strip |Re z| < B: once the extreme term is factored out, the remaining
tail is < 1 in modulus beyond the strip, so the sum cannot vanish there.
Inside the strip the zeros with |Im z| < R are isolated by recursive
rectangle bisection driven by boundary winding counts, refined by damped
Newton iteration, and assigned multiplicities by the winding count of a
small surrounding square.

Horizontal contour sides must avoid zeros.  A sum with n terms has fewer
than n zeros in any horizontal strip of height below 1/(a_n - a_1), so the
window |Im z - R| < 1/(4(a_n - a_1)) always contains an ordinate whose
line stays clear of every zero; safe_ordinate picks the measured best one.
Interior cut lines get deterministic seeded jitter when a contour lands
too close to a zero, keeping runs reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContourOnZeroError,
    ContourTooCloseError,
    InputError,
    NumericalError,
)
from .sums import (
    ExponentialSum,
    coefficient_envelope,
    derivative,
    evaluate,
    evaluate_array,
)

_CLEARANCE_REL = 1e-13
_BOX_DIAMETER = 1e-3
_MULT_RADIUS = 1e-4
_MERGE_RADIUS = 1e-7
_MAX_EDGE_DOUBLINGS = 11
_JITTER_ATTEMPTS = 12


@dataclass(frozen=True)
class Rect:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise InputError("rectangle sides must have positive length")

    def width(self) -> float:
        return self.re_max - self.re_min

    def height(self) -> float:
        return self.im_max - self.im_min

    def diameter(self) -> float:
        return math.hypot(self.width(), self.height())

    def center(self) -> complex:
        return complex(
            0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max)
        )

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (
            self.re_min - pad <= z.real <= self.re_max + pad
            and self.im_min - pad <= z.imag <= self.im_max + pad
        )


@dataclass(frozen=True)
class Zero:
    location: complex
    multiplicity: int


@dataclass(frozen=True)
class QuadratureConfig:
    max_subdivision_depth: int = 60
    edge_samples_initial: int = 32
    winding_residual_tol: float = 0.25
    newton_tol: float = 1e-12
    jitter_seed: int = 0

    def __post_init__(self):
        if not (0 < self.winding_residual_tol < 0.5):
            raise InputError("winding residual tolerance must lie in (0, 1/2)")
        if self.edge_samples_initial < 2:
            raise InputError("need at least two quadrature intervals per edge")


@dataclass(frozen=True)
class ZeroSearch:
    """find_zeros plus the contour data the verifier wants to inspect."""

    zeros: list[Zero]
    strip: float
    height: float
    outer_winding: int
    rect: Rect


def strip_bound(f: ExponentialSum, margin: float = 0.5) -> float:
    """Smallest B with both coefficient tail sums <= margin at |Re z| = B.

    Beyond the strip the factored-out extreme term dominates the rest of
    the sum by at least (1 - margin), so no zero escapes it.
    """
    if f.num_terms() < 2:
        raise InputError("a strip bound needs at least two terms")
    if not (0 < margin < 1):
        raise InputError("margin must lie in (0, 1)")
    freqs, coeffs = f.numeric_parts()
    mags = np.abs(coeffs)

    def first_tail(b: float) -> float:
        return float(
            np.sum(mags[1:] / mags[0] * np.exp(-2 * math.pi * b * (freqs[1:] - freqs[0])))
        )

    def last_tail(b: float) -> float:
        return float(
            np.sum(mags[:-1] / mags[-1] * np.exp(-2 * math.pi * b * (freqs[-1] - freqs[:-1])))
        )

    def solve(tail) -> float:
        if tail(0.0) <= margin:
            return 0.0
        hi = 1.0
        while tail(hi) > margin:
            hi *= 2.0
            if hi > 1e9:
                raise NumericalError("strip bound bisection failed to bracket")
        lo = 0.0
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if tail(mid) <= margin:
                hi = mid
            else:
                lo = mid
        return hi

    return max(solve(first_tail), solve(last_tail))


class _Workspace:
    """Shared evaluation state for one search: f, its derivative, arrays."""

    def __init__(self, f: ExponentialSum):
        self.f = f.to_float_mode()
        self.df = derivative(self.f)

    def ratio(self, zs: np.ndarray) -> np.ndarray:
        """f'/f at an array of points; raises if the contour hits a zero."""
        fv = evaluate_array(self.f, zs)
        dv = evaluate_array(self.df, zs)
        env = coefficient_envelope(self.f, zs.real)
        bad = ~np.isfinite(fv) | ~np.isfinite(dv) | (np.abs(fv) <= _CLEARANCE_REL * env)
        if np.any(bad):
            raise ContourOnZeroError("quadrature sample sits on or next to a zero")
        return dv / fv


def _simpson_weights(n: int) -> np.ndarray:
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * n)


def _winding_value(ws: _Workspace, rect: Rect, n: int) -> complex:
    """Composite-Simpson value of (1/2*pi*i) * boundary integral of f'/f."""
    corners = [
        complex(rect.re_min, rect.im_min),
        complex(rect.re_max, rect.im_min),
        complex(rect.re_max, rect.im_max),
        complex(rect.re_min, rect.im_max),
    ]
    t = np.arange(n + 1) / n
    segs = []
    deltas = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        segs.append(a + (b - a) * t)
        deltas.append(b - a)
    samples = ws.ratio(np.concatenate(segs))
    w = _simpson_weights(n)
    total = 0j
    for k, d in enumerate(deltas):
        total += d * np.dot(w, samples[k * (n + 1) : (k + 1) * (n + 1)])
    return total / (2j * math.pi)


def _winding(ws: _Workspace, rect: Rect, cfg: QuadratureConfig) -> int:
    n = cfg.edge_samples_initial
    if n % 2:
        n += 1
    stable_eps = min(0.05, cfg.winding_residual_tol / 5.0)
    prev = _winding_value(ws, rect, n)
    for _ in range(_MAX_EDGE_DOUBLINGS):
        n *= 2
        cur = _winding_value(ws, rect, n)
        if abs(cur - prev) <= stable_eps:
            m = round(cur.real)
            if abs(cur - m) <= cfg.winding_residual_tol:
                return int(m)
        prev = cur
    raise ContourTooCloseError(
        f"winding integral failed to settle on an integer over {rect}"
    )


def winding_count(
    f: ExponentialSum, rect: Rect, cfg: QuadratureConfig | None = None
) -> int:
    """Number of zeros inside the rectangle, counted with multiplicity."""
    return _winding(_Workspace(f), rect, cfg or QuadratureConfig())


def _line_minimum(ws: _Workspace, ordinate: float, b: float, samples: int = 241) -> float:
    xs = np.linspace(-b, b, samples)
    vals = np.abs(evaluate_array(ws.f, xs + 1j * ordinate))
    return float(vals.min())


def _best_ordinate(ws: _Workspace, targets: list[float], r: float, window: float, b: float) -> float:
    """Ordinate r' with |r' - r| <= window maximizing the worst line minimum
    over the lines {sign * r' : sign in targets}; exact center wins ties."""

    def score(r_val: float) -> float:
        return min(_line_minimum(ws, s * r_val, b) for s in targets)

    best_r = r
    best_v = score(r)
    span = window
    for _ in range(3):
        anchor = best_r
        offsets = np.linspace(-span, span, 21)
        for off in sorted(offsets, key=lambda o: (abs(o), o)):
            cand = float(anchor + off)
            if abs(cand - r) > window or cand == anchor:
                continue
            v = score(cand)
            if v > best_v:
                best_v, best_r = v, cand
        span /= 10.0
    return float(best_r)


def default_window(f: ExponentialSum) -> float:
    """Half-length of the ordinate search window: 1/(4*(a_n - a_1))."""
    vals = f.freq_values()
    span = float(vals[-1] - vals[0])
    if span <= 0:
        raise InputError("ordinate window needs two distinct frequencies")
    return 1.0 / (4.0 * span)


def safe_ordinate(f: ExponentialSum, R: float, window: float | None = None) -> float:
    """An ordinate near R whose horizontal line stays clear of zeros.

    Fewer than n zeros can occupy any horizontal strip of height under
    1/(a_n - a_1), so the window around R always contains a line at a
    positive distance from every zero; this returns the sampled best one.
    """
    if f.num_terms() < 2:
        raise InputError("safe ordinate needs at least two terms")
    w = default_window(f) if window is None else float(window)
    if w <= 0:
        raise InputError("window must be positive")
    ws = _Workspace(f)
    b = strip_bound(f, 0.5)
    return _best_ordinate(ws, [1.0], float(R), w, b)


def _jittered_cut(lo: float, hi: float, seed: int, attempt: int) -> float:
    mid = 0.5 * (lo + hi)
    if attempt == 0:
        return mid
    rng = random.Random(f"{seed}:{mid:.12e}:{attempt}")
    return mid + rng.uniform(-0.2, 0.2) * (hi - lo)


def _split(rect: Rect, cut: float, vertical_cut: bool) -> tuple[Rect, Rect]:
    if vertical_cut:
        return (
            Rect(rect.re_min, cut, rect.im_min, rect.im_max),
            Rect(cut, rect.re_max, rect.im_min, rect.im_max),
        )
    return (
        Rect(rect.re_min, rect.re_max, rect.im_min, cut),
        Rect(rect.re_min, rect.re_max, cut, rect.im_max),
    )


def _newton_refine(
    ws: _Workspace, box: Rect, cfg: QuadratureConfig
) -> complex | None:
    """Damped Newton from the box center; None when it fails to settle."""
    z = box.center()
    pad = 2.0 * box.diameter()
    fz = evaluate(ws.f, z)
    for _ in range(80):
        scale = float(coefficient_envelope(ws.f, np.array([z.real]))[0])
        if abs(fz) <= cfg.newton_tol * scale:
            # a point outside its own box belongs to a neighbor; claiming
            # it here would double-count the zero
            return z if box.contains(z, 1e-12) else None
        dz = evaluate(ws.df, z)
        if dz == 0 or not math.isfinite(abs(dz)):
            return None
        step = fz / dz
        lam = 1.0
        while lam > 1e-4:
            cand = z - lam * step
            fc = evaluate(ws.f, cand)
            if abs(fc) < abs(fz):
                z, fz = cand, fc
                break
            lam *= 0.5
        else:
            return None
        if not box.contains(z, pad):
            return None
    scale = float(coefficient_envelope(ws.f, np.array([z.real]))[0])
    if abs(fz) <= cfg.newton_tol * scale and box.contains(z, 1e-12):
        return z
    return None


def _resolve_box(
    ws: _Workspace, box: Rect, count: int, cfg: QuadratureConfig, budget: int
) -> list[complex]:
    """Pin down every zero inside a terminal box of known winding count.

    Newton from the center handles the ordinary case.  A box holding a
    mixed cluster (Newton's point does not account for the whole count)
    is bisected further and both halves are resolved, so near-coincident
    but distinct zeros each get their own representative.
    """
    if count == 0:
        return []
    z = _newton_refine(ws, box, cfg)
    if z is not None:
        if count == 1:
            return [z]
        local = min(_MULT_RADIUS, box.diameter())
        try:
            if _multiplicity(ws, z, local, cfg) == count:
                return [z]
        except NumericalError:
            pass
    if budget <= 0 or box.diameter() <= 1e-10:
        z = box.center()
        scale = float(coefficient_envelope(ws.f, np.array([z.real]))[0])
        if abs(evaluate(ws.f, z)) <= 1e-9 * scale:
            return [z]
        raise NumericalError(
            f"could not refine the zero inside {box} below the residual bound"
        )
    vertical = box.width() >= box.height()
    lo, hi = (box.re_min, box.re_max) if vertical else (box.im_min, box.im_max)
    for attempt in range(_JITTER_ATTEMPTS):
        cut = _jittered_cut(lo, hi, cfg.jitter_seed, attempt)
        if not (lo < cut < hi):
            continue
        a, b = _split(box, cut, vertical)
        try:
            wa = _winding(ws, a, cfg)
            wb = _winding(ws, b, cfg)
        except (ContourTooCloseError, ContourOnZeroError):
            continue
        if wa + wb != count:
            continue
        out = _resolve_box(ws, a, wa, cfg, budget - 1)
        out += _resolve_box(ws, b, wb, cfg, budget - 1)
        return out
    raise NumericalError(f"could not place a clean cut through {box}")


def _multiplicity(
    ws: _Workspace,
    point: complex,
    radius: float,
    cfg: QuadratureConfig,
) -> int:
    r = radius
    for _ in range(6):
        sq = Rect(point.real - r, point.real + r, point.imag - r, point.imag + r)
        try:
            return _winding(ws, sq, cfg)
        except (ContourTooCloseError, ContourOnZeroError):
            r *= 0.5
    raise NumericalError(f"no clean multiplicity contour around {point}")


def search_zeros(
    f: ExponentialSum,
    R: float,
    cfg: QuadratureConfig | None = None,
    margin: float = 0.5,
) -> ZeroSearch:
    """Zeros with |Im z| < height near R, plus the contour bookkeeping."""
    cfg = cfg or QuadratureConfig()
    if f.num_terms() < 2:
        raise InputError("zero search needs at least two terms")
    if R <= 0:
        raise InputError("half-height R must be positive")
    ws = _Workspace(f)
    b = strip_bound(f, margin)
    window = min(default_window(f), 0.5 * float(R))
    height = _best_ordinate(ws, [1.0, -1.0], float(R), window, b)
    outer = Rect(-b, b, -height, height)
    total = _winding(ws, outer, cfg)
    if total == 0:
        return ZeroSearch([], b, height, 0, outer)

    points: list[complex] = []
    stack: list[tuple[Rect, int, int]] = [(outer, total, 0)]
    while stack:
        box, count, depth = stack.pop()
        if count == 0:
            continue
        if box.diameter() < _BOX_DIAMETER:
            budget = max(10, cfg.max_subdivision_depth - depth)
            points.extend(_resolve_box(ws, box, count, cfg, budget))
            continue
        if depth >= cfg.max_subdivision_depth:
            partial = _collect(ws, points, total, cfg, check=False)
            err = NumericalError("subdivision depth exhausted before isolation")
            err.partial = partial
            raise err
        vertical = box.width() >= box.height()
        lo, hi = (box.re_min, box.re_max) if vertical else (box.im_min, box.im_max)
        placed = False
        for attempt in range(_JITTER_ATTEMPTS):
            cut = _jittered_cut(lo, hi, cfg.jitter_seed, attempt)
            if not (lo < cut < hi):
                continue
            a, bx = _split(box, cut, vertical)
            try:
                wa = _winding(ws, a, cfg)
                wb = _winding(ws, bx, cfg)
            except (ContourTooCloseError, ContourOnZeroError):
                continue
            if wa + wb != count:
                continue
            stack.append((a, wa, depth + 1))
            stack.append((bx, wb, depth + 1))
            placed = True
            break
        if not placed:
            raise NumericalError(f"no admissible cut line found inside {box}")

    zeros = _collect(ws, points, total, cfg, check=True)
    for z in zeros:
        if not (abs(z.location.real) < b + 1e-12 and abs(z.location.imag) < height):
            raise NumericalError(f"refined zero {z.location} escaped the search box")
    return ZeroSearch(zeros, b, height, total, outer)


def _collect(
    ws: _Workspace,
    points: list[complex],
    total: int,
    cfg: QuadratureConfig,
    check: bool,
) -> list[Zero]:
    """Merge nearby candidates, assign multiplicities, check conservation."""
    merged: list[complex] = []
    for p in sorted(points, key=lambda pc: (pc.imag, pc.real)):
        if any(abs(p - q) <= _MERGE_RADIUS for q in merged):
            continue
        merged.append(p)

    zeros: list[Zero] = []
    for p in merged:
        nearest = min(
            (abs(p - q) for q in merged if q is not p), default=math.inf
        )
        radius = min(_MULT_RADIUS, nearest / 3.0) if nearest < math.inf else _MULT_RADIUS
        mult = _multiplicity(ws, p, radius, cfg)
        if mult <= 0:
            raise NumericalError(f"refined point {p} shows no enclosed zero")
        zeros.append(Zero(p, mult))
    zeros.sort(key=lambda z: (z.location.imag, z.location.real))

    if check:
        if sum(z.multiplicity for z in zeros) != total:
            err = NumericalError(
                "multiplicities do not add up to the boundary winding count"
            )
            err.partial = zeros
            raise err
        for z in zeros:
            scale = float(coefficient_envelope(ws.f, np.array([z.location.real]))[0])
            if abs(evaluate(ws.f, z.location)) > 1e-9 * scale:
                err = NumericalError(f"zero at {z.location} fails the residual bound")
                err.partial = zeros
                raise err
    return zeros


def find_zeros(
    f: ExponentialSum, R: float, cfg: QuadratureConfig | None = None
) -> list[Zero]:
    """All zeros of f with |Im z| < R (up to the safe-ordinate shift)."""
    return search_zeros(f, R, cfg).zeros
