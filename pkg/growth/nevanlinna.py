# Proximity and integrated counting functions m(r, f), N(r, f) of bound expressions
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import singledispatch

import numpy as np
import scipy.spatial
from loguru import logger

import config
from classify.expr import (
    Add,
    BesselJ,
    BesselJPrime,
    BesselY,
    BesselYPrime,
    Compose,
    Const,
    Cot,
    Div,
    Exp,
    Expr,
    Log,
    Mul,
    Neg,
    Param,
    Pow,
    Sqrt,
    Sub,
    Tanh,
    Var,
    Wp,
    WpPrime,
    children,
    constant_value,
    depends_on_z,
)
from specfun import SpecialFunctionError, bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, invariants, lattice_periods, wp_pair
from utils.errors import DomainError, InputError, PoleNear
from verify import differentiate, evaluate

# share of quadrature nodes allowed to hit a pole before the radius is rejected
POLE_NODE_SHARE = 0.1
CIRCLE_GRID = 64
MAX_WINDING_NODES = 2**16
MAX_PREIMAGES = 2_000_000
# local circles for pole orders, relative to max(1, |center|)
LOCAL_RADIUS = 1e-3
LOCAL_NODES = 64
# nodes this close to a pole (relative to r) are integrated analytically
EXCLUSION = 1e-3


class GrowthError(DomainError):
    """Custom exception for radii or functions the growth estimates cannot handle."""

    pass


def log_values(e: Expr, z) -> np.ndarray:
    """Complex logarithms of e at the points z; magnitudes beyond float range stay representable."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        return _log_cached(e, z, {})


def _log_cached(e: Expr, z: np.ndarray, cache: dict) -> np.ndarray:
    key = id(e)
    if key not in cache:
        cache[key] = _log(e, z, cache)
    return cache[key]


def _plain(values: np.ndarray) -> np.ndarray:
    return np.exp(values)


def _log_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    swap = x.real < y.real
    hi = np.where(swap, y, x)
    lo = np.where(swap, x, y)
    out = hi + np.log1p(np.exp(lo - hi))
    return np.where(np.isneginf(hi.real), lo, out)


@singledispatch
def _log(e: Expr, z: np.ndarray, cache: dict) -> np.ndarray:
    raise InputError(f"cannot evaluate node {type(e).__name__} on a circle")


@_log.register
def _(e: Const, z, cache):
    return np.full(z.shape, np.log(complex(e.value)), dtype=complex)


@_log.register
def _(e: Param, z, cache):
    raise InputError(f"parameter {e.name!r} is unbound")


@_log.register
def _(e: Var, z, cache):
    return np.log(z)


@_log.register
def _(e: Add, z, cache):
    return _log_add(_log_cached(e.left, z, cache), _log_cached(e.right, z, cache))


@_log.register
def _(e: Sub, z, cache):
    return _log_add(_log_cached(e.left, z, cache), _log_cached(e.right, z, cache) + 1j * math.pi)


@_log.register
def _(e: Neg, z, cache):
    return _log_cached(e.operand, z, cache) + 1j * math.pi


@_log.register
def _(e: Mul, z, cache):
    return _log_cached(e.left, z, cache) + _log_cached(e.right, z, cache)


@_log.register
def _(e: Div, z, cache):
    return _log_cached(e.left, z, cache) - _log_cached(e.right, z, cache)


@_log.register
def _(e: Pow, z, cache):
    base = _log_cached(e.base, z, cache)
    if isinstance(e.exponent, Const):
        return complex(e.exponent.value) * base
    return _plain(_log_cached(e.exponent, z, cache)) * base


@_log.register
def _(e: Exp, z, cache):
    return _plain(_log_cached(e.arg, z, cache))


@_log.register
def _(e: Tanh, z, cache):
    return np.log(np.tanh(_plain(_log_cached(e.arg, z, cache))))


@_log.register
def _(e: Cot, z, cache):
    return -np.log(np.tan(_plain(_log_cached(e.arg, z, cache))))


@_log.register
def _(e: Log, z, cache):
    return np.log(_log_cached(e.arg, z, cache))


@_log.register
def _(e: Sqrt, z, cache):
    return _log_cached(e.arg, z, cache) / 2


def _pointwise(function, *arrays) -> np.ndarray:
    out = np.empty(arrays[0].shape, dtype=complex)
    for k, args in enumerate(zip(*arrays)):
        try:
            out[k] = cmath.log(function(*args))
        except PoleNear:
            out[k] = complex(math.inf, 0)
        except (SpecialFunctionError, ValueError, OverflowError):
            out[k] = complex(math.nan, math.nan)
    return out


def _wp_log(e, z, cache, index: int) -> np.ndarray:
    args = _plain(_log_cached(e.arg, z, cache))
    g2 = _plain(_log_cached(e.g2, z, cache))
    g3 = _plain(_log_cached(e.g3, z, cache))
    return _pointwise(lambda x, a, b: wp_pair(x, invariants(a, b))[index], args, g2, g3)


@_log.register
def _(e: Wp, z, cache):
    return _wp_log(e, z, cache, 0)


@_log.register
def _(e: WpPrime, z, cache):
    return _wp_log(e, z, cache, 1)


def _bessel_log(function):
    def handler(e, z, cache):
        nu = _plain(_log_cached(e.nu, z, cache))
        arg = _plain(_log_cached(e.arg, z, cache))
        return _pointwise(function, nu, arg)

    return handler


_log.register(BesselJ, _bessel_log(bessel_j))
_log.register(BesselY, _bessel_log(bessel_y))
_log.register(BesselJPrime, _bessel_log(bessel_j_prime))
_log.register(BesselYPrime, _bessel_log(bessel_y_prime))


@_log.register
def _(e: Compose, z, cache):
    inner = _plain(_log_cached(e.inner, z, cache))
    return _log_cached(e.outer, inner, {})


def _circle(r: float, n: int) -> np.ndarray:
    return r * np.exp(2j * math.pi * np.arange(n) / n)


@dataclass(frozen=True)
class ZeroSet:
    """The set offset + sum n_i * generators[i] over integers n_i."""

    offset: complex
    generators: tuple[complex, ...] = ()

    def points_within(self, center: complex, radius: float) -> np.ndarray:
        if not self.generators:
            return np.array([self.offset]) if abs(self.offset - center) <= radius else np.array([], dtype=complex)
        if len(self.generators) == 1:
            (p,) = self.generators
            middle = ((center - self.offset) / p).real
            span = math.ceil(radius / abs(p)) + 1
            if 2 * span > MAX_PREIMAGES:
                raise GrowthError("too many zeros to enumerate; lower the radius")
            n = np.arange(math.floor(middle) - span, math.ceil(middle) + span + 1)
            pts = self.offset + n * p
        else:
            w1, w2 = self.generators
            height = abs((w2 * w1.conjugate()).imag) / max(abs(w1), abs(w2))
            span = math.ceil((radius + abs(center - self.offset)) / height) + 1
            if (2 * span + 1) ** 2 > MAX_PREIMAGES:
                raise GrowthError("too many lattice points to enumerate; lower the radius")
            grid = np.arange(-span, span + 1)
            m, k = np.meshgrid(grid, grid)
            pts = (self.offset + m * w1 + k * w2).ravel()
        return pts[np.abs(pts - center) <= radius]


def _constant(e: Expr) -> complex:
    return constant_value(e)


def affine_form(e: Expr) -> tuple[complex, complex] | None:
    """(s, d) with e = s z + d, or None."""
    slope = differentiate(e)
    if depends_on_z(slope):
        return None
    s = _constant(slope)
    if s == 0:
        return None
    return s, evaluate(e, 0)


def exp_linear_form(e: Expr) -> tuple[complex, complex, complex] | None:
    """(A, k, B) with e = A exp(k z) + B and A k != 0, or None."""
    form = _exp_linear(e)
    if form is None or form[0] == 0 or not form[1]:
        return None
    return form


def _exp_linear(e: Expr):
    if not depends_on_z(e):
        return 0j, None, _constant(e)
    if isinstance(e, Exp):
        aff = affine_form(e.arg)
        if aff is None:
            return None
        s, d = aff
        return cmath.exp(d), s, 0j
    if isinstance(e, Neg):
        inner = _exp_linear(e.operand)
        return None if inner is None else (-inner[0], inner[1], -inner[2])
    if isinstance(e, (Add, Sub)):
        left, right = _exp_linear(e.left), _exp_linear(e.right)
        if left is None or right is None:
            return None
        sign = 1 if isinstance(e, Add) else -1
        if left[1] is not None and right[1] is not None and left[1] != right[1]:
            return None
        rate = left[1] if left[1] is not None else right[1]
        return left[0] + sign * right[0], rate, left[2] + sign * right[2]
    if isinstance(e, Mul):
        for scale, rest in ((e.left, e.right), (e.right, e.left)):
            if not depends_on_z(scale):
                inner = _exp_linear(rest)
                if inner is None:
                    return None
                c = _constant(scale)
                return c * inner[0], inner[1], c * inner[2]
        return None
    if isinstance(e, Div) and not depends_on_z(e.right):
        inner = _exp_linear(e.left)
        if inner is None:
            return None
        c = _constant(e.right)
        return inner[0] / c, inner[1], inner[2] / c
    return None


def preimages(arg: Expr, zeros: ZeroSet, r: float) -> np.ndarray | None:
    """Points |z| <= r with arg(z) in the zero set; None when arg is neither affine nor A exp(kz) + B."""
    aff = affine_form(arg)
    if aff is not None:
        s, d = aff
        w = zeros.points_within(d, abs(s) * r)
        pts = (w - d) / s
        return pts[np.abs(pts) <= r * (1 + 1e-12)]
    form = exp_linear_form(arg)
    if form is None:
        return None
    a, k, b = form
    reach = abs(k) * r
    if reach > 700:
        raise GrowthError(f"exponential argument too large to enumerate at r={r}")
    w = zeros.points_within(b, abs(a) * math.exp(reach))
    located = []
    for value in w:
        ratio = (value - b) / a
        if ratio == 0:
            continue
        log_ratio = cmath.log(ratio)
        disc = reach * reach - log_ratio.real**2
        if disc < 0:
            continue
        root = math.sqrt(disc)
        low = math.ceil((-log_ratio.imag - root) / (2 * math.pi))
        high = math.floor((-log_ratio.imag + root) / (2 * math.pi))
        if high < low:
            continue
        m = np.arange(low, high + 1)
        located.append((log_ratio + 2j * math.pi * m) / k)
        if sum(len(x) for x in located) > MAX_PREIMAGES:
            raise GrowthError("too many poles to enumerate; lower the radius")
    if not located:
        return np.array([], dtype=complex)
    pts = np.concatenate(located)
    return pts[np.abs(pts) <= r * (1 + 1e-12)]


@dataclass(frozen=True)
class PoleSources:
    """Candidate pole locations, plus denominators whose zeros are only counted by winding."""

    candidates: np.ndarray
    winding: tuple[tuple[Expr, int], ...]


def _unique_nodes(e: Expr):
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(children(node))


def _lattice(node) -> ZeroSet:
    g2, g3 = _constant(node.g2), _constant(node.g3)
    return ZeroSet(0j, lattice_periods(g2, g3))


def _distinct(points: np.ndarray) -> np.ndarray:
    if points.size == 0:
        return points
    keys = np.round(np.column_stack([points.real, points.imag]), 9)
    _, index = np.unique(keys, axis=0, return_index=True)
    return points[np.sort(index)]


def pole_sources(e: Expr, r: float) -> PoleSources:
    """Every point in |z| <= r where some subexpression may blow up; cancellation is decided later."""
    located: list[np.ndarray] = []
    winding: list[tuple[Expr, int]] = []

    def zeros_of(g: Expr, multiplicity: int):
        pts = preimages(g, ZeroSet(0j), r)
        if pts is None:
            winding.append((g, multiplicity))
        else:
            located.append(pts)

    def special(arg: Expr, zeros: ZeroSet, name: str):
        pts = preimages(arg, zeros, r)
        if pts is None:
            raise GrowthError(f"cannot locate the poles of {name} with a non-affine, non-exponential argument")
        located.append(pts)

    for node in _unique_nodes(e):
        if not depends_on_z(node):
            continue
        if isinstance(node, Div) and depends_on_z(node.right):
            zeros_of(node.right, 1)
        elif isinstance(node, Pow) and isinstance(node.exponent, Const) and depends_on_z(node.base):
            power = complex(node.exponent.value).real
            if power < 0:
                zeros_of(node.base, math.ceil(-power))
        elif isinstance(node, Tanh):
            special(node.arg, ZeroSet(0.5j * math.pi, (1j * math.pi,)), "tanh")
        elif isinstance(node, Cot):
            special(node.arg, ZeroSet(0j, (complex(math.pi),)), "cot")
        elif isinstance(node, (Wp, WpPrime)):
            special(node.arg, _lattice(node), "the Weierstrass function")
        elif isinstance(node, Compose):
            raise GrowthError("pole counting through composed expressions is not supported")
    points = np.concatenate(located).astype(complex) if located else np.array([], dtype=complex)
    return PoleSources(_distinct(points), tuple(winding))


def winding_number(g: Expr, t: float, nodes: int = 256, center: complex = 0j) -> int:
    """Zeros minus poles of g inside |z - center| = t, from the unwrapped phase along the circle."""
    for attempt in range(3):
        radius = t * (1 + 1e-3 * attempt)
        n = nodes
        while True:
            phase = log_values(g, center + _circle(radius, n))
            if not np.all(np.isfinite(phase)):
                logger.debug(f"Contour |z - {center}| = {radius} passes through a zero or pole; perturbing")
                break
            steps = np.diff(np.append(phase.imag, phase.imag[0]))
            wrapped = (steps + math.pi) % (2 * math.pi) - math.pi
            if np.max(np.abs(wrapped)) < math.pi / 2:
                value = float(np.sum(wrapped)) / (2 * math.pi)
                count = round(value)
                if abs(value - count) > 0.2:
                    break
                return count
            if n >= MAX_WINDING_NODES:
                raise GrowthError(f"phase along |z - {center}| = {radius} not resolved with {n} nodes")
            n *= 2
    raise GrowthError(f"contour through zero near |z - {center}| = {t}")


def local_orders(e: Expr, centers) -> np.ndarray:
    """Pole order of e at each center (negative for zeros, 0 where e is regular and nonzero)."""
    centers = np.asarray(centers, dtype=complex).ravel()
    if centers.size == 0:
        return np.array([], dtype=int)
    radii = LOCAL_RADIUS * np.maximum(1.0, np.abs(centers))
    if centers.size > 1:
        xy = np.column_stack([centers.real, centers.imag])
        gaps, _ = scipy.spatial.cKDTree(xy).query(xy, k=2)
        radii = np.minimum(radii, 0.25 * gaps[:, 1])
    unit = np.exp(2j * math.pi * np.arange(LOCAL_NODES) / LOCAL_NODES)
    ring = (centers[:, None] + radii[:, None] * unit[None, :]).ravel()
    logs = log_values(e, ring).reshape(centers.size, LOCAL_NODES)
    finite = np.all(np.isfinite(logs), axis=1)
    phase = np.where(np.isfinite(logs), logs, 0).imag
    steps = np.diff(phase, axis=1, append=phase[:, :1])
    wrapped = (steps + math.pi) % (2 * math.pi) - math.pi
    values = wrapped.sum(axis=1) / (2 * math.pi)
    counts = np.rint(values)
    resolved = finite & (np.max(np.abs(wrapped), axis=1) < math.pi / 2) & (np.abs(values - counts) <= 0.2)
    for k in np.flatnonzero(~resolved):
        counts[k] = winding_number(e, float(radii[k]), center=complex(centers[k]))
    return (-counts).astype(int)


def located_poles(e: Expr, r: float, sources: PoleSources | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(points, orders) of the poles of e among the located candidates in |z| <= r."""
    sources = pole_sources(e, r) if sources is None else sources
    pts = sources.candidates[np.abs(sources.candidates) <= r * (1 + 1e-12)]
    orders = local_orders(e, pts)
    keep = orders > 0
    return pts[keep], orders[keep]


def _zeros_at(g: Expr, candidates: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Zeros of g sitting on located candidates in |z| <= t; their effect on e was already measured there."""
    inside = candidates[np.abs(candidates) <= t * (1 + 1e-12)]
    multiplicity = np.maximum(-local_orders(g, inside), 0)
    keep = multiplicity > 0
    return inside[keep], multiplicity[keep]


def pole_count(e: Expr, t: float) -> int:
    """n(t): poles of e in |z| <= t with multiplicity."""
    sources = pole_sources(e, t)
    _, orders = located_poles(e, t, sources)
    total = int(orders.sum())
    for g, m in sources.winding:
        _, at_candidates = _zeros_at(g, sources.candidates, t)
        total += m * (winding_number(g, t) + pole_count(g, t) - int(at_candidates.sum()))
    return total


def _origin_eps(r: float) -> float:
    return 1e-12 * max(1.0, r)


def _log_distances(points: np.ndarray, weights: np.ndarray, r: float, floor: float) -> float:
    """sum of weight * log(r / |p|), with points closer than floor to the origin contributing log r."""
    modulus = np.abs(points)
    near = modulus < floor
    far = float(np.sum(weights[~near] * np.log(r / modulus[~near])))
    return far + int(weights[near].sum()) * math.log(r)


def counting_N(e: Expr, r: float) -> float:
    """N(r) = integral of (n(t) - n(0))/t over (0, r) plus n(0) log r."""
    if r <= 0:
        raise GrowthError("radius must be positive")
    sources = pole_sources(e, r)
    pts, orders = located_poles(e, r, sources)
    total = _log_distances(pts, orders, r, _origin_eps(r))
    for g, m in sources.winding:
        total += m * _integrated_free_zeros(g, r, sources.candidates)
    return total


def _integrated_free_zeros(g: Expr, r: float, candidates: np.ndarray) -> float:
    radii = r * np.geomspace(1e-3, 1.0, CIRCLE_GRID)
    counts = np.array([winding_number(g, t) + pole_count(g, t) for t in radii])
    n0 = counts[0]
    widths = np.diff(np.log(radii))
    integrated = float(np.sum((counts[:-1] - n0) * widths)) + n0 * math.log(r)
    pts, multiplicity = _zeros_at(g, candidates, r)
    return max(0.0, integrated - _log_distances(pts, multiplicity, r, radii[0]))


def _arc_antiderivative(x: float, d: float) -> float:
    """Antiderivative of log(x^2 + d^2) in x."""
    if d == 0:
        return x * math.log(x * x) - 2 * x if x else 0.0
    return x * math.log(x * x + d * d) - 2 * x + 2 * d * math.atan(x / d)


def _excluded_arc(log_abs: np.ndarray, z: np.ndarray, cells: np.ndarray, pole: complex, order: int, r: float) -> float:
    """Contribution to m(r) of the cells around a pole, from log|f| ~ L - order log|z - pole|."""
    n = len(z)
    theta_pole = cmath.phase(pole)
    offsets = r * ((np.angle(z[cells]) - theta_pole + math.pi) % (2 * math.pi) - math.pi)
    half = math.pi * r / n
    lo, hi = float(offsets.min()) - half, float(offsets.max()) + half
    excluded = set(cells.tolist())
    anchors = sorted({(int(c) + step) % n for c in cells for step in (-1, 1)} - excluded)
    estimates = [log_abs[j] + order * math.log(abs(z[j] - pole)) for j in anchors if math.isfinite(log_abs[j])]
    if not estimates:
        raise GrowthError(f"no regular quadrature node next to the pole at {pole}")
    level = float(np.mean(estimates))
    d = abs(abs(pole) - r)
    integral = level * (hi - lo) - order / 2 * (_arc_antiderivative(hi, d) - _arc_antiderivative(lo, d))
    return max(0.0, integral) / (2 * math.pi * r)


def _poles_near_circle(e: Expr, r: float, width: float) -> tuple[np.ndarray, np.ndarray]:
    try:
        sources = pole_sources(e, r + width)
    except GrowthError as exc:
        logger.debug(f"Poles near |z|={r} not located: {exc}")
        return np.array([], dtype=complex), np.array([], dtype=int)
    near = sources.candidates[np.abs(np.abs(sources.candidates) - r) <= width]
    orders = local_orders(e, near)
    keep = orders > 0
    return near[keep], orders[keep]


def proximity_m(e: Expr, r: float, quad_points: int | None = None) -> float:
    """(1/2 pi) times the integral of log+ |f(r e^{i theta})|.

    Trapezoid rule, except that nodes within EXCLUSION * r of a pole are replaced by the integral of the
    local log singularity over their cells.
    """
    if r <= 0:
        raise GrowthError("radius must be positive")
    n = config.QUAD_POINTS if quad_points is None else quad_points
    z = _circle(r, n)
    log_abs = log_values(e, z).real
    width = EXCLUSION * r
    poles, orders = _poles_near_circle(e, r, width)
    # -inf marks a zero of f, where log+ is simply 0
    stray = np.flatnonzero(~(np.isfinite(log_abs) | np.isneginf(log_abs)))
    if poles.size:
        stray = stray[np.min(np.abs(z[stray][:, None] - poles[None, :]), axis=1) > width]
    if stray.size:
        stray_orders = local_orders(e, z[stray])
        if np.any(stray_orders <= 0):
            raise GrowthError(f"f is not finite at {z[stray][stray_orders <= 0][0]} but has no pole there")
        poles = np.concatenate([poles, z[stray]])
        orders = np.concatenate([orders, stray_orders])
    owner = np.full(n, -1)
    if poles.size:
        distance = np.abs(z[:, None] - poles[None, :])
        nearest = np.argmin(distance, axis=1)
        adjacent = distance[np.arange(n), nearest] <= width
        owner[adjacent] = nearest[adjacent]
    excluded = owner >= 0
    if excluded.mean() > POLE_NODE_SHARE:
        raise GrowthError(f"radius through pole cluster at r={r}")
    total = float(np.sum(np.maximum(log_abs[~excluded], 0.0))) / n
    for k in np.unique(owner[excluded]):
        cells = np.flatnonzero(owner == k)
        total += _excluded_arc(log_abs, z, cells, complex(poles[k]), int(orders[k]), r)
    return total


def characteristic(e: Expr, r: float, quad_points: int | None = None) -> tuple[float, float, float]:
    """(m, N, T) at radius r."""
    m = proximity_m(e, r, quad_points)
    n = counting_N(e, r)
    return m, n, m + n
