"""Integrand models: function pairs, contour geometry, derivative engine,
and the registry of built-in test families.

All objects are immutable after construction and safe to share across
parallel workers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BadParameter, RayDivergence, StepUnderflow, UnknownIntegrand

__all__ = [
    "ContourPath",
    "Integrand1D",
    "IntegrandND",
    "derive",
    "derive_nd",
    "registry_get",
    "registry_names",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ContourPath:
    """Polyline contour with two infinite rays attached to its endpoints.

    ``tail_angle`` is the direction in which the incoming ray recedes to
    infinity (travel enters from infinity toward ``nodes[0]``);
    ``head_angle`` the direction of the outgoing ray from ``nodes[-1]``.
    """

    nodes: tuple[complex, ...]
    tail_angle: float
    head_angle: float
    orientation: int = 1

    def __post_init__(self):
        if len(self.nodes) < 1:
            raise BadParameter("contour needs at least one node")
        for a, b in zip(self.nodes, self.nodes[1:]):
            if a == b:
                raise BadParameter("consecutive contour nodes must be distinct")
        for ang in (self.tail_angle, self.head_angle):
            if not (-math.pi < ang <= math.pi):
                raise BadParameter("ray angles must lie in (-pi, pi]")
        if self.orientation not in (1, -1):
            raise BadParameter("orientation must be +1 or -1")
        object.__setattr__(self, "nodes", tuple(complex(z) for z in self.nodes))

    def travel_directions(self) -> list[tuple[complex, complex, complex]]:
        """(start, end, unit direction) for each finite segment, in travel order."""
        return [
            (a, b, (b - a) / abs(b - a))
            for a, b in zip(self.nodes, self.nodes[1:])
        ]

    def tangent_near(self, z: complex) -> complex:
        """Unit travel direction of the contour element closest to ``z``.

        For points far from the polyline this is a coarse proxy used only to
        pick a sign for steepest-descent frames.
        """
        best = None
        best_d = math.inf
        # finite segments
        for a, b, u in self.travel_directions():
            t = ((z - a) / (b - a)).real
            t = min(max(t, 0.0), 1.0)
            p = a + t * (b - a)
            d = abs(z - p)
            if d < best_d:
                best_d, best = d, u
        # rays (travel direction: inward along tail, outward along head)
        for anchor, ang, sgn in (
            (self.nodes[0], self.tail_angle, -1.0),
            (self.nodes[-1], self.head_angle, 1.0),
        ):
            u = cmath.exp(1j * ang)
            t = max(((z - anchor) / u).real, 0.0)
            p = anchor + t * u
            d = abs(z - p)
            if d < best_d:
                best_d, best = d, sgn * u
        if len(self.nodes) == 1 and best is None:
            best = cmath.exp(1j * self.head_angle)
        # single-node contour: between the two rays, average the directions
        if len(self.nodes) == 1:
            avg = cmath.exp(1j * self.head_angle) - cmath.exp(1j * self.tail_angle)
            if abs(avg) > 1e-12 and best_d > 0:
                best = avg / abs(avg)
        return best


@dataclass(frozen=True)
class Integrand1D:
    """One-variable integrand g(z) * exp(N f(z, alpha)) on a contour."""

    f: Callable[[complex, float], complex]
    g: Callable[[complex], complex]
    contour: ContourPath
    analytic_derivs: Optional[tuple[Callable[[complex, float], complex], ...]] = None
    alpha_hat_hint: Optional[float] = None
    real_result_hint: bool = False
    prefactor: complex = 1.0
    alpha_range: tuple[float, float] = (0.0, 1.0)
    saddle_guess: Optional[Callable[[float], complex]] = None
    caustic_guess: Optional[tuple[complex, float]] = None
    name: str = ""

    def __post_init__(self):
        if self.analytic_derivs is not None and len(self.analytic_derivs) != 4:
            raise BadParameter("analytic_derivs must provide orders 1..4")

    def check_ray_convergence(self, alphas: Sequence[float], n_scale: float = 10.0) -> None:
        """Verify Re f eventually decreases without bound along both rays."""
        for anchor, ang in (
            (self.contour.nodes[0], self.contour.tail_angle),
            (self.contour.nodes[-1], self.contour.head_angle),
        ):
            u = cmath.exp(1j * ang)
            for a in alphas:
                rs = np.geomspace(1.0, 64.0, 13)
                vals = [self.f(anchor + r * u, a).real for r in rs]
                # must be decreasing over the outer half and strongly negative
                tail = vals[6:]
                if not all(x > y for x, y in zip(tail, tail[1:])) or tail[-1] > -n_scale:
                    raise RayDivergence(
                        f"Re f does not decay along ray angle {ang:.3f} for alpha={a}"
                    )


@dataclass(frozen=True)
class IntegrandND:
    """n-variable integrand exp(N F(x, alpha)) over a real region, with an
    optional complex contour replacing the first (soft) coordinate."""

    F: Callable[[np.ndarray, float], complex]
    dim: int
    grad: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    hessian: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    third_directional: Optional[Callable[[np.ndarray, float, np.ndarray], float]] = None
    soft_contour: Optional[ContourPath] = None
    domain_note: str = "R^n"
    alpha_hat_hint: Optional[float] = None
    alpha_range: tuple[float, float] = (0.0, 1.0)
    saddle_guess: Optional[Callable[[float], np.ndarray]] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 2:
            raise BadParameter("IntegrandND requires dim >= 2")

    def hessian_at(self, x: np.ndarray, alpha: float) -> np.ndarray:
        if self.hessian is not None:
            h = np.asarray(self.hessian(x, alpha), dtype=float)
            if not np.allclose(h, h.T, rtol=1e-10, atol=1e-12):
                raise BadParameter("provided Hessian is not symmetric")
            return h
        n = self.dim
        h = np.empty((n, n))
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = 1.0
            h[i, i] = derive_nd(self, x, alpha, ei, 2)
        for i in range(n):
            for j in range(i + 1, n):
                u = np.zeros(n)
                u[i] = u[j] = 1.0 / math.sqrt(2.0)
                mixed = derive_nd(self, x, alpha, u, 2)
                h[i, j] = h[j, i] = mixed - 0.5 * (h[i, i] + h[j, j])
        return h


# ---------------------------------------------------------------------------
# derivative engine


_STENCILS = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


def _central(func, h, order):
    acc = 0.0
    for k, w in _STENCILS[order]:
        acc += w * func(k * h)
    return acc / h ** order


def _richardson(func, h0, order):
    """Two Richardson levels on O(h^2) central stencils; returns (value, err).

    The error estimate is the magnitude of the last removed correction
    (|r2 - r1|/15), floored at the rounding noise of the finest stencil.
    """
    d = [_central(func, h0 / 2 ** i, order) for i in range(3)]
    r1 = [(4.0 * d[i + 1] - d[i]) / 3.0 for i in range(2)]
    r2 = (16.0 * r1[1] - r1[0]) / 15.0
    f_scale = max(abs(func(0.0)), 1.0)
    rounding = 64.0 * _EPS * f_scale / (h0 / 4.0) ** order
    return r2, max(abs(r2 - r1[1]) / 15.0, rounding)


def _best_richardson(func, h0, order):
    """Richardson over a small step-size scan, keeping the best estimate."""
    best = None
    for scale in (1.0, 0.8, 0.65, 1.4, 0.5):
        val, err = _richardson(func, h0 * scale, order)
        if best is None or err < best[1]:
            best = (val, err)
    return best


def derive(
    intg: Integrand1D,
    z: complex,
    alpha: float,
    order: int,
    tol: float = None,
) -> complex:
    """n-th complex derivative of f at z (orders 1..4).

    Uses the analytic provider when available, otherwise central finite
    differences along the local contour tangent with Richardson
    extrapolation.
    """
    if order not in (1, 2, 3, 4):
        raise BadParameter(f"order must be 1..4, got {order}")
    if tol is None:
        # the conservative error estimator sits near 1e-7 for order 4 even
        # when the actual error is ~1e-8
        tol = 1e-7 if order < 4 else 5e-7
    if intg.analytic_derivs is not None:
        return intg.analytic_derivs[order - 1](z, alpha)
    direction = intg.contour.tangent_near(z)
    # two Richardson levels make the scheme O(h^6); pick the base step so the
    # finest level h0/4 sits at the eps^{1/(k+6)} rounding/truncation balance,
    # then let a small step-size scan pick the best-conditioned result
    h0 = 4.0 * _EPS ** (1.0 / (order + 6)) * max(1.0, abs(z))
    val, err = _best_richardson(lambda s: intg.f(z + s * direction, alpha), h0, order)
    scale = max(1.0, abs(val))
    if err > tol * scale:
        raise StepUnderflow(
            f"order-{order} derivative error estimate {err:.2e} exceeds tol at z={z}"
        )
    return val / direction ** order


def derive_nd(
    intg: IntegrandND,
    x: np.ndarray,
    alpha: float,
    direction: np.ndarray,
    order: int,
    tol: float = 1e-6,
) -> float:
    """Directional derivative of F of given order (1..3) along a unit vector."""
    if order not in (1, 2, 3):
        raise BadParameter(f"order must be 1..3, got {order}")
    direction = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
        raise BadParameter("direction must be a unit vector")
    x = np.asarray(x, dtype=float)
    if order == 1 and intg.grad is not None:
        return float(np.dot(intg.grad(x, alpha), direction))
    if order == 2 and intg.hessian is not None:
        h = intg.hessian_at(x, alpha)
        return float(direction @ h @ direction)
    if order == 3 and intg.third_directional is not None:
        return float(intg.third_directional(x, alpha, direction))
    h0 = 4.0 * _EPS ** (1.0 / (order + 6)) * max(1.0, float(np.linalg.norm(x)))
    val, err = _best_richardson(lambda s: intg.F(x + s * direction, alpha), h0, order)
    scale = max(1.0, abs(val))
    if err > tol * scale:
        raise StepUnderflow(
            f"order-{order} directional derivative error {err:.2e} exceeds tol"
        )
    return float(val)


# ---------------------------------------------------------------------------
# registry


def _logcosh(t: float) -> float:
    # overflow-safe log cosh
    a = abs(t)
    return a + math.log1p(math.exp(-2.0 * a)) - math.log(2.0)


def _logcosh_c(t: complex) -> complex:
    if abs(t.real) < 30.0:
        return cmath.log(cmath.cosh(t))
    s = t if t.real > 0 else -t
    return s + cmath.log(0.5 * (1.0 + cmath.exp(-2.0 * s)))


def _build_cubic(params):
    def f(z, a):
        return z * z * z / 3.0 - a * z

    derivs = (
        lambda z, a: z * z - a,
        lambda z, a: 2.0 * z,
        lambda z, a: 2.0 + 0.0 * z,
        lambda z, a: 0.0 * z,
    )
    contour = ContourPath((0.0 + 0.0j,), tail_angle=-math.pi / 3.0, head_angle=math.pi / 3.0)
    return Integrand1D(
        f=f,
        g=lambda z: 1.0 + 0.0 * z,
        contour=contour,
        analytic_derivs=derivs,
        alpha_hat_hint=0.0,
        alpha_range=(0.0, 1.0),
        saddle_guess=lambda a: complex(math.sqrt(max(a, 0.0)) + 1e-3),
        caustic_guess=(0.1 + 0.0j, 0.05),
        name="cubic",
    )


def _build_perturbed_cubic(params):
    eps = float(params.get("eps", 0.05))
    if eps <= 0:
        raise BadParameter("perturbed-cubic requires eps > 0 (ray convergence)")

    def f(z, a):
        return z * z * z / 3.0 - a * z + eps * z ** 4

    derivs = (
        lambda z, a: z * z - a + 4.0 * eps * z ** 3,
        lambda z, a: 2.0 * z + 12.0 * eps * z * z,
        lambda z, a: 2.0 + 24.0 * eps * z,
        lambda z, a: 24.0 * eps + 0.0 * z,
    )
    contour = ContourPath((0.0 + 0.0j,), tail_angle=-math.pi / 3.0, head_angle=math.pi / 3.0)
    return Integrand1D(
        f=f,
        g=lambda z: 1.0 + 0.0 * z,
        contour=contour,
        analytic_derivs=derivs,
        alpha_hat_hint=0.0,
        alpha_range=(0.0, 0.6),
        saddle_guess=lambda a: complex(math.sqrt(max(a, 0.0)) + 1e-3),
        caustic_guess=(0.1 + 0.0j, 0.05),
        name="perturbed-cubic",
    )


def _build_bessel_sinh(params):
    x0 = float(params.get("x0", 0.3))

    def f(z, a):
        return a * cmath.sinh(z) - z

    derivs = (
        lambda z, a: a * cmath.cosh(z) - 1.0,
        lambda z, a: a * cmath.sinh(z),
        lambda z, a: a * cmath.cosh(z),
        lambda z, a: a * cmath.sinh(z),
    )
    # vertical segment near the saddle, horizontal rays out to +inf -/+ i*pi
    contour = ContourPath(
        (complex(x0, -math.pi), complex(x0, math.pi)),
        tail_angle=0.0,
        head_angle=0.0,
    )

    def guess(a):
        if a >= 1.0:
            return 0.05 + 0.0j
        return complex(math.acosh(1.0 / a))

    return Integrand1D(
        f=f,
        g=lambda z: 1.0 + 0.0 * z,
        contour=contour,
        analytic_derivs=derivs,
        alpha_hat_hint=1.0,
        real_result_hint=True,
        prefactor=1.0 / (2.0j * math.pi),
        alpha_range=(0.6, 1.05),
        saddle_guess=guess,
        caustic_guess=(0.1 + 0.0j, 0.9),
        name="bessel-sinh",
    )


def _build_mean_field_toy(params):
    m = float(params.get("m", 0.1))

    def f(z, g):
        if isinstance(z, complex) and z.imag != 0.0:
            return -z * z / (2.0 * g) + _logcosh_c(z + m)
        s = float(z.real) if isinstance(z, complex) else float(z)
        return complex(-s * s / (2.0 * g) + _logcosh(s + m))

    derivs = (
        lambda z, g: -z / g + cmath.tanh(z + m),
        lambda z, g: -1.0 / g + 1.0 / cmath.cosh(z + m) ** 2,
        lambda z, g: -2.0 * cmath.tanh(z + m) / cmath.cosh(z + m) ** 2,
        lambda z, g: (4.0 * cmath.sinh(z + m) ** 2 - 2.0) / cmath.cosh(z + m) ** 4,
    )
    contour = ContourPath((0.0 + 0.0j,), tail_angle=math.pi, head_angle=0.0)
    return Integrand1D(
        f=f,
        g=lambda z: 1.0 + 0.0 * z,
        contour=contour,
        analytic_derivs=derivs,
        real_result_hint=True,
        alpha_range=(0.9, 2.0),
        saddle_guess=lambda g: complex(max(1.2 * math.sqrt(max(g - 1.0, 0.01)), 0.3)),
        caustic_guess=(-0.5 + 0.0j, 1.2),
        name="mean-field-toy",
    )


def _nd_lambdas(params, dim):
    lams = []
    for i in range(2, dim + 1):
        lams.append(float(params.get(f"lambda{i}", -1.0)))
    if any(l >= 0 for l in lams):
        raise BadParameter("transverse eigenvalues lambda_i must be negative")
    return np.array(lams)


def _build_nd_perturbed_cubic(params, separable=False):
    eps = float(params.get("eps", 0.05))
    c = 0.0 if separable else float(params.get("c", 0.1))
    dim = int(params.get("dim", 2))
    if eps <= 0:
        raise BadParameter("nd-perturbed-cubic requires eps > 0")
    lams = _nd_lambdas(params, dim)

    def F(x, a):
        x = np.asarray(x)
        x1 = x[0]
        val = x1 ** 3 / 3.0 - a * x1 + eps * x1 ** 4
        val = val + 0.5 * np.dot(lams, np.asarray(x[1:]) ** 2)
        if c != 0.0 and dim >= 2:
            val = val + c * x1 * x[1] ** 2
        return val

    def grad(x, a):
        x = np.asarray(x, dtype=complex)
        g = np.empty(dim, dtype=complex)
        g[0] = x[0] ** 2 - a + 4.0 * eps * x[0] ** 3
        g[1:] = lams * x[1:]
        if c != 0.0:
            g[0] += c * x[1] ** 2
            g[1] += 2.0 * c * x[0] * x[1]
        if np.all(np.abs(g.imag) == 0.0):
            return g.real
        return g

    def hessian(x, a):
        x = np.asarray(x, dtype=float)
        h = np.diag(np.concatenate(([2.0 * x[0] + 12.0 * eps * x[0] ** 2], lams)))
        if c != 0.0:
            h[1, 1] += 2.0 * c * x[0]
            h[0, 1] = h[1, 0] = 2.0 * c * x[1]
        return h

    def third(x, a, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        t = (2.0 + 24.0 * eps * x[0]) * u[0] ** 3
        if c != 0.0:
            t += 6.0 * c * u[0] * u[1] ** 2
        return t

    soft = ContourPath((0.0 + 0.0j,), tail_angle=-math.pi / 3.0, head_angle=math.pi / 3.0)

    def guess(a):
        x0 = np.zeros(dim)
        x0[0] = -math.sqrt(max(a, 0.0)) - 1e-3
        return x0

    return IntegrandND(
        F=F,
        dim=dim,
        grad=grad,
        hessian=hessian,
        third_directional=third,
        soft_contour=soft,
        domain_note="x1 on a complex Airy-type contour, x2..xn on the real line",
        alpha_hat_hint=0.0,
        alpha_range=(0.0, 0.5),
        saddle_guess=guess,
        name="nd-separable" if separable else "nd-perturbed-cubic",
    )


_BUILDERS = {
    "cubic": _build_cubic,
    "perturbed-cubic": _build_perturbed_cubic,
    "bessel-sinh": _build_bessel_sinh,
    "mean-field-toy": _build_mean_field_toy,
    "nd-perturbed-cubic": lambda p: _build_nd_perturbed_cubic(p, separable=False),
    "nd-separable": lambda p: _build_nd_perturbed_cubic(p, separable=True),
}


def registry_names() -> list[str]:
    return sorted(_BUILDERS)


def registry_get(name: str, params: Optional[dict] = None):
    """Build a fully configured registry integrand by name."""
    if name not in _BUILDERS:
        raise UnknownIntegrand(f"unknown integrand {name!r}; known: {registry_names()}")
    return _BUILDERS[name](params or {})
