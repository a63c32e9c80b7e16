"""Poincare invariance of momentum-space multiplication operators.

The ten generators are never built as differential operators. For a field Q(p)
the brackets reduce to local functionals:

* time translation: [H(p), Q(p)]; space translations commute identically;
* rotations: [J_ab, Q] = [S_ab, Q] + i (p_b dQ/dp_a - p_a dQ/dp_b), using
  x_a = i d/dp_a so that [x_a, Q] = i dQ/dp_a;
* boosts: J_0a = t p_a - (x_a H + H x_a)/2. The t p_a part commutes with Q.
  When [H, Q] = 0, differentiating gives dH_a Q - Q dH_a = H dQ_a - dQ_a H, so
  [J_0a, Q] = -(i/2) {H, dQ_a} = -(i/2) ([dH_a, Q] + 2 H dQ_a) with dH_a = gamma0 gamma_a.

Derivatives are central differences with step ``h * |p|`` unless the analytic
derivative is requested.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from algebra.errors import PreconditionError
from algebra.gamma_algebra import build_gamma_set, standard_spin_generators
from algebra.matrix_core import DEFAULT_TOL, ComplexMatrix, commutator, norm
from algebra.momentum_ops import AXES, Momentum3, OperatorField, as_momentum, hamiltonian
from algebra.sampling import UNIT_SCALE, sample_momenta
from reporting.models import ReportBuilder, VerificationReport

logger = logging.getLogger(__name__)

ROTATION_PLANES = ((1, 2), (2, 3), (3, 1))
CONVERGENCE_BAND = (3.0, 5.0)
# Residuals below this are treated as exact: their h-dependence is roundoff.
CONVERGENCE_FLOOR = 1e-9


@dataclass(frozen=True)
class InvarianceResiduals:
    translation: float
    rotation: dict[tuple[int, int], float] = field(default_factory=dict)
    boost: dict[int, float] = field(default_factory=dict)
    step: float = 0.0

    def worst(self) -> float:
        return max([self.translation, *self.rotation.values(), *self.boost.values()])


def _absolute_step(p: Momentum3, h: float) -> float:
    if not (np.isfinite(h) and h > 0):
        raise PreconditionError(f"degenerate finite-difference step h={h}")
    step = h * float(np.linalg.norm(p))
    if step <= 1e-14 * float(np.linalg.norm(p)):
        raise PreconditionError(f"degenerate finite-difference step h={h}")
    return step


def field_derivative(q: OperatorField, p: npt.ArrayLike, axis: int, h: float, analytic: bool = False) -> ComplexMatrix:
    m = as_momentum(p)
    if analytic:
        return q.derivative(m, axis)
    step = _absolute_step(m, h)
    offset = np.zeros(3)
    offset[axis - 1] = step
    return (q(m + offset) - q(m - offset)) / (2.0 * step)


def translation_check(q: OperatorField, p: npt.ArrayLike) -> float:
    """Norm of [H(p), Q(p)]."""
    m = as_momentum(p)
    return norm(commutator(hamiltonian(m), q(m)))


def _rotation_residual(
    value: ComplexMatrix, p: Momentum3, a: int, b: int, derivs: dict[int, ComplexMatrix]
) -> float:
    s_ab = standard_spin_generators().s_ab(a, b)
    orbital = 1j * (p[b - 1] * derivs[a] - p[a - 1] * derivs[b])
    return norm(commutator(s_ab, value) + orbital)


def _boost_residual(value: ComplexMatrix, h_p: ComplexMatrix, a: int, derivs: dict[int, ComplexMatrix]) -> float:
    d_h = build_gamma_set().alphas[a - 1]
    return norm(commutator(d_h, value) + 2.0 * h_p @ derivs[a])


def rotation_check(
    q: OperatorField, p: npt.ArrayLike, a: int, b: int, h: float = 1e-4, analytic: bool = False
) -> float:
    if a == b or a not in AXES or b not in AXES:
        raise PreconditionError(f"Rotation plane needs two distinct axes, got ({a}, {b})")
    m = as_momentum(p)
    derivs = {axis: field_derivative(q, m, axis, h, analytic) for axis in (a, b)}
    return _rotation_residual(q(m), m, a, b, derivs)


def boost_check(q: OperatorField, p: npt.ArrayLike, a: int, h: float = 1e-4, analytic: bool = False) -> float:
    if a not in AXES:
        raise PreconditionError(f"Boost axis must be 1, 2 or 3, got {a}")
    m = as_momentum(p)
    derivs = {a: field_derivative(q, m, a, h, analytic)}
    return _boost_residual(q(m), hamiltonian(m), a, derivs)


def invariance_residuals(
    q: OperatorField, p: npt.ArrayLike, h: float = 1e-4, analytic: bool = False
) -> InvarianceResiduals:
    """All ten generator residuals at one momentum, sharing the three derivatives."""
    m = as_momentum(p)
    value = q(m)
    h_p = hamiltonian(m)
    derivs = {axis: field_derivative(q, m, axis, h, analytic) for axis in AXES}
    return InvarianceResiduals(
        translation=norm(commutator(h_p, value)),
        rotation={(a, b): _rotation_residual(value, m, a, b, derivs) for a, b in ROTATION_PLANES},
        boost={a: _boost_residual(value, h_p, a, derivs) for a in AXES},
        step=h,
    )


def full_invariance_sweep(
    q: OperatorField,
    samples: int,
    h: float,
    tol: float,
    rng: np.random.Generator | None = None,
    scale_range: tuple[float, float] = UNIT_SCALE,
    analytic_tol: float = DEFAULT_TOL,
    anchor: str = "Section 1",
) -> VerificationReport:
    """Worst-case residuals over random momenta plus the h -> h/2 convergence gate.

    PASS iff every residual at step ``h`` is within ``tol`` and every residual
    above the roundoff floor shrinks by a factor in [3, 5] when h is halved.
    """
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    rng = rng if rng is not None else np.random.default_rng(0)
    momenta = sample_momenta(rng, samples, scale_range)
    builder = ReportBuilder(f"poincare[{q.name}]")

    translation, rotation, boost, ratios = [], [], [], []
    analytic_rotation, analytic_boost = [], []
    for p in momenta:
        coarse = invariance_residuals(q, p, h)
        fine = invariance_residuals(q, p, h / 2.0)
        translation.append(coarse.translation)
        rotation.extend(coarse.rotation.values())
        boost.extend(coarse.boost.values())
        pairs = [(coarse.rotation[k], fine.rotation[k]) for k in ROTATION_PLANES]
        pairs += [(coarse.boost[k], fine.boost[k]) for k in AXES]
        ratios.extend(c / f if f > 0 else np.inf for c, f in pairs if c > CONVERGENCE_FLOOR)
        if q.has_derivative:
            exact = invariance_residuals(q, p, analytic=True)
            analytic_rotation.extend(exact.rotation.values())
            analytic_boost.extend(exact.boost.values())

    builder.add_max(f"{q.name}.translation", translation, tol, anchor="Eq. (5)")
    builder.add_max(f"{q.name}.rotation", rotation, tol, anchor="Eq. (5)")
    builder.add_max(f"{q.name}.boost", boost, tol, anchor="Eq. (5)")
    lo, hi = CONVERGENCE_BAND
    spread = max((0.0 if lo <= r <= hi else min(abs(r - 4.0), 1e300) for r in ratios), default=0.0)
    builder.add(
        f"{q.name}.convergence",
        spread,
        0.0,
        anchor="plumbing",
        note=f"{len(ratios)} ratios above floor {CONVERGENCE_FLOOR:g}",
    )
    if q.has_derivative:
        builder.add_max(f"{q.name}.rotation.analytic", analytic_rotation, analytic_tol, anchor="Eq. (5)")
        builder.add_max(f"{q.name}.boost.analytic", analytic_boost, analytic_tol, anchor="Eq. (5)")
    report = builder.build({"samples": samples, "h": h})
    logger.debug("Invariance sweep for %s: %d unexpected", q.name, report.summary.unexpected)
    return report


def worst_finite_difference_residual(report: VerificationReport) -> float:
    """Largest translation/rotation/boost residual of a sweep report."""
    return max(
        c.residual
        for c in report.checks
        if c.name.endswith((".translation", ".rotation", ".boost"))
    )
