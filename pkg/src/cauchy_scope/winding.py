"""Winding numbers of sampled boundary functions around the origin."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionError, ResolutionError, WindingUndefinedError
from .polynomial import ComplexPolynomial
from .spectrum import BoundarySamples
from .tolerances import DEFAULT_TOLERANCES

MAX_REFINEMENTS = 3
_STEP_LIMIT = math.pi / 2
_ROUNDING_SLACK = 0.1


@dataclass(frozen=True)
class WindingResult:
    winding: int
    min_modulus: float
    max_phase_step: float
    grid_size: int
    refinements: int = 0

    def to_dict(self):
        return {
            "winding": self.winding,
            "min_modulus": self.min_modulus,
            "max_phase_step": self.max_phase_step,
            "grid_size": self.grid_size,
            "refinements": self.refinements,
        }


def _phase_steps(values: np.ndarray) -> np.ndarray:
    return np.angle(np.roll(values, -1) / values)


def winding_number(
    samples: BoundarySamples,
    min_mod_tol: Optional[float] = None,
    max_refinements: int = MAX_REFINEMENTS,
) -> WindingResult:
    """Winding number of the closed sampled curve around 0.

    The argument increments between consecutive grid points are taken as
    principal values and summed. If any increment reaches pi/2 the grid is
    considered too coarse: samples with a generator are resampled on a grid
    twice as fine (at most ``max_refinements`` times); samples without one
    raise :class:`ResolutionError` straight away.

    ``min_mod_tol`` defaults to ``1e-8 * max|values|``.

    The step test cannot see aliasing: a curve turning faster than the grid
    can follow may look like a slow one (``z^500`` on 512 points reads as
    ``z^-12``). The grid has to resolve the curve to begin with.
    """
    current = samples
    for refinement in range(max_refinements + 1):
        values = current.values
        moduli = np.abs(values)
        peak = float(np.max(moduli))
        tol = DEFAULT_TOLERANCES.min_mod_rel * peak if min_mod_tol is None else min_mod_tol
        low = int(np.argmin(moduli))
        if moduli[low] < tol or moduli[low] == 0.0:
            raise WindingUndefinedError(low, float(moduli[low]), tol)

        steps = _phase_steps(values)
        max_step = float(np.max(np.abs(steps)))
        if max_step < _STEP_LIMIT:
            total = float(np.sum(steps)) / (2 * math.pi)
            winding = int(round(total))
            if abs(total - winding) > _ROUNDING_SLACK:
                raise ResolutionError(
                    f"accumulated argument change {total:.4f} turns is not near an integer"
                )
            return WindingResult(winding, float(moduli[low]), max_step, current.grid_size, refinement)

        if current.source is None:
            raise ResolutionError(
                f"phase step {max_step:.3f} >= pi/2 at grid_size {current.grid_size}; "
                "resample on a finer grid"
            )
        if refinement == max_refinements:
            break
        current = current.resample(2 * current.grid_size)

    raise ResolutionError(
        f"phase step {max_step:.3f} >= pi/2 after {max_refinements} grid doublings "
        f"(grid_size {current.grid_size})"
    )


def composite(f: BoundarySamples, P: ComplexPolynomial, Q: ComplexPolynomial) -> BoundarySamples:
    """Samples of ``P(z) f(z) + Q(z)``."""
    return f.map(lambda z, v: P(z) * v + Q(z))


def composite_winding(
    f: BoundarySamples,
    P: ComplexPolynomial,
    Q: ComplexPolynomial,
    min_mod_tol: Optional[float] = None,
) -> WindingResult:
    """Winding number of ``P f + Q``."""
    if P.is_zero() and Q.is_zero():
        raise PreconditionError("P and Q are both identically zero")
    return winding_number(composite(f, P, Q), min_mod_tol)
