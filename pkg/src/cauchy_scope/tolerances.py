"""Numerical tolerance defaults shared by the detection and certification code."""
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """All knobs that turn exact statements into floating point decisions.

    Relative tolerances are relative to the quantity named in the field
    comment. Every report serializes the instance it was produced with.
    """

    rank_tol: float = 1e-8  # singular values, relative to sigma_max
    coef_floor: float = 1e-10  # Fourier noise floor, relative to max |f^(n)|
    tail_tol: float = 1e-7  # moment residuals, relative to max |f| on the grid
    eps_boundary: float = 1e-6  # band around |z| = 1 for root classification
    eps_cluster: float = 1e-6  # roots closer than this are always merged
    structure_tol: float = 1e-8  # coefficient residual allowed when merging roots
    eps_pole: float = 1e-3  # exclusion radius around poles for evaluation
    eps_interior: float = 1e-3  # exclusion band inside the circle for evaluation
    min_mod_rel: float = 1e-8  # winding threshold, relative to max |phi|
    pattern_rel: float = 1e-9  # vanishing-coefficient pattern, relative to the pivot

    def to_dict(self):
        return asdict(self)

    def updated(self, **overrides):
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)


DEFAULT_TOLERANCES = Tolerances()
