"""Row-norm normalization of matrices.

The normalization factor of M is the largest Euclidean norm among its rows;
matrices whose factor is at most 1 form the unit set used by the trace-form
bound machinery.  All bounds here are exact matrix identities, so the checks
carry tight tolerances.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    InputValidationError,
    as_matrix,
    is_normal,
    largest_singular_value,
    norm_frobenius,
    require_square,
)

__all__ = ["row_norms", "normalization_factor", "to_unit_s", "norm_report", "NormReport",
           "UNIT_SET_TOL"]

# Membership in the unit row-norm set is tested as N(M) <= 1 + UNIT_SET_TOL so
# boundary matrices built from exact constructions pass.
UNIT_SET_TOL = 1e-12


def row_norms(m) -> np.ndarray:
    """Euclidean norms of the rows; entry i equals sqrt((M M^dagger)_ii)."""
    return np.linalg.norm(as_matrix(m), axis=1)


def normalization_factor(m) -> float:
    """max_i ||row_i(M)||.  Scales as N(zM) = |z| N(M)."""
    return float(row_norms(m).max())


def to_unit_s(m) -> np.ndarray:
    """M divided by its normalization factor; the result has factor exactly 1."""
    a = as_matrix(m)
    n = normalization_factor(a)
    if n == 0.0:
        raise InputValidationError("cannot normalize the zero matrix")
    return a / n


@dataclass
class NormReport:
    """Row norms, the normalization factor, and its a-priori bracket."""
    row_norms: list
    n_factor: float
    frobenius: float
    lower_bound: float       # ||M||_2 / sqrt(d)
    upper_bound: float       # ||M||_2, or the spectral radius when M is normal
    is_normal: bool
    in_S_d: bool
    all_rows_equal: bool     # when true the lower bound is tight
    single_nonzero_row: bool  # when true the upper bound is tight
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "row_norms": [float(x) for x in self.row_norms],
            "n_factor": self.n_factor,
            "frobenius": self.frobenius,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_normal": self.is_normal,
            "in_S_d": self.in_S_d,
            "all_rows_equal": self.all_rows_equal,
            "single_nonzero_row": self.single_nonzero_row,
            **self.extras,
        }


def norm_report(m, normal_tol: float = 1e-12) -> NormReport:
    """Full report for a square matrix: factor, bracket, and equality flags."""
    a = require_square(m)
    d = a.shape[0]
    rn = row_norms(a)
    n = float(rn.max())
    fro = norm_frobenius(a)
    normal = is_normal(a, normal_tol)
    lower = fro / np.sqrt(d)
    upper = largest_singular_value(a) if normal else fro
    scale = max(rn.max(), 1.0)
    all_equal = bool(np.allclose(rn, rn[0], atol=1e-12 * scale, rtol=0.0))
    nonzero_rows = int((rn > 1e-12 * scale).sum())
    return NormReport(
        row_norms=list(map(float, rn)),
        n_factor=n,
        frobenius=fro,
        lower_bound=float(lower),
        upper_bound=float(upper),
        is_normal=normal,
        in_S_d=bool(n <= 1.0 + UNIT_SET_TOL),
        all_rows_equal=all_equal,
        single_nonzero_row=bool(nonzero_rows == 1),
    )
