"""Classical and trace-form quadratic maximization over normalized matrices.

The classical form of a d x d matrix theta is |sum_ij theta_ij s_i t_j| with
the scalars constrained to the unit polydisc (or to the radius-sqrt(d) ball);
its polydisc supremum g(theta) is bracketed by explicit witnesses from below
and by min(||theta||_1, d * s_max) from above.  The ball supremum g'(theta)
equals d * s_max exactly.  Replacing scalars by unit-ball vectors gives the
trace form |Tr(theta V W^dagger)|, whose supremum can exceed g(theta) but
never 1.4049 * g(theta).
"""

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import (
    InputValidationError,
    as_matrix,
    largest_singular_value,
    norm_entrywise_l1,
    require_square,
)

__all__ = [
    "K_G_UPPER",
    "PolydiscTuple",
    "VectorTuple",
    "OptimizerConfig",
    "OptimizerRun",
    "GClassification",
    "PhaseSystemReport",
    "eval_C",
    "eval_Q_trace",
    "g_prime",
    "g_upper",
    "g_lower",
    "max_q_lower",
    "phase_system_solvable",
    "classify",
    "kg_region_check",
]

# Published upper bound for the complex Grothendieck constant: 1 < k_G <= 1.4049.
K_G_UPPER = 1.4049

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class PolydiscTuple:
    """A d-tuple of complex scalars under a polydisc or ball constraint."""
    values: np.ndarray
    constraint_kind: str = "unit_disc"   # "unit_disc" | "ball_d"

    TOL = 1e-12

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).ravel()
        if self.constraint_kind not in ("unit_disc", "ball_d"):
            raise InputValidationError(
                f"unknown constraint kind: {self.constraint_kind!r}")
        if not np.all(np.isfinite(self.values.real) & np.isfinite(self.values.imag)):
            raise InputValidationError("tuple contains non-finite values")

    def validate(self):
        d = self.values.size
        if self.constraint_kind == "unit_disc":
            worst = float(np.abs(self.values).max()) if d else 0.0
            if worst > 1.0 + self.TOL:
                raise InputValidationError(
                    f"unit-disc tuple has modulus {worst} > 1")
        else:
            total = float((np.abs(self.values) ** 2).sum())
            if total > d * (1.0 + self.TOL):
                raise InputValidationError(
                    f"ball tuple has squared norm {total} > d = {d}")
        return self

    def to_list(self):
        return [[float(z.real), float(z.imag)] for z in self.values]


@dataclass
class VectorTuple:
    """d unit-ball vectors stored as scale * unit-vector rows."""
    unit_vectors: np.ndarray   # (d, d), rows of unit (or zero) norm
    scales: np.ndarray         # (d,), each in [0, 1]

    TOL = 1e-12

    def validate(self):
        norms = np.linalg.norm(self.scaled(), axis=1)
        if norms.max(initial=0.0) > 1.0 + self.TOL:
            raise InputValidationError(
                f"vector tuple leaves the unit ball: max norm {norms.max()}")
        return self

    def scaled(self) -> np.ndarray:
        return self.scales[:, None] * self.unit_vectors

    @classmethod
    def from_rows(cls, rows) -> "VectorTuple":
        rows = np.asarray(rows, dtype=complex)
        scales = np.linalg.norm(rows, axis=1)
        units = np.where(scales[:, None] > 0, rows / np.maximum(scales, 1e-300)[:, None], 0)
        # unit rows for zero vectors are irrelevant; pin them to e_0
        for i in range(rows.shape[0]):
            if scales[i] == 0:
                units[i, 0] = 1.0
        return cls(unit_vectors=units, scales=np.minimum(scales, 1.0))


def eval_C(theta, s: PolydiscTuple, t: PolydiscTuple) -> float:
    """Classical form |sum_ij theta_ij s_i t_j|; both tuples are re-validated."""
    a = as_matrix(theta)
    if s.values.size != a.shape[0] or t.values.size != a.shape[1]:
        raise InputValidationError(
            f"tuple lengths {s.values.size}, {t.values.size} do not match "
            f"matrix shape {a.shape}")
    s.validate()
    t.validate()
    return float(abs(np.dot(s.values, a @ t.values)))


def eval_Q_trace(theta, v, w) -> float:
    """Trace form |Tr(theta V W^dagger)| for three d x d matrices."""
    a = require_square(theta)
    vm = require_square(v)
    wm = require_square(w)
    if not (a.shape == vm.shape == wm.shape):
        raise InputValidationError(
            f"dimension mismatch: {a.shape}, {vm.shape}, {wm.shape}")
    return float(abs(np.trace(a @ vm @ wm.conj().T)))


def g_prime(theta) -> float:
    """Exact ball supremum: d times the largest singular value."""
    a = require_square(theta)
    return a.shape[0] * largest_singular_value(a)


def g_upper(theta) -> float:
    """Certified upper bound for the polydisc supremum: min(||theta||_1, d s_max)."""
    a = require_square(theta)
    return min(norm_entrywise_l1(a), g_prime(a))


@dataclass
class OptimizerConfig:
    """Multistart configuration shared by the polydisc and vector optimizers."""
    starts: int = 64
    seed: int = 0
    max_iterations: int = 200       # sweep / alternation cap
    phase_tolerance: float = 1e-10  # stop when a full sweep improves less than this
    scan_points: int = 32           # coarse scan resolution per coordinate
    line_tolerance: float = 1e-10   # golden-section interval width target

    def __post_init__(self):
        if self.starts < 1:
            raise InputValidationError("starts must be >= 1")
        if self.seed < 0:
            raise InputValidationError("seed must be a non-negative integer")
        if self.phase_tolerance <= 0 or self.line_tolerance <= 0:
            raise InputValidationError("tolerances must be positive")


@dataclass
class OptimizerRun:
    """Result of a multistart maximization, reproducible bit-for-bit from its config."""
    starts: int
    seed: int
    max_iterations: int
    phase_tolerance: float
    best_value: float
    best_witness: tuple
    converged_fraction: float
    per_start_values: list = field(default_factory=list)

    def to_dict(self) -> dict:
        s, t = self.best_witness
        witness = {}
        for name, part in (("s", s), ("t", t)):
            if isinstance(part, PolydiscTuple):
                witness[name] = part.to_list()
            elif isinstance(part, VectorTuple):
                witness[name] = {
                    "scales": [float(x) for x in part.scales],
                    "unit_vectors": [[[float(z.real), float(z.imag)] for z in row]
                                     for row in part.unit_vectors],
                }
        return {
            "starts": self.starts,
            "seed": self.seed,
            "max_iterations": self.max_iterations,
            "phase_tolerance": self.phase_tolerance,
            "best_value": self.best_value,
            "converged_fraction": self.converged_fraction,
            "witness": witness,
        }


def _initial_phases(config: OptimizerConfig, d: int) -> np.ndarray:
    t = np.empty((config.starts, d), dtype=complex)
    for s in range(config.starts):
        rng = np.random.default_rng(config.seed ^ s)
        t[s] = np.exp(1j * rng.uniform(-np.pi, np.pi, d))
    return t


def g_lower(theta, config: Optional[OptimizerConfig] = None) -> OptimizerRun:
    """Lower-bound the polydisc supremum g(theta) by explicit torus witnesses.

    For fixed t the optimal s has unit modulus and phase conjugate to
    (theta t)_i, which collapses the objective to F(t) = sum_i |(theta t)_i|
    over the torus |t_j| = 1.  Each t-phase is improved by a coarse scan plus
    golden-section refinement; sweeps repeat until the improvement drops below
    ``phase_tolerance``.  All starts run in lockstep, so the result is a
    deterministic function of (matrix, config).
    """
    cfg = config or OptimizerConfig()
    a = require_square(theta)
    d = a.shape[0]

    if not np.any(a):
        ones = np.ones(d, dtype=complex)
        witness = (PolydiscTuple(ones).validate(), PolydiscTuple(ones).validate())
        return OptimizerRun(cfg.starts, cfg.seed, cfg.max_iterations,
                            cfg.phase_tolerance, 0.0, witness, 1.0,
                            [0.0] * cfg.starts)

    t = _initial_phases(cfg, d)
    r = t @ a.T                       # rows: (theta t) per start
    f = np.abs(r).sum(axis=1)
    grid = np.linspace(-np.pi, np.pi, cfg.scan_points, endpoint=False)
    sweeps = 0
    improvement = np.full(cfg.starts, np.inf)
    while sweeps < cfg.max_iterations:
        f_old = f.copy()
        for j in range(d):
            col = a[:, j]
            base = r - t[:, j][:, None] * col[None, :]

            def value_at(psi):
                return np.abs(base + np.exp(1j * psi)[:, None] * col[None, :]).sum(axis=1)

            coarse = np.abs(base[:, None, :]
                            + np.exp(1j * grid)[None, :, None] * col[None, None, :]
                            ).sum(axis=2)                     # (starts, scan)
            k = coarse.argmax(axis=1)
            h = 2.0 * np.pi / cfg.scan_points
            lo = grid[k] - h
            hi = grid[k] + h
            x1 = hi - _GOLDEN * (hi - lo)
            x2 = lo + _GOLDEN * (hi - lo)
            f1 = value_at(x1)
            f2 = value_at(x2)
            while np.max(hi - lo) > cfg.line_tolerance:
                move_lo = f1 < f2
                lo = np.where(move_lo, x1, lo)
                hi = np.where(move_lo, hi, x2)
                x1 = hi - _GOLDEN * (hi - lo)
                x2 = lo + _GOLDEN * (hi - lo)
                f1 = value_at(x1)
                f2 = value_at(x2)
            psi = (lo + hi) / 2.0
            cand = value_at(psi)
            keep = cand >= f
            t_j = np.where(keep, np.exp(1j * psi), t[:, j])
            t[:, j] = t_j
            r = base + t_j[:, None] * col[None, :]
            f = np.abs(r).sum(axis=1)
        sweeps += 1
        improvement = f - f_old
        if improvement.max() < cfg.phase_tolerance:
            break

    best = int(f.argmax())            # deterministic tie-break on start index
    t_best = t[best]
    r_best = a @ t_best
    mod = np.abs(r_best)
    s_best = np.where(mod > 0, np.conj(r_best) / np.maximum(mod, 1e-300), 1.0)
    witness = (PolydiscTuple(s_best).validate(), PolydiscTuple(t_best).validate())
    return OptimizerRun(
        starts=cfg.starts,
        seed=cfg.seed,
        max_iterations=cfg.max_iterations,
        phase_tolerance=cfg.phase_tolerance,
        best_value=float(mod.sum()),
        best_witness=witness,
        converged_fraction=float((improvement < cfg.phase_tolerance).mean()),
        per_start_values=[float(x) for x in f],
    )


def _q_value(theta, x_rows, y_rows) -> float:
    return float(abs(np.einsum("ij,ik,jk->", theta, x_rows.conj(), y_rows)))


def max_q_lower(theta, config: Optional[OptimizerConfig] = None) -> OptimizerRun:
    """Lower-bound the vector-form supremum by alternating witness improvement.

    With the x-vectors fixed, each optimal y_j is the normalized vector
    sum_i conj(theta_ij) x_i, and symmetrically; both half-steps are monotone.
    One extra start embeds the scalar witness of ``g_lower`` (same config) as
    parallel vectors, so the result never falls below that scalar bound.
    """
    cfg = config or OptimizerConfig()
    a = require_square(theta)
    d = a.shape[0]

    scalar = g_lower(a, cfg)
    if not np.any(a):
        w = (VectorTuple.from_rows(np.zeros((d, d))), VectorTuple.from_rows(np.zeros((d, d))))
        return OptimizerRun(cfg.starts, cfg.seed, cfg.max_iterations,
                            cfg.phase_tolerance, 0.0, w, 1.0, [0.0] * cfg.starts)

    s_w, t_w = scalar.best_witness
    e0 = np.zeros(d, dtype=complex)
    e0[0] = 1.0
    embeds = [(np.outer(np.conj(s_w.values), e0), np.outer(t_w.values, e0))]

    per_start = []
    converged = 0
    best_val = -np.inf
    best_pair = None
    n_starts = cfg.starts + len(embeds)
    for idx in range(n_starts):
        if idx < len(embeds):
            x, y = embeds[idx]
            x = x.copy()
            y = y.copy()
        else:
            rng = np.random.default_rng(cfg.seed ^ (idx - len(embeds)))
            x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            y = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            x /= np.linalg.norm(x, axis=1)[:, None]
            y /= np.linalg.norm(y, axis=1)[:, None]
        q_prev = _q_value(a, x, y)
        ok = False
        for _ in range(cfg.max_iterations):
            c = a.conj().T @ x
            n = np.linalg.norm(c, axis=1)
            y = np.where(n[:, None] > 0, c / np.maximum(n, 1e-300)[:, None], y)
            b = a @ y
            n2 = np.linalg.norm(b, axis=1)
            x = np.where(n2[:, None] > 0, b / np.maximum(n2, 1e-300)[:, None], x)
            q = float(n2.sum())
            if abs(q - q_prev) < cfg.phase_tolerance * 1e-3:
                ok = True
                q_prev = q
                break
            q_prev = q
        q_final = _q_value(a, x, y)
        per_start.append(q_final)
        converged += ok
        if q_final > best_val:
            best_val = q_final
            best_pair = (x.copy(), y.copy())

    x, y = best_pair
    witness = (VectorTuple.from_rows(x).validate(), VectorTuple.from_rows(y).validate())
    return OptimizerRun(
        starts=cfg.starts,
        seed=cfg.seed,
        max_iterations=cfg.max_iterations,
        phase_tolerance=cfg.phase_tolerance,
        best_value=best_val,
        best_witness=witness,
        converged_fraction=converged / n_starts,
        per_start_values=per_start,
    )


@dataclass
class PhaseSystemReport:
    """Rank data for the linear phase system phi_ij = chi_i + psi_j."""
    solvable: bool
    n_equations: int
    rank_coefficient: int
    rank_augmented: int
    chi: Optional[list] = None
    psi: Optional[list] = None
    used_shift_enumeration: bool = False

    def to_dict(self) -> dict:
        return {
            "solvable": self.solvable,
            "n_equations": self.n_equations,
            "rank_coefficient": self.rank_coefficient,
            "rank_augmented": self.rank_augmented,
            "chi": self.chi,
            "psi": self.psi,
            "used_shift_enumeration": self.used_shift_enumeration,
        }


def phase_system_solvable(theta, rank_tol: float = 1e-10,
                          shift_budget: int = 12) -> PhaseSystemReport:
    """Decide solvability of phi_ij = chi_i + psi_j over the nonzero entries.

    Solvable (by rank comparison of the coefficient and augmented matrices)
    implies the polydisc supremum reaches ||theta||_1, and the solved phases
    are returned as a witness.  Principal arguments in (-pi, pi] are used; for
    systems of at most ``shift_budget`` equations that fail at face value,
    every +-2*pi shift of the right-hand side is enumerated before the system
    is declared unsolvable.
    """
    a = require_square(theta)
    d = a.shape[0]
    nz = [(i, j) for i in range(d) for j in range(d) if a[i, j] != 0]
    n = len(nz)
    if n == 0:
        return PhaseSystemReport(True, 0, 0, 0, chi=[0.0] * d, psi=[0.0] * d)

    coeff = np.zeros((n, 2 * d))
    rhs = np.zeros(n)
    for r, (i, j) in enumerate(nz):
        coeff[r, i] = 1.0
        coeff[r, d + j] = 1.0
        rhs[r] = np.angle(a[i, j])

    u, sing, _ = np.linalg.svd(coeff)
    rank_a = int((sing > rank_tol * sing[0]).sum())
    null_left = u[:, rank_a:]                       # orthonormal, N x (n - rank_a)

    def augmented_rank(c):
        s2 = np.linalg.svd(np.hstack([coeff, c[:, None]]), compute_uv=False)
        return int((s2 > rank_tol * s2[0]).sum())

    def solution(c):
        sol, *_ = np.linalg.lstsq(coeff, c, rcond=None)
        return list(map(float, sol[:d])), list(map(float, sol[d:]))

    rank_d = augmented_rank(rhs)
    if rank_d == rank_a:
        chi, psi = solution(rhs)
        return PhaseSystemReport(True, n, rank_a, rank_d, chi=chi, psi=psi)

    if n <= shift_budget and null_left.shape[1] > 0:
        shifts = np.array(list(itertools.product((-1, 0, 1), repeat=n)), dtype=float)
        resid = (null_left.T @ rhs)[None, :] + 2.0 * np.pi * (shifts @ null_left)
        hit = np.where(np.all(np.abs(resid) < 1e-9, axis=1))[0]
        if hit.size:
            shifted = rhs + 2.0 * np.pi * shifts[hit[0]]
            chi, psi = solution(shifted)
            return PhaseSystemReport(True, n, rank_a, augmented_rank(shifted),
                                     chi=chi, psi=psi, used_shift_enumeration=True)

    return PhaseSystemReport(False, n, rank_a, rank_d)


@dataclass
class GClassification:
    """Bounds and certified membership verdicts for a matrix under the unit forms."""
    g_lower: float
    g_upper: float
    g_prime: float
    in_G_prime: bool                 # exact: g' <= 1 + 1e-10
    in_G: str                        # "certified_yes" | "certified_no" | "unknown"
    l1_norm: float
    necessary_condition_GRO10: bool
    necessary_for_G_prime: dict
    witnesses: Optional[tuple] = None
    scaling: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "g_lower": self.g_lower,
            "g_upper": self.g_upper,
            "g_prime": self.g_prime,
            "in_G_prime": self.in_G_prime,
            "in_G": self.in_G,
            "l1_norm": self.l1_norm,
            "necessary_condition_GRO10": self.necessary_condition_GRO10,
            "necessary_for_G_prime": self.necessary_for_G_prime,
            "scaling": self.scaling,
        }
        if self.witnesses is not None:
            s, t = self.witnesses
            out["witness"] = {"s": s.to_list(), "t": t.to_list()}
        return out


G_PRIME_TOL = 1e-10
CERTIFIED_NO_MARGIN = 1e-9


def classify(theta, config: Optional[OptimizerConfig] = None) -> GClassification:
    """Bracket g(theta), decide membership in the unit-form sets.

    Membership in the ball set is exact (g' = d s_max is computable); the
    polydisc set is certified only when a bound crosses 1: upper bound at most
    1 certifies membership, a witness above 1 certifies exclusion, anything
    else is reported unknown together with the bracket.
    """
    a = require_square(theta)
    d = a.shape[0]
    run = g_lower(a, config)
    gp = g_prime(a)
    l1 = norm_entrywise_l1(a)
    upper = min(l1, gp)

    if upper <= 1.0:
        in_g = "certified_yes"
    elif run.best_value > 1.0 + CERTIFIED_NO_MARGIN:
        in_g = "certified_no"
    else:
        in_g = "unknown"

    entry_max = float(np.abs(a).max())
    fro = float(np.linalg.norm(a))
    necessary = {
        "entry_max_le_inv_d": bool(entry_max <= 1.0 / d + 1e-12),
        "l1_le_d": bool(l1 <= d + 1e-12),
        "frobenius_le_1": bool(fro <= 1.0 + 1e-12),
    }
    gro10 = bool((upper <= 1.0 or in_g != "certified_no") and l1 > 1.0)

    scaling = {}
    if gp > 0:
        scaling["lambda_max_in_G_prime"] = 1.0 / gp
    if run.best_value > 0:
        # scales above this are certified outside the polydisc set by the witness
        scaling["lambda_certified_outside_G_beyond"] = 1.0 / run.best_value
    if upper > 0:
        scaling["lambda_max_certified_in_G"] = 1.0 / upper

    return GClassification(
        g_lower=float(run.best_value),
        g_upper=float(upper),
        g_prime=float(gp),
        in_G_prime=bool(gp <= 1.0 + G_PRIME_TOL),
        in_G=in_g,
        l1_norm=float(l1),
        necessary_condition_GRO10=gro10,
        necessary_for_G_prime=necessary,
        witnesses=run.best_witness,
        scaling=scaling,
    )


REGION_TOL = 1e-9


def kg_region_check(q: float) -> str:
    """Place a trace-form value: [0,1] classical, (1, 1.4049] the bound window."""
    if not np.isfinite(q) or q < 0:
        raise InputValidationError(f"q must be a finite non-negative real, got {q}")
    if q <= 1.0 + REGION_TOL:
        return "classical"
    if q <= K_G_UPPER + REGION_TOL:
        return "grothendieck"
    return "exceeds"
