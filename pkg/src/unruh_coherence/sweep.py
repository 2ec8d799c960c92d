"""Parameter-grid sweeps, verification checks and the CSV contract.

A sweep walks a rectangular (q, nu) grid, evaluates the three coherence
measures along both the closed-form route and the generic eigensolver
route, and records their disagreement per point.  Grid order is fixed:
q is the outer loop, nu the inner one, both ascending, so output files
are byte-identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherence import coherence_components, reference_states, sqrt_clipped
from .errors import DomainError, ValidationError
from .linalg import hermitian_eigenvalues, spectrum_entropy
from .model import (
    alpha_beta_gamma,
    closed_form_spectra,
    coherence_closed_form,
    detector_matrix,
)

CSV_FIELDS = (
    "nu",
    "q",
    "alpha",
    "beta",
    "gamma",
    "c_total",
    "c_collective",
    "c_localized",
    "triangle_slack",
    "path_gap",
)
CSV_HEADER = ",".join(CSV_FIELDS)

# Slope comparisons on grid rows/columns treat |diff| <= this as flat.
MONOTONE_TOL = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def format_value(x):
    """Canonical 12-significant-digit rendering used in all text output."""
    v = float(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return format(v, ".12g")


@dataclass(frozen=True)
class SweepSpec:
    """Rectangular grid specification; defaults give the standard grid.

    With include_endpoints=False the upper endpoint of each axis is
    dropped (numpy linspace semantics), which also avoids the removed
    q=1, nu=0 corner.
    """

    q_min: float = 0.0
    q_max: float = 1.0
    q_steps: int = 101
    nu_min: float = 0.0
    nu_max: float = 1.0
    nu_steps: int = 101
    include_endpoints: bool = True

    def __post_init__(self):
        for name, lo, hi in (
            ("q", self.q_min, self.q_max),
            ("nu", self.nu_min, self.nu_max),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValidationError(f"{name} bounds must be finite")
            if lo > hi:
                raise ValidationError(f"{name}_min {lo!r} exceeds {name}_max {hi!r}")
        if not (0.0 <= self.q_min and self.q_max <= 1.0):
            raise ValidationError("q range must lie within [0, 1]")
        if self.nu_min < 0.0:
            raise ValidationError("nu range must be non-negative")
        for name, steps in (("q_steps", self.q_steps), ("nu_steps", self.nu_steps)):
            if int(steps) != steps or steps < 1:
                raise ValidationError(f"{name} must be a positive integer")

    def axes(self):
        """The q and nu grids."""
        return (
            np.linspace(
                self.q_min, self.q_max, self.q_steps, endpoint=self.include_endpoints
            ),
            np.linspace(
                self.nu_min, self.nu_max, self.nu_steps, endpoint=self.include_endpoints
            ),
        )


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: weights, measures (closed form) and the path gap.

    `closed_vs_numeric_gap` is the largest absolute disagreement between
    the closed-form and eigensolver routes across the three measures; it
    is emitted as the `path_gap` CSV column.
    """

    q: float
    nu: float
    alpha: float
    beta: float
    gamma: float
    c_total: float
    c_collective: float
    c_localized: float
    triangle_slack: float
    closed_vs_numeric_gap: float

    def csv_values(self):
        return (
            self.nu,
            self.q,
            self.alpha,
            self.beta,
            self.gamma,
            self.c_total,
            self.c_collective,
            self.c_localized,
            self.triangle_slack,
            self.closed_vs_numeric_gap,
        )


@dataclass(frozen=True, eq=False)
class SweepResult:
    records: tuple
    notices: tuple


def _flat_grid(spec):
    """Flattened (q, nu) in canonical order with degenerate points removed."""
    qs, nus = spec.axes()
    q = np.repeat(qs, nus.size)
    nu = np.tile(nus, qs.size)
    degenerate = (q == 1.0) & (nu == 0.0)
    notices = tuple(
        f"skipped undefined point q={format_value(qv)}, nu={format_value(nv)}"
        for qv, nv in zip(q[degenerate], nu[degenerate])
    )
    return q[~degenerate], nu[~degenerate], notices


def sweep_arrays(spec):
    """Vectorised sweep; returns a dict of flat arrays plus notices.

    Keys match CSV_FIELDS.  The coherence columns come from the
    closed-form route; `path_gap` is the largest absolute disagreement
    with the eigensolver route across the three measures per point.
    """
    q, nu, notices = _flat_grid(spec)
    alpha, beta, gamma = alpha_beta_gamma(q, nu)
    spectra = closed_form_spectra(alpha, beta, gamma)
    s_state = spectrum_entropy(spectra.state)
    s_product = spectrum_entropy(spectra.product)
    c_total = sqrt_clipped(
        spectrum_entropy(spectra.mid_state_mixed) - 0.5 * s_state - 1.0
    )
    c_collective = sqrt_clipped(
        spectrum_entropy(spectra.mid_state_product) - 0.5 * (s_state + s_product)
    )
    c_localized = sqrt_clipped(
        spectrum_entropy(spectra.mid_product_mixed) - 0.5 * s_product - 1.0
    )
    num_total, num_collective, num_localized = coherence_components(
        detector_matrix(alpha, beta, gamma), (2, 2)
    )
    path_gap = np.maximum(
        np.abs(c_total - num_total),
        np.maximum(
            np.abs(c_collective - num_collective),
            np.abs(c_localized - num_localized),
        ),
    )
    return {
        "nu": nu,
        "q": q,
        "alpha": alpha,
        "beta": beta,
        "gamma": gamma,
        "c_total": c_total,
        "c_collective": c_collective,
        "c_localized": c_localized,
        "triangle_slack": c_collective + c_localized - c_total,
        "path_gap": path_gap,
    }, notices


def run_sweep(spec):
    """Sweep the grid and return per-point records in canonical order."""
    data, notices = sweep_arrays(spec)
    columns = {name: np.asarray(data[name], dtype=float) for name in CSV_FIELDS}
    field_for = dict(zip(CSV_FIELDS[:-1], CSV_FIELDS[:-1]), path_gap="closed_vs_numeric_gap")
    records = tuple(
        SweepRecord(
            **{field_for[name]: float(columns[name][i]) for name in CSV_FIELDS}
        )
        for i in range(columns["q"].size)
    )
    return SweepResult(records=records, notices=notices)


def write_csv(records, stream):
    """Write records with the canonical header, '\\n' endings, 12 digits."""
    stream.write(CSV_HEADER + "\n")
    for r in records:
        stream.write(",".join(format_value(v) for v in r.csv_values()) + "\n")


def _monotone_fraction(values, axis):
    """Fraction of lines along `axis` that never increase (within tol).

    NaN marks removed grid points; a line's comparisons skip them.
    """
    diffs = np.diff(values, axis=axis)
    ok = (diffs <= MONOTONE_TOL) | np.isnan(diffs)
    lines_ok = np.all(ok, axis=axis)
    return float(np.count_nonzero(lines_ok)) / float(lines_ok.size)


@dataclass(frozen=True)
class VerificationReport:
    points_checked: int
    max_triangle_violation: float
    max_path_gap: float
    min_c_total: float
    monotonic_fraction_in_nu: float
    monotonic_fraction_in_q: float
    passed: bool


def verify_grid(spec=None, tol=1e-9):
    """Check the two hard invariants over a grid and summarise trends.

    Hard checks (decide `passed`): the triangle inequality holds to
    `tol`, and the closed-form and eigensolver routes agree to `tol`.
    Monotonicity fractions are reported but never asserted.
    """
    if spec is None:
        spec = SweepSpec()
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    data, _ = sweep_arrays(spec)
    qs, nus = spec.axes()
    grid = np.full((qs.size, nus.size), np.nan)
    flat_q = np.repeat(qs, nus.size)
    flat_nu = np.tile(nus, qs.size)
    keep = ~((flat_q == 1.0) & (flat_nu == 0.0))
    grid.ravel()[keep] = data["c_total"]
    max_violation = float(np.max(-data["triangle_slack"]))
    max_gap = float(np.max(data["path_gap"]))
    return VerificationReport(
        points_checked=int(data["q"].size),
        max_triangle_violation=max_violation,
        max_path_gap=max_gap,
        min_c_total=float(np.min(data["c_total"])),
        monotonic_fraction_in_nu=_monotone_fraction(grid, axis=1),
        monotonic_fraction_in_q=_monotone_fraction(grid, axis=0),
        passed=bool(max_violation <= tol and max_gap <= tol),
    )


def max_spectra_gap(spec=None):
    """Largest closed-form vs eigensolver spectrum gap over a grid."""
    if spec is None:
        spec = SweepSpec()
    q, nu, _ = _flat_grid(spec)
    alpha, beta, gamma = alpha_beta_gamma(q, nu)
    closed = closed_form_spectra(alpha, beta, gamma)
    states = reference_states(detector_matrix(alpha, beta, gamma), (2, 2))
    worst = 0.0
    for name, values in closed.items():
        numeric = hermitian_eigenvalues(states[name])
        worst = max(worst, float(np.max(np.abs(numeric - values))))
    return worst


def find_min_c_total(nu, q_lo=0.0, q_hi=1.0, xtol=1e-6):
    """Golden-section minimum of the total measure along fixed nu.

    Returns (q_min, value).  Requires nu > 0 so the whole q interval is
    defined; the landscape there is smooth with a single interior dip.
    """
    if not (math.isfinite(nu) and nu > 0.0):
        raise DomainError(f"nu must be positive, got {nu!r}")
    if not (0.0 <= q_lo < q_hi <= 1.0):
        raise DomainError(f"need 0 <= q_lo < q_hi <= 1, got [{q_lo!r}, {q_hi!r}]")
    if not xtol > 0.0:
        raise DomainError(f"xtol must be positive, got {xtol!r}")

    def f(q):
        return float(coherence_closed_form(q, nu).c_total)

    lo, hi = q_lo, q_hi
    a = hi - _INV_PHI * (hi - lo)
    b = lo + _INV_PHI * (hi - lo)
    fa, fb = f(a), f(b)
    best_q, best_val = (a, fa) if fa <= fb else (b, fb)
    while hi - lo > xtol:
        if fa <= fb:
            hi, b, fb = b, a, fa
            a = hi - _INV_PHI * (hi - lo)
            fa = f(a)
        else:
            lo, a, fa = a, b, fb
            b = lo + _INV_PHI * (hi - lo)
            fb = f(b)
        for qq, vv in ((a, fa), (b, fb)):
            if vv < best_val:
                best_q, best_val = qq, vv
    return best_q, best_val
