"""Two-detector state after a uniformly accelerated interaction window.

One detector accelerates uniformly, the other stays inertial; both
couple weakly to the field through a Gaussian switching window.  To
leading order in the coupling the joint state depends on two
dimensionless numbers only:

    q  in [0, 1]   thermal weight exp(-2*pi*gap/acceleration)
    nu >= 0        effective coupling, nu^2 = eps^2*gap*width*exp(-gap^2*tail^2)/(2*pi)

The joint state in the ordered basis |00>, |01>, |10>, |11> (first
factor = accelerated detector) is

    [[gamma, 0,     0,     0   ],
     [0,     alpha, alpha, 0   ],
     [0,     alpha, alpha, 0   ],
     [0,     0,     0,     beta]]

with alpha = (1-q)/D, beta = nu^2*q/D, gamma = nu^2/D and
D = 2*(1-q) + nu^2*(1+q).  At q=1, nu=0 the denominator vanishes and
the state is undefined; that point is rejected everywhere.

Every spectrum needed for the three coherence measures has a closed
form in (alpha, beta, gamma), collected in `closed_form_spectra`; the
generic eigensolver path must reproduce them to round-off, which is the
package's main internal cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherence import CoherenceTriple, reference_states, sqrt_clipped
from .errors import DomainError
from .linalg import hermitian_eigenvalues, spectrum_entropy

# Perturbative treatment is only trustworthy for weak coupling; warn
# beyond this.
COUPLING_WARN_THRESHOLD = 0.1

# Closed-form spectrum constraint slop (exact identities up to float
# rounding in alpha, beta, gamma themselves).
_CONSTRAINT_TOL = 1e-12


def _coupling_warning(nu_squared):
    if nu_squared > COUPLING_WARN_THRESHOLD:
        return (
            f"nu^2 = {nu_squared:.6g} exceeds {COUPLING_WARN_THRESHOLD}; "
            "the leading-order state is unreliable at this coupling"
        )
    return None


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model point (q, nu)."""

    q: float
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and 0.0 <= self.q <= 1.0):
            raise DomainError(f"q must lie in [0, 1], got {self.q!r}")
        if not (math.isfinite(self.nu) and self.nu >= 0.0):
            raise DomainError(f"nu must be non-negative, got {self.nu!r}")

    @property
    def nu_squared(self):
        return self.nu * self.nu

    def is_degenerate(self):
        """True at the undefined corner q=1, nu=0."""
        return self.q == 1.0 and self.nu == 0.0

    def validity_warnings(self):
        w = _coupling_warning(self.nu_squared)
        return (w,) if w else ()


@dataclass(frozen=True)
class PhysicalParams:
    """Physical inputs that map onto (q, nu).

    omega  detector energy gap (> 0)
    accel  proper acceleration of the moving detector (>= 0)
    eps    coupling strength (>= 0)
    delta  Gaussian window width (> 0)
    kappa  window tail parameter (>= 0)
    """

    omega: float
    accel: float
    eps: float
    delta: float
    kappa: float = 0.0

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega!r}")
        if self.accel < 0.0 or math.isnan(self.accel):
            raise DomainError(f"accel must be non-negative, got {self.accel!r}")
        if self.eps < 0.0 or math.isnan(self.eps):
            raise DomainError(f"eps must be non-negative, got {self.eps!r}")
        if not self.delta > 0.0:
            raise DomainError(f"delta must be positive, got {self.delta!r}")
        if self.kappa < 0.0 or math.isnan(self.kappa):
            raise DomainError(f"kappa must be non-negative, got {self.kappa!r}")

    def validity_warnings(self):
        warnings = []
        if self.omega * self.delta < 10.0:
            warnings.append(
                f"omega*delta = {self.omega * self.delta:.6g} < 10; the window "
                "is too short for the single-gap approximation"
            )
        w = _coupling_warning(nu_squared_from_physical(self))
        if w:
            warnings.append(w)
        return tuple(warnings)


def q_from_acceleration(omega, accel):
    """Thermal weight exp(-2*pi*omega/accel); zero acceleration gives 0."""
    if not omega > 0.0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if accel < 0.0 or math.isnan(accel):
        raise DomainError(f"accel must be non-negative, got {accel!r}")
    if accel == 0.0:
        return 0.0
    return math.exp(-2.0 * math.pi * omega / accel)


def nu_squared_from_physical(params):
    """Effective squared coupling for Gaussian switching."""
    return (
        params.eps ** 2
        * params.omega
        * params.delta
        * math.exp(-(params.omega ** 2) * params.kappa ** 2)
        / (2.0 * math.pi)
    )


def model_params_from_physical(params):
    """Collapse physical inputs to the dimensionless pair (q, nu)."""
    q = q_from_acceleration(params.omega, params.accel)
    nu = math.sqrt(nu_squared_from_physical(params))
    return ModelParams(q=q, nu=nu)


def alpha_beta_gamma(q, nu):
    """Weights of the joint state; batch aware.

    Raises DomainError outside 0 <= q <= 1, nu >= 0 or at the
    degenerate corner q=1, nu=0.
    """
    q = np.asarray(q, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if not np.all(np.isfinite(q)) or np.any(q < 0.0) or np.any(q > 1.0):
        raise DomainError("q must lie in [0, 1]")
    if not np.all(np.isfinite(nu)) or np.any(nu < 0.0):
        raise DomainError("nu must be non-negative")
    nu2 = nu * nu
    den = 2.0 * (1.0 - q) + nu2 * (1.0 + q)
    if np.any(den == 0.0):
        raise DomainError("state is undefined at q=1, nu=0")
    return (1.0 - q) / den, nu2 * q / den, nu2 / den


def detector_matrix(alpha, beta, gamma):
    """Assemble the 4x4 joint state from its weights; batch aware."""
    alpha, beta, gamma = np.broadcast_arrays(
        np.asarray(alpha, dtype=float),
        np.asarray(beta, dtype=float),
        np.asarray(gamma, dtype=float),
    )
    out = np.zeros(alpha.shape + (4, 4), dtype=complex)
    out[..., 0, 0] = gamma
    out[..., 1, 1] = alpha
    out[..., 2, 2] = alpha
    out[..., 3, 3] = beta
    out[..., 1, 2] = alpha
    out[..., 2, 1] = alpha
    return out


@dataclass(frozen=True, eq=False)
class ModelPoint:
    """A model point with its weights and assembled state."""

    params: ModelParams
    alpha: float
    beta: float
    gamma: float
    state: np.ndarray


def detector_state(params):
    """Build the ModelPoint for validated parameters."""
    if params.is_degenerate():
        raise DomainError("state is undefined at q=1, nu=0")
    alpha, beta, gamma = alpha_beta_gamma(params.q, params.nu)
    return ModelPoint(
        params=params,
        alpha=float(alpha),
        beta=float(beta),
        gamma=float(gamma),
        state=detector_matrix(alpha, beta, gamma),
    )


@dataclass(frozen=True, eq=False)
class ClosedFormSpectra:
    """Closed-form ascending spectra of the five reference states."""

    state: np.ndarray
    product: np.ndarray
    mid_state_mixed: np.ndarray
    mid_state_product: np.ndarray
    mid_product_mixed: np.ndarray

    def items(self):
        return (
            ("state", self.state),
            ("product", self.product),
            ("mid_state_mixed", self.mid_state_mixed),
            ("mid_state_product", self.mid_state_product),
            ("mid_product_mixed", self.mid_product_mixed),
        )


def closed_form_spectra(alpha, beta, gamma):
    """Exact eigenvalues of the five reference states; batch aware.

    With u = alpha + beta and v = alpha + gamma (the reduction weights):

        state              {0, 2*alpha, beta, gamma}
        product            {u^2, u*v, u*v, v^2}
        mid_state_mixed    {1/8, (1+8*alpha)/8, (1+4*beta)/8, (1+4*gamma)/8}
        mid_state_product  {(beta+u^2)/2, u*v/2, (2*alpha+u*v)/2, (gamma+v^2)/2}
        mid_product_mixed  {(1+4*u^2)/8, (1+4*u*v)/8, (1+4*u*v)/8, (1+4*v^2)/8}

    Entries are sorted ascending.  Raises DomainError if the weights are
    not a normalized non-negative triple (2*alpha + beta + gamma = 1).
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    lowest = min(float(np.min(alpha)), float(np.min(beta)), float(np.min(gamma)))
    if lowest < -_CONSTRAINT_TOL:
        raise DomainError(f"negative weight {lowest:.6e}")
    norm_defect = float(np.max(np.abs(2.0 * alpha + beta + gamma - 1.0)))
    if norm_defect > _CONSTRAINT_TOL:
        raise DomainError(f"weights not normalized (defect {norm_defect:.3e})")
    u = alpha + beta
    v = alpha + gamma
    uv = u * v
    zeros = np.zeros_like(alpha)

    def pack(*entries):
        return np.sort(np.stack(np.broadcast_arrays(*entries), axis=-1), axis=-1)

    return ClosedFormSpectra(
        state=pack(zeros, 2.0 * alpha, beta, gamma),
        product=pack(u * u, uv, uv, v * v),
        mid_state_mixed=pack(
            0.125 * np.ones_like(alpha),
            0.125 * (1.0 + 8.0 * alpha),
            0.125 * (1.0 + 4.0 * beta),
            0.125 * (1.0 + 4.0 * gamma),
        ),
        mid_state_product=pack(
            0.5 * (beta + u * u),
            0.5 * uv,
            0.5 * (2.0 * alpha + uv),
            0.5 * (gamma + v * v),
        ),
        mid_product_mixed=pack(
            0.125 * (1.0 + 4.0 * u * u),
            0.125 * (1.0 + 4.0 * uv),
            0.125 * (1.0 + 4.0 * uv),
            0.125 * (1.0 + 4.0 * v * v),
        ),
    )


def coherence_closed_form(q, nu):
    """All three measures from the closed-form spectra; batch aware."""
    alpha, beta, gamma = alpha_beta_gamma(q, nu)
    spectra = closed_form_spectra(alpha, beta, gamma)
    s_state = spectrum_entropy(spectra.state)
    s_product = spectrum_entropy(spectra.product)
    total = sqrt_clipped(
        spectrum_entropy(spectra.mid_state_mixed) - 0.5 * s_state - 1.0
    )
    collective = sqrt_clipped(
        spectrum_entropy(spectra.mid_state_product) - 0.5 * (s_state + s_product)
    )
    localized = sqrt_clipped(
        spectrum_entropy(spectra.mid_product_mixed) - 0.5 * s_product - 1.0
    )
    return CoherenceTriple.from_components(total, collective, localized)


def spectra_comparison(params):
    """Closed-form vs eigensolver spectra at one model point.

    Returns (closed ClosedFormSpectra, numeric dict, per-family gap dict).
    """
    point = detector_state(params)
    closed = closed_form_spectra(point.alpha, point.beta, point.gamma)
    numeric = {
        name: hermitian_eigenvalues(m)
        for name, m in reference_states(point.state, (2, 2)).items()
    }
    gaps = {
        name: float(np.max(np.abs(numeric[name] - values)))
        for name, values in closed.items()
    }
    return closed, numeric, gaps
