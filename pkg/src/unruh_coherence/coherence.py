"""Basis-independent coherence measures built on a square-root divergence.

The divergence between two states is

    div(rho, sigma) = sqrt( S((rho+sigma)/2) - (S(rho) + S(sigma))/2 )

with S the base-2 von Neumann entropy.  Three derived measures:

    total      = div(rho, I/d)          distance to the maximally mixed state
    collective = div(rho, pi)           distance to the product of reductions
    localized  = div(pi, I/d)           product-of-reductions to maximally mixed

where pi is the tensor product of the single-party reductions of rho.
The square root makes the divergence a metric, so the triangle
inequality  collective + localized >= total  holds for every state.

All functions accept leading batch axes and return matching batch shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericalConsistencyError
from .linalg import (
    equal_mixture,
    hermitian_eigenvalues,
    maximally_mixed,
    partial_trace,
    spectrum_entropy,
    tensor_product,
    von_neumann_entropy,
)

# A squared divergence in [-RADICAND_TOL, 0) is round-off and clips to
# zero; anything more negative signals an inconsistent entropy triple.
RADICAND_TOL = 1e-12


def sqrt_clipped(radicand):
    """sqrt with the small-negative clipping policy applied."""
    rad = np.asarray(radicand, dtype=float)
    low = float(np.min(rad)) if rad.size else 0.0
    if low < -RADICAND_TOL:
        raise NumericalConsistencyError(
            f"negative squared divergence {low:.6e} exceeds round-off tolerance"
        )
    return np.sqrt(np.where(rad < 0.0, 0.0, rad))


def divergence_sqrt(rho, sigma):
    """Square-root entropic divergence between two density matrices."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    mid = equal_mixture(rho, sigma)
    radicand = von_neumann_entropy(mid) - 0.5 * (
        von_neumann_entropy(rho) + von_neumann_entropy(sigma)
    )
    return sqrt_clipped(radicand)


def product_surrogate(rho, dims):
    """Tensor product of the single-factor reductions of `rho`."""
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise DimensionError("need at least two tensor factors")
    out = partial_trace(rho, 0, dims)
    for k in range(1, len(dims)):
        out = tensor_product(out, partial_trace(rho, k, dims))
    return out


def coherence_total(rho):
    """Divergence from the maximally mixed state."""
    rho = np.asarray(rho, dtype=complex)
    return divergence_sqrt(rho, maximally_mixed(rho.shape[-1]))


def coherence_collective(rho, dims):
    """Divergence from the product of the state's own reductions."""
    return divergence_sqrt(rho, product_surrogate(rho, dims))


def coherence_localized(rho, dims):
    """Divergence of the product of reductions from maximally mixed."""
    rho = np.asarray(rho, dtype=complex)
    return divergence_sqrt(product_surrogate(rho, dims), maximally_mixed(rho.shape[-1]))


def reference_states(rho, dims):
    """The five matrices whose spectra determine all three measures.

    Returns a dict, in canonical order: the state itself, the product
    of its reductions, and the three pairwise equal mixtures with the
    maximally mixed state interleaved.
    """
    rho = np.asarray(rho, dtype=complex)
    mixed = maximally_mixed(rho.shape[-1])
    product = product_surrogate(rho, dims)
    return {
        "state": rho,
        "product": product,
        "mid_state_mixed": equal_mixture(rho, mixed),
        "mid_state_product": equal_mixture(rho, product),
        "mid_product_mixed": equal_mixture(product, mixed),
    }


def coherence_components(rho, dims, return_spectra=False):
    """All three measures from one shared set of eigensolves.

    Cheaper than calling the three measures separately (five eigensolves
    instead of nine) and guarantees they are evaluated on identical
    spectra.  With `return_spectra=True` also returns the dict of
    ascending eigenvalue arrays keyed like `reference_states`.

    Returns
    -------
    (total, collective, localized) arrays, plus the spectra dict if
    requested.
    """
    states = reference_states(rho, dims)
    spectra = {name: hermitian_eigenvalues(m) for name, m in states.items()}
    dim = states["state"].shape[-1]
    s_state = spectrum_entropy(spectra["state"])
    s_product = spectrum_entropy(spectra["product"])
    s_mixed = np.log2(float(dim))
    total = sqrt_clipped(
        spectrum_entropy(spectra["mid_state_mixed"]) - 0.5 * (s_state + s_mixed)
    )
    collective = sqrt_clipped(
        spectrum_entropy(spectra["mid_state_product"]) - 0.5 * (s_state + s_product)
    )
    localized = sqrt_clipped(
        spectrum_entropy(spectra["mid_product_mixed"]) - 0.5 * (s_product + s_mixed)
    )
    if return_spectra:
        return total, collective, localized, spectra
    return total, collective, localized


@dataclass(frozen=True, eq=False)
class CoherenceTriple:
    """The three measures plus the triangle-inequality slack.

    `triangle_slack = c_collective + c_localized - c_total`; it is
    non-negative for every valid state (up to round-off).
    """

    c_total: float
    c_collective: float
    c_localized: float
    triangle_slack: float

    @classmethod
    def from_components(cls, total, collective, localized):
        return cls(total, collective, localized, collective + localized - total)


def coherence_triple(rho, dims):
    """Evaluate all three measures on `rho` and package them."""
    total, collective, localized = coherence_components(rho, dims)
    return CoherenceTriple.from_components(total, collective, localized)
