"""
Compact Heisenberg Quotients
============================

Normal-form lattice data for M = Gamma_ell \\ H_d: the divisor chain ell, the
center parameter c (the center meets the lattice in (0, 0, cZ)), the derived
constants L = ell_1 ... ell_d and vol(M) = L c^(d+1), the projected lattice
Lambda = pi(Gamma) in C^d = R^2d and its dual Lambda'.

All lattice arithmetic is exact (``fractions.Fraction``). The polarized
coordinates (p, q) are identified with C^d through p + iq, and the dual pairing
is the standard real inner product on R^2d without a 2*pi factor.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Any, Dict, Tuple

from src.spectra.errors import SpectralValidationError
from src.utils.rationals import RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)


def _positive_rational(name: str, value: RationalLike) -> Fraction:
    try:
        parsed = parse_rational(value)
    except ValueError as exc:
        raise SpectralValidationError(f"{name}: {exc}") from exc
    if parsed <= 0:
        raise SpectralValidationError(f"{name} must be positive, got {format_rational(parsed)}")
    return parsed


# =============================================================================
# LATTICES
# =============================================================================

@dataclass(frozen=True)
class DiagonalLattice:
    """Lattice in R^dim spanned by diag[k] * e_k."""

    diag: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.diag) == 0:
            raise SpectralValidationError("a lattice needs at least one basis vector")
        entries = tuple(_positive_rational(f"diag[{k}]", v) for k, v in enumerate(self.diag))
        object.__setattr__(self, "diag", entries)

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def covolume(self) -> Fraction:
        return prod(self.diag, start=Fraction(1))

    def scaled(self, r: RationalLike) -> "DiagonalLattice":
        factor = _positive_rational("r", r)
        return DiagonalLattice(tuple(factor * v for v in self.diag))


# =============================================================================
# QUOTIENT GEOMETRY
# =============================================================================

@dataclass(frozen=True)
class QuotientGeometry:
    """
    Compact quotient Gamma_ell \\ H_d.

    ``scale`` multiplies the projected lattice; it is 1 for Gamma_ell itself
    and r after a dilation by r.
    """
    d: int
    ell: Tuple[int, ...]
    c: Fraction
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise SpectralValidationError(f"d must be a positive integer, got {self.d!r}")
        ell = tuple(self.ell)
        if len(ell) != self.d:
            raise SpectralValidationError(
                f"ell must have d = {self.d} entries, got {len(ell)}: {list(ell)}"
            )
        for k, entry in enumerate(ell, start=1):
            if isinstance(entry, bool) or not isinstance(entry, int) or entry < 1:
                raise SpectralValidationError(f"ell_{k} must be a positive integer, got {entry!r}")
        for k in range(1, self.d):
            if ell[k] % ell[k - 1] != 0:
                raise SpectralValidationError(
                    f"divisibility chain broken: ell_{k}={ell[k - 1]} does not divide "
                    f"ell_{k + 1}={ell[k]}"
                )
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "c", _positive_rational("c", self.c))
        object.__setattr__(self, "scale", _positive_rational("scale", self.scale))

    @property
    def L(self) -> int:
        return prod(self.ell)

    @property
    def volume(self) -> Fraction:
        return self.L * self.c ** (self.d + 1)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"d": self.d, "ell": list(self.ell), "c": format_rational(self.c)}
        if self.scale != 1:
            data["scale"] = format_rational(self.scale)
        return data


def make_quotient(d: int, ell, c: RationalLike, scale: RationalLike = 1) -> QuotientGeometry:
    """
    Build and validate a quotient.

    Parameters
    ----------
    d : int
        Complex dimension, d >= 1.
    ell : sequence of int
        Divisor chain ell_1 | ell_2 | ... | ell_d.
    c : int, Fraction or "num/den"
        Center parameter, c > 0.
    scale : rational, optional
        Lattice scale (1 unless the quotient is a dilation).

    Returns
    -------
    QuotientGeometry

    Raises
    ------
    SpectralValidationError
        On a broken divisibility chain (naming the pair) or nonpositive input.
    """
    geometry = QuotientGeometry(d=d, ell=tuple(ell), c=c, scale=scale)
    logger.debug("quotient d=%d ell=%s L=%d vol=%s", geometry.d, geometry.ell,
                 geometry.L, geometry.volume)
    return geometry


def projected_lattice(q: QuotientGeometry) -> DiagonalLattice:
    """Lambda = pi(Gamma): unit p-directions, q_j-directions of length ell_j."""
    return DiagonalLattice(
        tuple(q.scale for _ in range(q.d)) + tuple(q.scale * entry for entry in q.ell)
    )


def dual_lattice(lattice: DiagonalLattice) -> DiagonalLattice:
    """{xi : <xi, v> in Z for all v}; reciprocal entries for a diagonal lattice."""
    return DiagonalLattice(tuple(1 / v for v in lattice.diag))


# =============================================================================
# JSON INTERFACE
# =============================================================================

def quotient_to_json(q: QuotientGeometry) -> str:
    """Serialize as {"d": int, "ell": [int], "c": "num/den"}."""
    return json.dumps(q.to_dict())


def quotient_from_json(text: str) -> QuotientGeometry:
    """Inverse of :func:`quotient_to_json`."""
    try:
        data = json.loads(text)
        return make_quotient(data["d"], data["ell"], data["c"], data.get("scale", 1))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise SpectralValidationError(f"malformed quotient JSON: {exc}") from exc
