"""
Deficiency spaces and deficiency indices.

``d_lam(T) = dim R(T - lam I)^⊥``. For Hermitian T it is constant on each
open half-plane; ``d_+`` and ``d_-`` are read at ``lam = +i`` and ``-i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import relation as rel
from . import subspace as sp
from .exceptions import HypothesisError
from .quotient import norm_at, relation_norm
from .subspace import DEFAULT_TOL

# sampling window for half-plane points, kept away from the real axis
RE_MAX = 10.0
IM_MIN = 0.1
IM_MAX = 10.0


def deficiency_space(T, lam, tol=DEFAULT_TOL):
    """``R(T - lam I)^⊥`` as a frame in C^n."""
    return sp.complement(rel.parts(rel.shift(T, lam, tol), tol).range)


def deficiency_index(T, lam, tol=DEFAULT_TOL):
    return deficiency_space(T, lam, tol).rank


def sample_half_plane(rng, count, upper=True):
    re = rng.uniform(-RE_MAX, RE_MAX, size=count)
    im = rng.uniform(IM_MIN, IM_MAX, size=count)
    return re + 1j * (im if upper else -im)


def deficiency_profile(T, lambdas, tol=DEFAULT_TOL):
    """Raw per-point indices for any relation, Hermitian or not."""
    return [(complex(lam), deficiency_index(T, lam, tol)) for lam in lambdas]


@dataclass(frozen=True)
class DeficiencyReport:
    relation_id: str
    lambdas: tuple
    indices: tuple
    d_plus: int
    d_minus: int
    constancy_ok: bool
    seed: int | None = None
    tolerance: dict = field(default_factory=dict)

    @property
    def pair(self):
        return (self.d_plus, self.d_minus)

    def as_dict(self):
        return {
            "relation_id": self.relation_id,
            "d_plus": self.d_plus,
            "d_minus": self.d_minus,
            "constancy_ok": self.constancy_ok,
            "samples": [
                {"lambda": [lam.real, lam.imag], "index": d}
                for lam, d in zip(self.lambdas, self.indices)
            ],
            "seed": self.seed,
            "tolerance": self.tolerance,
        }


def deficiency_indices(T, sample_count=10, seed=0, tol=DEFAULT_TOL, relation_id="T"):
    """Deficiency indices of a Hermitian relation with a half-plane constancy check.

    Samples ``+i``, ``-i`` and ``sample_count`` random points in each open
    half-plane. Raises :class:`HypothesisError` for non-Hermitian input; use
    :func:`deficiency_profile` for raw values in that case.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    if not rel.classify(T, tol).is_hermitian:
        raise HypothesisError("deficiency indices are only constant for Hermitian relations",
                              failed=("hermitian",))
    rng = np.random.default_rng(seed)
    upper = [1j, *sample_half_plane(rng, sample_count, True)]
    lower = [-1j, *sample_half_plane(rng, sample_count, False)]
    up = [deficiency_index(T, lam, tol) for lam in upper]
    lo = [deficiency_index(T, lam, tol) for lam in lower]
    return DeficiencyReport(
        relation_id=relation_id,
        lambdas=tuple(complex(z) for z in upper + lower),
        indices=tuple(up + lo),
        d_plus=up[0],
        d_minus=lo[0],
        constancy_ok=len(set(up)) == 1 and len(set(lo)) == 1,
        seed=seed,
        tolerance=tol.as_dict(),
    )


def pythagoras_residual(T, x, z, tol=DEFAULT_TOL):
    """``||(T-z)(x)||^2 - ||(T-Re z)(x)||^2 - (Im z)^2 ||x||^2`` for Hermitian T."""
    z = complex(z)
    lhs = norm_at(rel.shift(T, z, tol), x, tol) ** 2
    rhs = norm_at(rel.shift(T, z.real, tol), x, tol) ** 2 + z.imag ** 2 * float(np.vdot(x, x).real)
    return lhs - rhs


def resolvent_norm(T, z, tol=DEFAULT_TOL):
    """``||(T - z I)^{-1}||`` as a relation norm."""
    return relation_norm(rel.inverse(rel.shift(T, z, tol)), tol)
