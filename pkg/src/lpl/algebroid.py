"""Infinitesimal groupoid data attached to affine subspaces of the dual.

Only Lie-algebra-level objects are computed: the subalgebroid fiber d inside
a subalgebra h, coadjoint isotropy algebras, and the constant-orbit-dimension
criterion for lines and planes meeting the leaves transversely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .lie import LieAlgebra, NotASubalgebra, is_subalgebra
from .linalg import (
    Subspace,
    Vector,
    dot,
    nullspace,
    rank_kernel_image,
    vadd,
    vec,
    vscale,
    zero_vector,
)
from .lie_poisson import bivector_at
from .submanifold import AffineSubspace, SampleSpec


def algebroid_fiber_d(c: AffineSubspace) -> tuple[Subspace, bool]:
    """d = h intersected with {v : <base, [v, w]> = 0 for all w in h}.

    This is the fiber of the subalgebroid attached to C; requires h to be a
    subalgebra.  Also reports whether d is itself a subalgebra.
    """
    algebra, h = c.algebra, c.h
    if not is_subalgebra(algebra, h):
        raise NotASubalgebra("the subalgebroid fiber needs h to be a subalgebra")
    m = h.dim
    # Rows: conditions <lambda, [v, w_j]> = 0 on v = sum_i c_i h_i.
    rows = [
        [dot(c.base, algebra.bracket(h.basis[i], w)) for i in range(m)]
        for w in h.basis
    ]
    kernel_coords = nullspace(tuple(tuple(r) for r in rows), m)
    vectors = []
    for coords in kernel_coords:
        v = zero_vector(algebra.dim)
        for cf, hb in zip(coords, h.basis):
            v = vadd(v, vscale(cf, hb))
        vectors.append(v)
    d = Subspace.span(algebra.dim, vectors)
    return d, is_subalgebra(algebra, d)


def isotropy_algebra(algebra: LieAlgebra, x: Iterable) -> Subspace:
    """g_x = {v : <x, [v, w]> = 0 for all w}; the conormal of the orbit at x."""
    xv = vec(x)
    pi = bivector_at(algebra, xv)
    # v in the kernel of v -> v^T Pi, i.e. of Pi^T; Pi is skew so use Pi itself.
    return Subspace(algebra.dim, nullspace(pi, algebra.dim))


def orbit_tangent(algebra: LieAlgebra, x: Iterable) -> Subspace:
    """Tangent of the coadjoint orbit: the image of sharp at x."""
    pi = bivector_at(algebra, vec(x))
    _, _, image = rank_kernel_image(pi)
    return image


@dataclass(frozen=True)
class AlgebroidFiberReport:
    d: Optional[Subspace]  # None when h is not a subalgebra
    d_is_subalgebra: Optional[bool]
    orbit_dims: tuple[tuple[Vector, int], ...]  # (point, dim of orbit through it)
    transversal: tuple[tuple[Vector, bool], ...]  # TC meets orbit tangent in 0
    constant_orbit_dim: bool
    samples: int
    seed: int


def transversal_orbit_report(
    c: AffineSubspace, sampling: SampleSpec = SampleSpec()
) -> AlgebroidFiberReport:
    """Orbit dimensions and leaf-transversality along C, plus the fiber d."""
    points = [c.base] + c.sample_points(sampling)
    tangent_c = c.direction
    orbit_dims = []
    transversal = []
    for x in points:
        tangent_o = orbit_tangent(c.algebra, x)
        orbit_dims.append((x, tangent_o.dim))
        transversal.append((x, tangent_c.intersect(tangent_o).dim == 0))
    dims = {d for _, d in orbit_dims}
    if is_subalgebra(c.algebra, c.h):
        d, d_sub = algebroid_fiber_d(c)
    else:
        d, d_sub = None, None
    return AlgebroidFiberReport(
        d=d,
        d_is_subalgebra=d_sub,
        orbit_dims=tuple(orbit_dims),
        transversal=tuple(transversal),
        constant_orbit_dim=len(dims) == 1,
        samples=sampling.count,
        seed=sampling.seed,
    )
