"""Affine subspaces C = lambda + h-annihilator of a Lie-Poisson dual.

Classification into coisotropic / pre-Poisson / Poisson-Dirac / cosymplectic.
The conormal space of C at every point is canonically the defining subspace h,
and sharp N*_x C is the span of coad_v(x) over v in h.

Coisotropy and the subalgebra-case pre-Poisson verdict are exact theorems;
for non-subalgebra h the rank-constancy verdict is evidence from exact
rational sample points and is labelled as such.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .lie import LieAlgebra, LinearMap, NotASubalgebra, direct_sum, is_subalgebra, subspace_bracket
from .linalg import (
    DimensionMismatch,
    Subspace,
    Vector,
    choose_complement,
    dot,
    solve,
    vadd,
    vec,
    vscale,
    zero_vector,
)

CERTIFIED_CONSTANT = "certified_constant"
SAMPLED_CONSTANT = "sampled_constant"
NOT_CONSTANT = "not_constant"


class NotOnSubmanifold(ValueError):
    """A point that was required to lie on the affine subspace does not."""


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic exact sampling: seeded rationals with small numerators."""

    count: int = 64
    seed: int = 0
    bound: int = 1000

    def rationals(self, how_many: int) -> list[Fraction]:
        rng = random.Random(self.seed)
        return [
            Fraction(rng.randint(-self.bound, self.bound), rng.randint(1, self.bound))
            for _ in range(how_many)
        ]


@dataclass(frozen=True)
class AffineSubspace:
    """C = base + annihilator(h) inside the dual of ``algebra``."""

    algebra: LieAlgebra
    h: Subspace
    base: Vector

    def __post_init__(self):
        if self.h.ambient_dim != self.algebra.dim:
            raise DimensionMismatch("defining subspace must live in the algebra")
        if len(self.base) != self.algebra.dim:
            raise DimensionMismatch("base point must have the algebra dimension")
        object.__setattr__(self, "base", vec(self.base))

    @property
    def direction(self) -> Subspace:
        return self.h.annihilator()

    @property
    def dim(self) -> int:
        return self.algebra.dim - self.h.dim

    def contains(self, x: Iterable) -> bool:
        return self.direction.contains_vector(vsub_checked(vec(x), self.base))

    def require_point(self, x: Iterable) -> Vector:
        xv = vec(x)
        if not self.contains(xv):
            raise NotOnSubmanifold(f"point {xv} is not on the affine subspace")
        return xv

    def sample_points(self, sampling: SampleSpec) -> list[Vector]:
        """``sampling.count`` exact points base + sum t_a u_a, seed-determined."""
        direction = self.direction.basis
        if not direction:
            return [self.base for _ in range(min(sampling.count, 1))]
        coeffs = sampling.rationals(sampling.count * len(direction))
        points = []
        for s in range(sampling.count):
            x = self.base
            for a, u in enumerate(direction):
                x = vadd(x, vscale(coeffs[s * len(direction) + a], u))
            points.append(x)
        return points


def vsub_checked(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch("points of different dimensions")
    return tuple(a - b for a, b in zip(x, y))


def sharp_conormal_at(c: AffineSubspace, x: Iterable) -> Subspace:
    """sharp N*_x C = span of coad_v(x) over a basis v of h (x must lie on C)."""
    xv = c.require_point(x)
    images = [c.algebra.coad_apply(v, xv) for v in c.h.basis]
    return Subspace.span(c.algebra.dim, images)


@dataclass(frozen=True)
class CoisotropyResult:
    coisotropic: bool
    # On failure: ("bracket_escapes", u, v, [u,v]) when h is not a subalgebra,
    # or ("character_fails", w) for w in [h,h] with <lambda, w> != 0.
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.coisotropic


def is_coisotropic(c: AffineSubspace) -> CoisotropyResult:
    """Exact verdict: h is a subalgebra and lambda kills [h, h]."""
    algebra, h = c.algebra, c.h
    for i, u in enumerate(h.basis):
        for v in h.basis[i + 1 :]:
            w = algebra.bracket(u, v)
            if not h.contains_vector(w):
                return CoisotropyResult(False, ("bracket_escapes", u, v, w))
    for u in subspace_bracket(algebra, h, h).basis:
        if dot(c.base, u) != 0:
            return CoisotropyResult(False, ("character_fails", u))
    return CoisotropyResult(True)


@dataclass(frozen=True)
class PrePoissonVerdict:
    kind: str  # CERTIFIED_CONSTANT | SAMPLED_CONSTANT | NOT_CONSTANT
    rank: Optional[int] = None
    space: Optional[Subspace] = None  # the constant space, certified case only
    counterexample: Optional[tuple[tuple[Vector, int], tuple[Vector, int]]] = None
    samples: int = 0
    seed: Optional[int] = None

    @property
    def constant(self) -> bool:
        return self.kind != NOT_CONSTANT


def _span_with_sharp(c: AffineSubspace, x: Vector) -> Subspace:
    vectors = list(c.direction.basis) + [c.algebra.coad_apply(v, x) for v in c.h.basis]
    return Subspace.span(c.algebra.dim, vectors)


def pre_poisson_check(
    c: AffineSubspace, sampling: SampleSpec = SampleSpec()
) -> PrePoissonVerdict:
    """Constancy of rank(T_x C + sharp N*_x C) along C.

    When h is a subalgebra the space equals h-annihilator + coad_h(base) at
    every point, which is a proved certificate, not sampled evidence.
    Otherwise the rank is compared at the base point and at seeded exact
    sample points.
    """
    if is_subalgebra(c.algebra, c.h):
        space = _span_with_sharp(c, c.base)
        return PrePoissonVerdict(CERTIFIED_CONSTANT, rank=space.dim, space=space)
    base_rank = _span_with_sharp(c, c.base).dim
    witness_base = (c.base, base_rank)
    for x in c.sample_points(sampling):
        r = _span_with_sharp(c, x).dim
        if r != base_rank:
            return PrePoissonVerdict(
                NOT_CONSTANT,
                counterexample=(witness_base, (x, r)),
                samples=sampling.count,
                seed=sampling.seed,
            )
    return PrePoissonVerdict(
        SAMPLED_CONSTANT, rank=base_rank, samples=sampling.count, seed=sampling.seed
    )


@dataclass(frozen=True)
class PointwiseFlags:
    characteristic_rank: int
    poisson_dirac: bool
    cosymplectic: bool


def pointwise_flags(c: AffineSubspace, x: Iterable) -> PointwiseFlags:
    """Characteristic rank, Poisson-Dirac and cosymplectic tests at x in C."""
    sharp = sharp_conormal_at(c, x)
    tangent = c.direction
    char_rank = tangent.intersect(sharp).dim
    poisson_dirac = char_rank == 0
    cosymplectic = poisson_dirac and tangent.dim + sharp.dim == c.algebra.dim
    return PointwiseFlags(char_rank, poisson_dirac, cosymplectic)


@dataclass(frozen=True)
class ClassificationReport:
    coisotropic: CoisotropyResult
    pre_poisson: PrePoissonVerdict
    generic_rank: int
    characteristic_rank_at_base: int
    poisson_dirac_at_base: bool
    cosymplectic_at_base: bool


def classify(c: AffineSubspace, sampling: SampleSpec = SampleSpec()) -> ClassificationReport:
    coiso = is_coisotropic(c)
    pp = pre_poisson_check(c, sampling)
    if pp.rank is not None:
        generic = pp.rank
    else:
        generic = max(pp.counterexample[0][1], pp.counterexample[1][1])
    flags = pointwise_flags(c, c.base)
    return ClassificationReport(
        coisotropic=coiso,
        pre_poisson=pp,
        generic_rank=generic,
        characteristic_rank_at_base=flags.characteristic_rank,
        poisson_dirac_at_base=flags.poisson_dirac,
        cosymplectic_at_base=flags.cosymplectic,
    )


# -- restriction-map preimages ---------------------------------------------


def _lift_matrix(algebra: LieAlgebra, h: Subspace) -> tuple[Subspace, list[Vector]]:
    """Complement W of h and the rows (h basis then W basis) used for lifting."""
    w = choose_complement(h, Subspace.full(algebra.dim))
    return w, list(h.basis) + list(w.basis)


def _lift_covector(rows: list[Vector], nu: Vector, h_dim: int, n: int) -> Vector:
    rhs = tuple(nu) + zero_vector(n - h_dim)
    lam = solve(tuple(rows), rhs)
    assert lam is not None  # rows form a basis of the ambient space
    return lam


def restricted_algebra(algebra: LieAlgebra, h: Subspace) -> LieAlgebra:
    """h as a Lie algebra in its canonical basis; requires h a subalgebra."""
    m = h.dim
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            w = algebra.bracket(h.basis[i], h.basis[j])
            coords = h.coords_of(w)
            if coords is None:
                raise NotASubalgebra("subspace is not closed under the bracket")
            if any(x != 0 for x in coords):
                brackets[(i, j)] = coords
    return LieAlgebra.from_brackets(m, brackets)


def preimage_construction(
    algebra: LieAlgebra,
    h: Subspace,
    nu: Iterable,
    with_slice: bool = False,
) -> tuple[AffineSubspace, Optional[AffineSubspace]]:
    """Pre-image of a point nu in h* under the restriction map g* -> h*.

    Returns C = lambda + h-annihilator for the canonical lift lambda of nu
    (zero on the greedy complement of h).  With ``with_slice`` also returns
    the pre-image of the greedy slice through nu transverse to the coadjoint
    orbit of the subalgebra, which contains C coisotropically.
    """
    if not is_subalgebra(algebra, h):
        raise NotASubalgebra("preimage construction requires a subalgebra")
    n = algebra.dim
    nu_v = vec(nu)
    if len(nu_v) != h.dim:
        raise DimensionMismatch("nu must be a covector on the subalgebra")
    _, rows = _lift_matrix(algebra, h)
    lam = _lift_covector(rows, nu_v, h.dim, n)
    c = AffineSubspace(algebra, h, lam)
    if not with_slice:
        return c, None
    sub = restricted_algebra(algebra, h)
    orbit_tangent = Subspace.span(
        h.dim, [sub.coad_apply(sub_basis_vec, nu_v) for sub_basis_vec in _std_basis(h.dim)]
    )
    slice_dir = choose_complement(orbit_tangent, Subspace.full(h.dim))
    lifted = [_lift_covector(rows, mu, h.dim, n) for mu in slice_dir.basis]
    direction = c.direction.sum(Subspace.span(n, lifted))
    p_tilde = AffineSubspace(algebra, direction.annihilator(), lam)
    return c, p_tilde


def _std_basis(n: int) -> list[Vector]:
    from .linalg import unit_vector

    return [unit_vector(n, i) for i in range(n)]


# -- graphs and products ----------------------------------------------------


def graph_coisotropy(phi: LinearMap) -> tuple[Subspace, bool]:
    """Coisotropy of the graph of the dual map, at the linear level.

    For phi: h -> g the graph of phi* in g* x h* is the annihilator of
    W = {(-phi(w), w)} inside the product algebra with the bar (sign -1)
    second factor; the graph is coisotropic iff W is a subalgebra there.
    """
    g, h = phi.codomain, phi.domain
    product_algebra = direct_sum(g, h, sign=-1)
    generators = []
    for j in range(h.dim):
        e_j = _std_basis(h.dim)[j]
        generators.append(vscale(-1, phi.apply(e_j)) + e_j)
    w = Subspace.span(g.dim + h.dim, generators)
    return w, is_subalgebra(product_algebra, w)


def product(c1: AffineSubspace, c2: AffineSubspace) -> AffineSubspace:
    """C1 x C2 inside the dual of the (sign +1) direct sum algebra."""
    algebra = direct_sum(c1.algebra, c2.algebra, sign=1)
    n1, n2 = c1.algebra.dim, c2.algebra.dim
    generators = [v + zero_vector(n2) for v in c1.h.basis] + [
        zero_vector(n1) + v for v in c2.h.basis
    ]
    h = Subspace.span(n1 + n2, generators)
    return AffineSubspace(algebra, h, c1.base + c2.base)
