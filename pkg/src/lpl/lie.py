"""Lie algebras from structure constants, over exact rationals.

The bracket table stores [e_i, e_j] for all pairs; antisymmetry is enforced
at construction (input gives only i < j).  The coadjoint matrix is the plain
transpose of the adjoint one, so that <coad_v(x), w> = <x, [v, w]> holds as an
exact identity in dual-basis coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    Vector,
    dot,
    is_zero_vector,
    mat_vec,
    rref,
    transpose,
    unit_vector,
    vadd,
    vec,
    vscale,
    zero_vector,
)


class NotASubalgebra(ValueError):
    """A subspace that was required to be a Lie subalgebra is not one."""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    triple: Optional[tuple[int, int, int]] = None
    residual: Optional[Vector] = None


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    labels: tuple[str, ...]
    table: tuple[tuple[Vector, ...], ...]  # table[i][j] = coords of [e_i, e_j]

    @staticmethod
    def from_brackets(
        dim: int,
        brackets: Mapping[tuple[int, int], Iterable],
        labels: Optional[Sequence[str]] = None,
        validate: bool = False,
    ) -> "LieAlgebra":
        """Build from sparse constants {(i, j): [e_i, e_j]} given for i < j."""
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(dim))
        else:
            labels = tuple(labels)
            if len(labels) != dim:
                raise DimensionMismatch("label count does not match dimension")
        table = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket index pair ({i}, {j}) requires 0 <= i < j < dim")
            v = vec(value)
            if len(v) != dim:
                raise DimensionMismatch(f"bracket [e{i},e{j}] has wrong length")
            table[i][j] = v
            table[j][i] = vscale(-1, v)
        algebra = LieAlgebra(dim, labels, tuple(tuple(row) for row in table))
        if validate:
            report = validate_jacobi(algebra)
            if not report.ok:
                raise ValueError(
                    f"Jacobi identity fails on basis triple {report.triple}"
                )
        return algebra

    @staticmethod
    def abelian(dim: int, labels: Optional[Sequence[str]] = None) -> "LieAlgebra":
        return LieAlgebra.from_brackets(dim, {}, labels)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self.table[i][j]

    def bracket(self, v: Iterable, w: Iterable) -> Vector:
        x, y = vec(v), vec(w)
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("bracket arguments must have the algebra dimension")
        out = zero_vector(self.dim)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0 or i == j:
                    continue
                out = vadd(out, vscale(xi * yj, self.table[i][j]))
        return out

    def ad(self, v: Iterable) -> Matrix:
        """Matrix of ad_v : w -> [v, w] (rows index output coordinates)."""
        cols = [self.bracket(v, unit_vector(self.dim, j)) for j in range(self.dim)]
        return transpose(tuple(cols))

    def coad(self, v: Iterable) -> Matrix:
        """Matrix of coad_v on dual coordinates; transpose of ad_v."""
        return transpose(self.ad(v))

    def coad_apply(self, v: Iterable, x: Iterable) -> Vector:
        """coad_v(x), i.e. the covector w -> <x, [v, w]>."""
        xv = vec(x)
        if len(xv) != self.dim:
            raise DimensionMismatch("point must have the algebra dimension")
        return tuple(
            dot(xv, self.bracket(v, unit_vector(self.dim, j))) for j in range(self.dim)
        )


def adjoint_maps(algebra: LieAlgebra, v: Iterable) -> tuple[Matrix, Matrix]:
    """The pair (ad_v, coad_v) as exact matrices."""
    ad = algebra.ad(v)
    return ad, transpose(ad)


def validate_jacobi(algebra: LieAlgebra) -> ValidationReport:
    """Check [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0."""
    n = algebra.dim
    e = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                residual = vadd(
                    vadd(
                        algebra.bracket(algebra.table[i][j], e[k]),
                        algebra.bracket(algebra.table[j][k], e[i]),
                    ),
                    algebra.bracket(algebra.table[k][i], e[j]),
                )
                if not is_zero_vector(residual):
                    return ValidationReport(False, (i, j, k), residual)
    return ValidationReport(True)


def subspace_bracket(algebra: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Span of [u_i, v_j] over the canonical bases of u and v."""
    if u.ambient_dim != algebra.dim or v.ambient_dim != algebra.dim:
        raise DimensionMismatch("subspaces must live in the algebra")
    products = [algebra.bracket(a, b) for a in u.basis for b in v.basis]
    return Subspace.span(algebra.dim, products)


def is_subalgebra(algebra: LieAlgebra, u: Subspace) -> bool:
    return u.contains(subspace_bracket(algebra, u, u))


def direct_sum(a: LieAlgebra, b: LieAlgebra, sign: int = 1) -> LieAlgebra:
    """Block direct sum; the second block's bracket is multiplied by ``sign``.

    sign=-1 realizes the bar factor of a product Poisson structure Pi_1 - Pi_2.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n, m = a.dim, b.dim
    brackets: dict[tuple[int, int], Vector] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = a.table[i][j]
            if not is_zero_vector(w):
                brackets[(i, j)] = w + zero_vector(m)
    for i in range(m):
        for j in range(i + 1, m):
            w = b.table[i][j]
            if not is_zero_vector(w):
                brackets[(n + i, n + j)] = zero_vector(n) + vscale(sign, w)
    labels = tuple(f"{s}.1" for s in a.labels) + tuple(f"{s}.2" for s in b.labels)
    return LieAlgebra.from_brackets(n + m, brackets, labels)


@dataclass(frozen=True)
class LinearMap:
    """Linear map between Lie algebras; matrix is codomain.dim x domain.dim."""

    domain: LieAlgebra
    codomain: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.codomain.dim or any(
            len(row) != self.domain.dim for row in self.matrix
        ):
            raise DimensionMismatch("linear map matrix has the wrong shape")

    def apply(self, v: Iterable) -> Vector:
        return mat_vec(self.matrix, vec(v))

    @staticmethod
    def identity(algebra: LieAlgebra) -> "LinearMap":
        n = algebra.dim
        return LinearMap(algebra, algebra, tuple(unit_vector(n, i) for i in range(n)))

    def image(self) -> Subspace:
        return Subspace(self.codomain.dim, rref(transpose(self.matrix), self.codomain.dim))


def morphism_check(phi: LinearMap) -> bool:
    """True iff phi([u, v]) = [phi(u), phi(v)] on all basis pairs."""
    n = phi.domain.dim
    e = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = phi.apply(phi.domain.table[i][j])
            rhs = phi.codomain.bracket(phi.apply(e[i]), phi.apply(e[j]))
            if lhs != rhs:
                return False
    return True
