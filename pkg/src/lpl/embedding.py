"""Cosymplectic extension of a pre-Poisson affine subspace.

Given C with constant rank of TC + sharp N*C, extend along a complement R to
the affine subspace P through the base point with direction TC + R; P carries
the conormal space p, and when sharp N*P is the same space k-ann at every
point, the annihilator k of that space together with p gives the k + p
decomposition and, in favorable cases, a symmetric pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .lie import LieAlgebra, NotASubalgebra, is_subalgebra, subspace_bracket, validate_jacobi
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    choose_complement,
    dot,
    mat,
    pivot_columns,
    solve,
    vadd,
    vec,
    vscale,
    zero_vector,
)
from .submanifold import (
    CERTIFIED_CONSTANT,
    NOT_CONSTANT,
    AffineSubspace,
    PrePoissonVerdict,
    SampleSpec,
    pre_poisson_check,
    sharp_conormal_at,
)

CERTIFIED = "certified"
SAMPLED = "sampled"


class RankNotConstant(ValueError):
    """The rank of TC + sharp N*C is not constant; no extension exists."""


class NotComplementary(ValueError):
    """A supplied R fails to complement TC + sharp N*C at the base point."""


class ConstancyNotCertified(ValueError):
    """sharp N*P was not certified constant; k is not defined."""


@dataclass(frozen=True)
class Extension:
    c: AffineSubspace
    r: Subspace
    p_tilde: AffineSubspace
    p: Subspace  # conormal of the extension: annihilator of its direction
    evidence: str  # CERTIFIED when h is a subalgebra, SAMPLED otherwise

    @property
    def algebra(self) -> LieAlgebra:
        return self.c.algebra


def choose_r(
    c: AffineSubspace,
    sampling: SampleSpec = SampleSpec(),
    verdict: Optional[PrePoissonVerdict] = None,
) -> Subspace:
    """Greedy coordinate-order complement of T_base C + sharp N*_base C."""
    if verdict is None:
        verdict = pre_poisson_check(c, sampling)
    if verdict.kind == NOT_CONSTANT:
        raise RankNotConstant(
            f"rank differs between sampled points: {verdict.counterexample}"
        )
    span = c.direction.sum(sharp_conormal_at(c, c.base))
    return choose_complement(span, Subspace.full(c.algebra.dim))


def extend(
    c: AffineSubspace,
    r: Optional[Subspace] = None,
    sampling: SampleSpec = SampleSpec(),
    verify: bool = True,
) -> Extension:
    """Extend C along R (greedy if omitted) to the candidate cosymplectic P.

    Refuses when the pre-Poisson verdict is NOT_CONSTANT.  With ``verify`` the
    coisotropy of C inside P is re-checked at cosymplectic sample points.
    """
    verdict = pre_poisson_check(c, sampling)
    if verdict.kind == NOT_CONSTANT:
        raise RankNotConstant(
            f"rank differs between sampled points: {verdict.counterexample}"
        )
    span = c.direction.sum(sharp_conormal_at(c, c.base))
    if r is None:
        r = choose_complement(span, Subspace.full(c.algebra.dim))
    else:
        if span.intersect(r).dim != 0 or span.sum(r).dim != c.algebra.dim:
            raise NotComplementary(
                "R must complement TC + sharp N*C at the base point"
            )
    direction = c.direction.sum(r)
    p = direction.annihilator()
    p_tilde = AffineSubspace(c.algebra, p, c.base)
    evidence = CERTIFIED if verdict.kind == CERTIFIED_CONSTANT else SAMPLED
    ext = Extension(c, r, p_tilde, p, evidence)
    if verify:
        check = coisotropy_in_extension(ext, SampleSpec(count=8, seed=sampling.seed))
        bad = [x for x, ok in check if not ok]
        if bad:
            raise AssertionError(f"C fails to be coisotropic in P at {bad[0]}")
    return ext


def _restricted_form(algebra: LieAlgebra, p: Subspace, x: Vector) -> Matrix:
    """The skew form <x, [., .]> on the canonical basis of p."""
    return mat(
        [
            [dot(x, algebra.bracket(a, b)) for b in p.basis]
            for a in p.basis
        ]
    )


def is_cosymplectic_at(e: Extension, x: Iterable) -> bool:
    """True iff the skew form on p is nondegenerate at x (x must lie on P)."""
    xv = e.p_tilde.require_point(x)
    if not e.p.basis:
        return e.p_tilde.dim == e.algebra.dim
    form = _restricted_form(e.algebra, e.p, xv)
    from .linalg import rref

    return len(rref(form)) == e.p.dim


@dataclass(frozen=True)
class LocusReport:
    never_cosymplectic: bool  # exact: dim p odd forces degeneracy everywhere
    cosymplectic_at_base: bool
    checked: tuple[tuple[Vector, bool], ...]
    samples: int
    seed: int

    @property
    def failing_points(self) -> tuple[Vector, ...]:
        return tuple(x for x, ok in self.checked if not ok)

    @property
    def any_cosymplectic(self) -> bool:
        return self.cosymplectic_at_base or any(ok for _, ok in self.checked)


def cosymplectic_locus(e: Extension, sampling: SampleSpec = SampleSpec()) -> LocusReport:
    """Pointwise cosymplecticity of P at the base and at sampled points."""
    if e.p.dim % 2 == 1:
        return LocusReport(True, False, (), sampling.count, sampling.seed)
    at_base = is_cosymplectic_at(e, e.p_tilde.base)
    checked = tuple(
        (x, is_cosymplectic_at(e, x)) for x in e.p_tilde.sample_points(sampling)
    )
    return LocusReport(False, at_base, checked, sampling.count, sampling.seed)


@dataclass(frozen=True)
class ConstancyResult:
    kind: str  # CERTIFIED | NOT_CONSTANT
    k_ann: Optional[Subspace] = None
    # (p basis vector, direction generator, escaping image) on failure.
    witness: Optional[tuple[Vector, Vector, Vector]] = None

    @property
    def certified(self) -> bool:
        return self.kind == CERTIFIED


def constant_sharp_conormal(e: Extension) -> ConstancyResult:
    """Exact constancy certificate for sharp N*_x P along P.

    coad_v(x) is linear in x, so sharp N*_x P stays inside its value K at the
    base point for every x on P iff coad_v(u) lies in K for each basis vector
    v of p and each direction generator u; failure of one containment is a
    direction along which the space genuinely moves.
    """
    base_images = [e.algebra.coad_apply(v, e.p_tilde.base) for v in e.p.basis]
    k_ann = Subspace.span(e.algebra.dim, base_images)
    for v in e.p.basis:
        for u in e.p_tilde.direction.basis:
            image = e.algebra.coad_apply(v, u)
            if not k_ann.contains_vector(image):
                return ConstancyResult(NOT_CONSTANT, witness=(v, u, image))
    return ConstancyResult(CERTIFIED, k_ann=k_ann)


@dataclass(frozen=True)
class SymmetricPairReport:
    k: Subspace
    p: Subspace
    decomposition: bool  # k + p = g directly
    k_subalgebra: bool
    kp_in_p: bool
    pp_in_k: bool

    @property
    def symmetric_pair(self) -> bool:
        return self.decomposition and self.k_subalgebra and self.kp_in_p and self.pp_in_k


def check_symmetric_pair(algebra: LieAlgebra, k: Subspace, p: Subspace) -> SymmetricPairReport:
    """The three bracket conditions for a user- or extension-given (k, p)."""
    decomposition = k.intersect(p).dim == 0 and k.sum(p).dim == algebra.dim
    k_sub = is_subalgebra(algebra, k)
    kp_in_p = p.contains(subspace_bracket(algebra, k, p))
    pp_in_k = k.contains(subspace_bracket(algebra, p, p))
    return SymmetricPairReport(k, p, decomposition, k_sub, kp_in_p, pp_in_k)


def symmetric_pair_analysis(
    e: Extension, constancy: Optional[ConstancyResult] = None
) -> SymmetricPairReport:
    """k from the certified constant sharp N*P, then the pair conditions."""
    if constancy is None:
        constancy = constant_sharp_conormal(e)
    if not constancy.certified:
        raise ConstancyNotCertified(
            "sharp N*P is not constant along P; k is undefined"
        )
    k = constancy.k_ann.annihilator()
    return check_symmetric_pair(e.algebra, k, e.p)


def injectivity_at(algebra: LieAlgebra, p: Subspace, y: Iterable) -> bool:
    """True iff v in p -> coad_v(y) has trivial kernel."""
    yv = vec(y)
    rows = [algebra.coad_apply(v, yv) for v in p.basis]
    from .linalg import rref

    return len(rref(rows, algebra.dim)) == p.dim


def induced_structure_from_decomposition(
    algebra: LieAlgebra, k: Subspace, p: Subspace
) -> LieAlgebra:
    """The linear Poisson structure induced on p-ann, as a Lie algebra.

    Coordinates on the extension correspond to the elements of k dual to the
    canonical basis of p-ann; their brackets, projected to k along p, give the
    structure constants.  Requires k + p = g directly and k a subalgebra.
    """
    if k.intersect(p).dim != 0 or k.sum(p).dim != algebra.dim:
        raise ValueError("k and p must decompose the algebra")
    if not is_subalgebra(algebra, k):
        raise NotASubalgebra("induced structure is linear only for k a subalgebra")
    direction = p.annihilator()
    m = direction.dim
    # Dual elements: khat_i in k with <u_j, khat_i> = delta_ij.
    gram = mat([[dot(u, kb) for kb in k.basis] for u in direction.basis])
    khat = []
    for i in range(m):
        rhs = tuple(Fraction(1) if j == i else Fraction(0) for j in range(m))
        coeffs = solve(gram, rhs)
        assert coeffs is not None  # pairing k x p-ann is nondegenerate
        v = zero_vector(algebra.dim)
        for cfc, kb in zip(coeffs, k.basis):
            v = vadd(v, vscale(cfc, kb))
        khat.append(v)
    # Projection to k along p in the combined basis.
    combined = mat(list(k.basis) + list(p.basis))
    from .linalg import transpose

    def project_k(w: Vector) -> Vector:
        coords = solve(transpose(combined), w)
        assert coords is not None
        out = zero_vector(algebra.dim)
        for cfc, kb in zip(coords[: k.dim], k.basis):
            out = vadd(out, vscale(cfc, kb))
        return out

    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            proj = project_k(algebra.bracket(khat[i], khat[j]))
            coords = tuple(dot(u, proj) for u in direction.basis)
            if any(x != 0 for x in coords):
                brackets[(i, j)] = coords
    labels = tuple(algebra.labels[col] for col in pivot_columns(direction.basis))
    result = LieAlgebra.from_brackets(m, brackets, labels)
    report = validate_jacobi(result)
    assert report.ok, f"induced structure violates Jacobi at {report.triple}"
    return result


def induced_structure(
    e: Extension, constancy: Optional[ConstancyResult] = None
) -> LieAlgebra:
    """Induced linear structure on the extension; needs certified k."""
    if constancy is None:
        constancy = constant_sharp_conormal(e)
    if not constancy.certified:
        raise ConstancyNotCertified(
            "sharp N*P is not constant along P; induced structure undefined"
        )
    k = constancy.k_ann.annihilator()
    return induced_structure_from_decomposition(e.algebra, k, e.p)


def coisotropy_in_extension(
    e: Extension, sampling: SampleSpec = SampleSpec()
) -> list[tuple[Vector, bool]]:
    """Verify C coisotropic in P at cosymplectic sample points of C.

    At such a point the sharp map of P applied to a conormal direction w of C
    is coad of the unique extension w + q (q in p) whose differential kills
    sharp N*_x P; membership of the result in TC is the coisotropy claim.
    """
    results = []
    points = [e.c.base] + e.c.sample_points(sampling)
    tangent_c = e.c.direction
    for x in points:
        if not is_cosymplectic_at(e, x):
            continue
        form = _restricted_form(e.algebra, e.p, x)
        ok = True
        for w in e.c.h.basis:
            rhs = tuple(
                -dot(e.algebra.coad_apply(v, x), w) for v in e.p.basis
            )
            coeffs = solve(form, rhs) if e.p.basis else ()
            assert coeffs is not None  # form is nondegenerate here
            corrected = w
            for cfc, pb in zip(coeffs, e.p.basis):
                corrected = vadd(corrected, vscale(cfc, pb))
            sharp = e.algebra.coad_apply(corrected, x)
            if not tangent_c.contains_vector(sharp):
                ok = False
                break
        results.append((x, ok))
    return results
