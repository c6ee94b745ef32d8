"""T*-extensions: the quadratic Lie superalgebra on g + g* built from a
supercyclic 2-cocycle, recognition of quadratic superalgebras carrying a
Lagrangian graded ideal, and the shear isometries indexed by scalar
2-cochains.

The bracket on the extension is

    [x + F, y + H] = [x, y] + w(x, y) + pi(x)(H) - (-1)^{|x||y|} pi(y)(F)

and the pairing form is B(x + F, y + H) = F(y) + (-1)^{|x||y|} H(x).
The dual copy of a basis vector keeps its parity, and a functional of
parity a kills the opposite-parity part; this is what makes B even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import (Cochain2Dual, ScalarCochain2, cocycle2_violation,
                         delta_scalar2, hat, is_cocycle2, is_supercyclic,
                         sub3, supercyclic_violation, unhat, zero_cochain2)
from .errors import (CocycleError, DimensionMismatch, InternalCheckError,
                     NotIdealError, NotSupercyclicError, PreconditionError)
from .forms import (EvenForm, QuadraticLieSuperalgebra, invariance_violation,
                    is_totally_isotropic, isotropic_complement, quadratic)
from .linalg import (Mat, Vec, ZERO, mat, mat_vec, rank, transpose,
                     unit_vec, vec_is_zero, vec_sub)
from .superalgebra import (GradedBasis, LieSuperalgebra, Subspace, bracket,
                           check_axioms, graded_basis, is_ideal,
                           jacobi_defect, quotient, sgn, subspace,
                           vector_parity)


@dataclass(frozen=True)
class TStarExtension:
    """The extension algebra with its canonical pairing and injections."""

    base: LieSuperalgebra
    omega: Cochain2Dual
    total: QuadraticLieSuperalgebra
    base_embedding: Mat   # (2n x n), x -> x + 0
    dual_embedding: Mat   # (2n x n), F -> 0 + F

    @property
    def dim(self) -> int:
        return self.total.dim

    def dual_ideal(self) -> Subspace:
        n = self.base.dim
        return subspace(self.total.basis,
                        [unit_vec(2 * n, n + k) for k in range(n)])


def _dual_names(basis: GradedBasis) -> tuple[str, ...]:
    duals = tuple(name + "*" for name in basis.names)
    clash = set(duals) & set(basis.names)
    if clash:
        raise PreconditionError(
            f"dual labels collide with base labels: {sorted(clash)}")
    return duals


def _extension_tensor(g: LieSuperalgebra, w: Cochain2Dual):
    """Structure constants of g + g* for an arbitrary even
    super-antisymmetric w (no cocycle condition assumed)."""
    n = g.dim
    p = g.basis.parities
    N = 2 * n
    c = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            # [e_i, e_j] = [e_i, e_j]_g + w(e_i, e_j)
            for k, q in enumerate(g.c[i][j]):
                if q != 0:
                    c[i][j][k] = q
            for k in range(n):
                q = w.w[i][j][k]
                if q != 0:
                    c[i][j][n + k] = q
            # [e_i, e_j*] = pi(e_i)(e_j*): coordinate on e_k* is
            # -(-1)^{p_i p_j} c[i][k][j]
            s = -sgn(p[i] * p[j])
            for k in range(n):
                q = g.c[i][k][j]
                if q != 0:
                    c[i][n + j][n + k] = s * q
            # [e_i*, e_j] = -(-1)^{p_i p_j} pi(e_j)(e_i*), which unwinds to
            for k in range(n):
                q = g.c[j][k][i]
                if q != 0:
                    c[n + i][j][n + k] = q
    return tuple(tuple(tuple(v) for v in row) for row in c)


def _pairing_gram(basis: GradedBasis) -> Mat:
    n = basis.dim
    N = 2 * n
    G = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        s = Fraction(sgn(basis.parity(i)))
        G[i][n + i] = s          # B(e_i, e_i*) = (-1)^{p_i}
        G[n + i][i] = Fraction(1)  # B(e_i*, e_i) = 1
    return tuple(tuple(r) for r in G)


def _extended_basis(g: LieSuperalgebra) -> GradedBasis:
    return graded_basis(g.basis.names + _dual_names(g.basis),
                        g.basis.parities + g.basis.parities)


def _raw_extension(g: LieSuperalgebra, w: Cochain2Dual) -> tuple[LieSuperalgebra, EvenForm]:
    """The would-be extension, built without the cocycle/supercyclicity
    preconditions; grading and skew-symmetry always hold."""
    basis = _extended_basis(g)
    alg = LieSuperalgebra(basis, _extension_tensor(g, w))
    form = EvenForm(basis, _pairing_gram(g.basis))
    return alg, form


def find_jacobi_violation(g: LieSuperalgebra):
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not vec_is_zero(jacobi_defect(g, i, j, k)):
                    return (i, j, k)
    return None


def build(g: LieSuperalgebra, omega: Cochain2Dual | None = None) -> TStarExtension:
    """T*-extension of g by a supercyclic 2-cocycle omega (default 0).

    Rejects omega that is not a cocycle (the extension would fail the
    Jacobi identity) or not supercyclic (the pairing would fail
    invariance); both rejections carry witnessing basis triples.
    """
    if omega is None:
        omega = zero_cochain2(g)
    if omega.basis != g.basis:
        raise DimensionMismatch("cochain basis differs from the algebra")
    bad = cocycle2_violation(g, omega)
    if bad is not None:
        alg, _ = _raw_extension(g, omega)
        raise CocycleError(
            f"omega is not a 2-cocycle (identity fails at {bad})",
            triple=bad, jacobi_witness=find_jacobi_violation(alg))
    bad = supercyclic_violation(omega)
    if bad is not None:
        alg, form = _raw_extension(g, omega)
        raise NotSupercyclicError(
            f"omega is not supercyclic (identity fails at {bad})",
            triple=bad, invariance_witness=invariance_violation(alg, form))
    alg, form = _raw_extension(g, omega)
    report = check_axioms(alg)
    if not report.passed:
        raise InternalCheckError(
            "extension failed the axiom check for a valid cocycle",
            witness=report)
    total = quadratic(alg, form, check_algebra=False)
    n = g.dim
    base_embedding = tuple(unit_vec(2 * n, i) for i in range(n))
    base_embedding = transpose(mat(base_embedding))
    dual_embedding = transpose(mat([unit_vec(2 * n, n + i) for i in range(n)]))
    return TStarExtension(g, omega, total, base_embedding, dual_embedding)


@dataclass(frozen=True)
class InvarianceFailure:
    """A basis triple of the extension where B([x,y],z) != B(x,[y,z])."""

    triple: tuple[int, int, int]
    lhs: Fraction
    rhs: Fraction


def negative_test_invariance(g: LieSuperalgebra,
                             omega: Cochain2Dual) -> InvarianceFailure:
    """For omega in Z^2 but not supercyclic: build the bracket anyway and
    exhibit a triple where the pairing fails invariance."""
    if not is_cocycle2(g, omega):
        raise PreconditionError("omega must be a 2-cocycle")
    if is_supercyclic(omega):
        raise PreconditionError("omega is supercyclic; nothing to refute")
    alg, form = _raw_extension(g, omega)
    w = invariance_violation(alg, form)
    if w is None:
        raise InternalCheckError(
            "no invariance violation found for a non-supercyclic cocycle")
    i, j, k = w
    n = alg.dim
    lhs = form.apply(bracket(alg, unit_vec(n, i), unit_vec(n, j)),
                     unit_vec(n, k))
    rhs = form.apply(unit_vec(n, i),
                     bracket(alg, unit_vec(n, j), unit_vec(n, k)))
    return InvarianceFailure(w, lhs, rhs)


def lemma_halfdim_ideal_iff_abelian(q: QuadraticLieSuperalgebra,
                                    iso: Subspace) -> bool:
    """For a graded totally isotropic subspace of half the (even total)
    dimension: being an ideal is equivalent to being abelian.  The two
    booleans are computed independently and must agree; disagreement is
    a library bug, not a property of the input."""
    n = q.dim
    if n % 2 != 0:
        raise PreconditionError("total dimension must be even")
    if 2 * iso.dim != n:
        raise PreconditionError("subspace must have half the dimension")
    if not is_totally_isotropic(q.form, iso):
        raise PreconditionError("subspace must be totally isotropic")
    ideal_flag = is_ideal(q.algebra, iso)
    abelian_flag = all(
        vec_is_zero(bracket(q.algebra, u, v))
        for u in iso.vectors for v in iso.vectors)
    if ideal_flag != abelian_flag:
        raise InternalCheckError(
            "ideal/abelian equivalence failed for a Lagrangian subspace",
            witness=(ideal_flag, abelian_flag))
    return ideal_flag


def quadratic_morphism_violation(src: QuadraticLieSuperalgebra,
                                 dst: QuadraticLieSuperalgebra,
                                 m: Mat):
    """First failure of m: src -> dst as a map of quadratic superalgebras
    (parity preservation, bracket, form), or None if it verifies.

    The matrix acts on coordinate columns: (m x) are the dst-coordinates.
    """
    n = src.dim
    cols = [tuple(m[r][a] for r in range(len(m))) for a in range(n)]
    for a in range(n):
        col = cols[a]
        if vec_is_zero(col):
            continue
        if vector_parity(dst.basis, col) != src.basis.parity(a):
            return ("parity", a)
    for a in range(n):
        for b in range(n):
            lhs = mat_vec(m, bracket(src.algebra, unit_vec(n, a),
                                     unit_vec(n, b)))
            rhs = bracket(dst.algebra, cols[a], cols[b])
            if lhs != rhs:
                return ("bracket", (a, b))
            if dst.form.apply(cols[a], cols[b]) != src.form.apply(
                    unit_vec(n, a), unit_vec(n, b)):
                return ("form", (a, b))
    return None


def verify_isometry(src: QuadraticLieSuperalgebra,
                    dst: QuadraticLieSuperalgebra, m: Mat,
                    what: str = "isometry") -> None:
    if len(m) != dst.dim or any(len(r) != src.dim for r in m):
        raise DimensionMismatch(f"{what} matrix has the wrong shape")
    if src.dim != dst.dim or rank(m) != src.dim:
        raise InternalCheckError(f"{what} is not bijective")
    w = quadratic_morphism_violation(src, dst, m)
    if w is not None:
        raise InternalCheckError(f"{what} verification failed", witness=w)


def recognize(q: QuadraticLieSuperalgebra, iso: Subspace,
              complement: Subspace | None = None,
              quotient_names: tuple[str, ...] | None = None
              ) -> tuple[TStarExtension, Mat]:
    """Present q as a T*-extension along a graded totally isotropic ideal
    of half the dimension.

    Returns the extension of the quotient q/iso together with the matrix
    of an even bijection that is simultaneously an algebra isomorphism
    and an isometry; the map is re-verified exactly on all basis pairs
    before being returned.
    """
    n = q.dim
    if n % 2 != 0:
        raise PreconditionError("total dimension must be even")
    if 2 * iso.dim != n:
        raise PreconditionError("ideal must have half the dimension")
    if not is_totally_isotropic(q.form, iso):
        raise PreconditionError("ideal must be totally isotropic")
    if not is_ideal(q.algebra, iso):
        raise NotIdealError("subspace is not an ideal")
    if complement is None:
        comp = isotropic_complement(q.form, iso)
    else:
        comp = complement
        if comp.dim != n // 2 or not is_totally_isotropic(q.form, comp):
            raise PreconditionError(
                "complement must be totally isotropic of half the dimension")
        if rank(mat(comp.vectors + iso.vectors)) != n:
            raise PreconditionError("complement overlaps the ideal")
    quot = quotient(q.algebra, iso, complement=comp, names=quotient_names)
    m = quot.algebra.dim
    cvecs = comp.vectors

    # transport of the ideal into the dual of the quotient: u -> B(u, s(.))
    def transported(u: Vec) -> Vec:
        return tuple(q.form.apply(u, cv) for cv in cvecs)

    # omega(x, y) = transported I-part of [s(x), s(y)]
    w_tensor = []
    for i in range(m):
        row = []
        for j in range(m):
            br = bracket(q.algebra, cvecs[i], cvecs[j])
            alpha = mat_vec(quot.projection, br)
            ipart = vec_sub(br, mat_vec(quot.section, alpha))
            row.append(transported(ipart))
        w_tensor.append(tuple(row))
    try:
        omega = Cochain2Dual(quot.algebra.basis, tuple(w_tensor))
        ext = build(quot.algebra, omega)
    except (CocycleError, NotSupercyclicError) as exc:
        raise InternalCheckError(
            "recovered cochain failed its theorem-backed checks: "
            f"{exc}") from exc

    # psi: ambient -> quotient coords ++ transported dual coords
    cols = []
    for a in range(n):
        e = unit_vec(n, a)
        alpha = mat_vec(quot.projection, e)
        ipart = vec_sub(e, mat_vec(quot.section, alpha))
        cols.append(tuple(alpha) + transported(ipart))
    psi = transpose(mat(cols))
    verify_isometry(q, ext.total, psi, what="recognition isometry")
    return ext, psi


@dataclass(frozen=True)
class ShearIsometry:
    """S_phi between two extensions of the same base, with its matrix."""

    source: TStarExtension
    target: TStarExtension
    phi: ScalarCochain2
    matrix: Mat


def shear_matrix(g: LieSuperalgebra, phi: ScalarCochain2) -> Mat:
    """Matrix of x + F -> x + phi(x, .) + F on the extension basis."""
    n = g.dim
    N = 2 * n
    m = [[ZERO] * N for _ in range(N)]
    for a in range(N):
        m[a][a] = Fraction(1)
    for i in range(n):
        for k in range(n):
            q = phi.p[i][k]
            if q != 0:
                m[n + k][i] = q
    return tuple(tuple(r) for r in m)


def s_phi_isometry(g: LieSuperalgebra, omega1: Cochain2Dual,
                   phi: ScalarCochain2) -> ShearIsometry:
    """Build T* extensions for omega1 and omega2 = omega1 - delta(phi)
    (computed through the transported tensors) and verify that the shear
    x + F -> x + phi(x, .) + F is an isometry between them."""
    ext1 = build(g, omega1)
    omega2 = unhat(sub3(hat(omega1), delta_scalar2(g, phi)))
    ext2 = build(g, omega2)
    m = shear_matrix(g, phi)
    verify_isometry(ext1.total, ext2.total, m, what="shear isometry")
    return ShearIsometry(ext1, ext2, phi, m)
