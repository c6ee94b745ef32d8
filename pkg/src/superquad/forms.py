"""Even supersymmetric bilinear forms, invariance, isotropy and the
Witt-style isotropic complement.

An even form pairs equal parities only; supersymmetry means
B(x, y) = (-1)^{|x||y|} B(y, x), so the odd-odd block is antisymmetric
and every odd homogeneous vector is automatically isotropic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (DimensionMismatch, FormError, PreconditionError)
from .linalg import (HALF, Mat, Vec, ZERO, dot, kernel, mat, mat_vec,
                     rank, solve_unique, transpose, vec, vec_is_zero,
                     vec_sub)
from .superalgebra import (GradedBasis, LieSuperalgebra, Subspace, center,
                           derived_subspace, graded_complement,
                           require_axioms, sgn, subspace)


@dataclass(frozen=True)
class EvenForm:
    """Gram matrix of an even supersymmetric bilinear form."""

    basis: GradedBasis
    gram: Mat

    def __post_init__(self):
        n = self.basis.dim
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise DimensionMismatch("Gram matrix must be dim x dim")
        p = self.basis.parities
        for i in range(n):
            for j in range(n):
                if p[i] != p[j] and self.gram[i][j] != 0:
                    raise FormError("form is not even", witness=(i, j))
                if self.gram[i][j] != sgn(p[i] * p[j]) * self.gram[j][i]:
                    raise FormError("form is not supersymmetric",
                                    witness=(i, j))

    @property
    def dim(self) -> int:
        return self.basis.dim

    def apply(self, x: Vec, y: Vec) -> Fraction:
        return dot(mat_vec(self.gram, y), x)


def even_form(basis: GradedBasis, gram) -> EvenForm:
    return EvenForm(basis, mat(gram))


def is_nondegenerate(B: EvenForm) -> bool:
    return rank(B.gram) == B.dim


def invariance_violation(g: LieSuperalgebra, B: EvenForm):
    """First basis triple with B([e_i,e_j],e_k) != B(e_i,[e_j,e_k]), or None."""
    n = g.dim
    G = B.gram
    table = g._table
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = sum((q * G[m][k] for m, q in table[i][j]), ZERO)
                rhs = sum((q * G[i][m] for m, q in table[j][k]), ZERO)
                if lhs != rhs:
                    return (i, j, k)
    return None


def is_invariant(g: LieSuperalgebra, B: EvenForm) -> bool:
    return invariance_violation(g, B) is None


def orthogonal(B: EvenForm, w: Subspace) -> Subspace:
    """w^perp = {v : B(v, u) = 0 for all u in w}."""
    rows = [mat_vec(B.gram, u) for u in w.vectors]
    rows = [r for r in rows if not vec_is_zero(r)]
    if not rows:
        from .superalgebra import full_subspace
        return full_subspace(B.basis)
    return subspace(B.basis, kernel(mat(rows)))


def is_totally_isotropic(B: EvenForm, w: Subspace) -> bool:
    return all(B.apply(u, v) == 0 for u in w.vectors for v in w.vectors)


def isotropic_complement(B: EvenForm, iso: Subspace) -> Subspace:
    """Graded totally isotropic complement of a Lagrangian subspace.

    Requires B nondegenerate and iso graded totally isotropic with
    iso = iso^perp (so the ambient dimension is even).  Starting from a
    greedy graded complement W, the correction h: W -> iso with
    B(h(w), w') = 1/2 B(w, w') makes C = {w - h(w)} totally isotropic;
    the 1/2 needs characteristic != 2, automatic over the rationals.
    """
    n = B.dim
    if not is_nondegenerate(B):
        raise PreconditionError("form must be nondegenerate")
    if 2 * iso.dim != n:
        raise PreconditionError(
            f"subspace has dimension {iso.dim}, expected {n // 2}")
    if not is_totally_isotropic(B, iso):
        raise PreconditionError("subspace is not totally isotropic")
    comp = graded_complement(B.basis, iso)
    corrected = []
    for p in (0, 1):
        w_rows = [v for v, pv in zip(comp.vectors, comp.parities) if pv == p]
        i_rows = [v for v, pv in zip(iso.vectors, iso.parities) if pv == p]
        if len(w_rows) != len(i_rows):
            raise PreconditionError(
                "isotropic subspace is not half-dimensional in each parity")
        if not w_rows:
            continue
        # pairing matrix M[u][b] = B(iso_u, w_b) is invertible here
        M = mat([[B.apply(u, w) for w in w_rows] for u in i_rows])
        for w_a in w_rows:
            rhs = vec([HALF * B.apply(w_a, w_b) for w_b in w_rows])
            x = solve_unique(transpose(M), rhs)
            h = [ZERO] * n
            for coeff, u in zip(x, i_rows):
                for t, q in enumerate(u):
                    h[t] += coeff * q
            corrected.append(vec_sub(w_a, tuple(h)))
    out = subspace(B.basis, corrected)
    if not (out.dim == iso.dim and is_totally_isotropic(B, out)):
        raise PreconditionError("isotropic complement construction failed")
    return out


@dataclass(frozen=True)
class QuadraticLieSuperalgebra:
    """Lie superalgebra with an invariant scalar product."""

    algebra: LieSuperalgebra
    form: EvenForm

    def __post_init__(self):
        if self.form.basis != self.algebra.basis:
            raise DimensionMismatch("form and algebra bases differ")
        if not is_nondegenerate(self.form):
            raise FormError("scalar product must be nondegenerate")
        w = invariance_violation(self.algebra, self.form)
        if w is not None:
            raise FormError("scalar product is not invariant", witness=w)
        if self.algebra.basis.odd_dim % 2 != 0:
            # a nondegenerate antisymmetric odd-odd block forces this
            raise FormError("odd part of a quadratic superalgebra must have "
                            "even dimension")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis(self) -> GradedBasis:
        return self.algebra.basis


def quadratic(algebra: LieSuperalgebra, form: EvenForm,
              check_algebra: bool = True) -> QuadraticLieSuperalgebra:
    if check_algebra:
        require_axioms(algebra)
    return QuadraticLieSuperalgebra(algebra, form)


def center_orthogonality_check(q: QuadraticLieSuperalgebra) -> bool:
    """orthogonal(B, [g, g]) = z(g), exactly."""
    return orthogonal(q.form, derived_subspace(q.algebra)).equals(
        center(q.algebra))
