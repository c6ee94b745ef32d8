"""Structure theory: maximal totally isotropic graded ideals of
nilpotent (or class-conditioned solvable) quadratic Lie superalgebras,
and their presentation as T*-extensions (even total dimension) or as
codimension-1 nondegenerate ideals of one (odd total dimension).

Everything is computed over exact rationals.  The underlying theorems
hold over an algebraically closed field; two steps can genuinely need
points that do not exist over Q (an isotropic vector of an anisotropic
rational quadric, or an eigenvalue of an irrational characteristic
polynomial).  Those failures raise :class:`RationalPointNotFound` with
an explicit certificate instead of returning a short flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (InternalCheckError, PreconditionError,
                     RationalPointNotFound)
from .forms import (EvenForm, QuadraticLieSuperalgebra, is_totally_isotropic,
                    orthogonal, quadratic)
from .linalg import (Mat, RowReducer, Vec, ZERO, charpoly, coords_in,
                     diagonalize_symmetric, frac, kernel, mat, mat_vec, rank,
                     rational_roots, sqrt_fraction, transpose, unit_vec,
                     vec_add, vec_is_zero, vec_scale, zero_vec)
from .superalgebra import (EVEN, ODD, LieSuperalgebra, Subspace, bracket,
                           class_condition, extend_subspace, graded_basis,
                           graded_complement, is_ideal, is_nilpotent,
                           is_solvable, subspace, zero_subspace)
from .tstar import TStarExtension, recognize

_QUADRIC_VARS = ("x", "y", "z", "w")


def _quadric_string(diag: tuple[Fraction, ...]) -> str:
    parts = []
    for r, d in enumerate(diag):
        if d == 0:
            continue
        name = _QUADRIC_VARS[r] if r < len(_QUADRIC_VARS) else f"x{r}"
        mag = abs(d)
        term = f"{name}^2" if mag == 1 else f"{mag}*{name}^2"
        if not parts:
            parts.append(term if d > 0 else f"-{term}")
        else:
            parts.append(("+ " if d > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def _poly_string(coeffs: tuple[Fraction, ...]) -> str:
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        power = n - i
        base = "1" if power == 0 else ("t" if power == 1 else f"t^{power}")
        mag = abs(c)
        term = base if (mag == 1 and power > 0) else (
            f"{mag}" if power == 0 else f"{mag}*{base}")
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def isotropic_vector(gram: Mat, parities: tuple[int, ...]) -> Vec | None:
    """A nonzero isotropic vector for the given Gram matrix, found by a
    deterministic bounded search, or None.

    Search order: any odd coordinate vector (always isotropic), then raw
    even basis vectors with zero diagonal, then zero entries of the
    congruence-diagonalized even block, then two-variable slices solved
    by a rational square-root test, then a small integer grid.
    """
    k = len(gram)
    odd = [r for r in range(k) if parities[r] == ODD]
    if odd:
        return unit_vec(k, odd[0])
    for r in range(k):
        if gram[r][r] == 0:
            return unit_vec(k, r)
    P, diag = diagonalize_symmetric(gram)
    for r, d in enumerate(diag):
        if d == 0:
            return P[r]
    for r in range(k):
        for s in range(k):
            if r == s:
                continue
            ratio = -diag[s] / diag[r]
            root = sqrt_fraction(ratio)
            if root is not None:
                return vec_add(vec_scale(root, P[r]), P[s])
    # small deterministic grid over the first few diagonalized directions
    span = min(k, 4)
    for combo in itertools.product(range(-3, 4), repeat=span):
        if all(c == 0 for c in combo):
            continue
        if sum(frac(c) * frac(c) * diag[r] for r, c in enumerate(combo)) == 0:
            out = zero_vec(k)
            for r, c in enumerate(combo):
                if c != 0:
                    out = vec_add(out, vec_scale(c, P[r]))
            return out
    return None


@dataclass(frozen=True)
class IsotropicFlagResult:
    """Flag of graded totally isotropic ideals grown one dimension at a
    time up to floor(dim/2)."""

    w_max: Subspace
    chain: tuple[Subspace, ...]
    achieved_dim: int


@dataclass(frozen=True)
class Decomposition:
    """Presentation of a quadratic superalgebra through a T*-extension.

    In the even-dimensional case ``embedding`` is onto; in the odd case
    its image is a graded nondegenerate ideal of codimension 1.
    """

    ideal: Subspace
    quotient: LieSuperalgebra
    extension: TStarExtension
    embedding: Mat
    parity_case: str  # "even" or "odd"


class _InducedSpace:
    """The subquotient W^perp / W with its induced action and form."""

    def __init__(self, q: QuadraticLieSuperalgebra, w: Subspace):
        self.q = q
        wperp = orthogonal(q.form, w)
        if not wperp.contains(w):
            raise InternalCheckError("flag subspace is not isotropic")
        comp = graded_complement(q.basis, w, within=wperp)
        self.rep_vectors = comp.vectors          # lifts of the V' basis
        self.parities = comp.parities
        self.dim = len(self.rep_vectors)
        self._wmat = w.vectors
        # coordinates in V': solve against the spanning rows [reps | W basis]
        self._span_rows = tuple(self.rep_vectors) + tuple(self._wmat)
        self.gram = mat([[q.form.apply(u, v) for v in self.rep_vectors]
                         for u in self.rep_vectors])

    def project(self, v: Vec) -> Vec:
        """V'-coordinates of a vector of W^perp."""
        if self.dim == 0:
            return ()
        x = coords_in(self._span_rows, v)
        if x is None:
            raise InternalCheckError("vector is not in W^perp")
        return tuple(x[:self.dim])

    def lift(self, u: Vec) -> Vec:
        out = zero_vec(self.q.dim)
        for c, rep in zip(u, self.rep_vectors):
            if c != 0:
                out = vec_add(out, vec_scale(c, rep))
        return out

    def operator(self, x: Vec) -> Mat:
        """Matrix of the induced action of x on V' (columns = images)."""
        cols = [self.project(bracket(self.q.algebra, x, rep))
                for rep in self.rep_vectors]
        return transpose(mat(cols)) if cols else ()

    def induced_gram_on(self, rows: list[Vec]) -> Mat:
        G = self.gram
        def pair(a, b):
            return sum((ai * sum((G[i][j] * bj for j, bj in enumerate(b)
                                  if bj != 0), ZERO)
                        for i, ai in enumerate(a) if ai != 0), ZERO)
        return mat([[pair(a, b) for b in rows] for a in rows])


def _common_kernel(ops: list[Mat], dim: int) -> list[Vec]:
    rows = []
    for op in ops:
        rows.extend(op)
    rows = [r for r in rows if not vec_is_zero(r)]
    if not rows:
        return [unit_vec(dim, r) for r in range(dim)]
    return kernel(mat(rows))


def _split_by_parity(vectors: list[Vec], parities) -> list[Vec]:
    """Split span vectors of a graded subspace of V' into homogeneous ones."""
    out = []
    for v in vectors:
        for p in (EVEN, ODD):
            part = tuple(c if parities[r] == p else ZERO
                         for r, c in enumerate(v))
            if not vec_is_zero(part):
                out.append(part)
    red = RowReducer(len(parities))
    basis = []
    for v in out:
        if red.add(v):
            basis.append(v)
    if len(basis) != rank(mat(vectors)):
        raise InternalCheckError("graded operator kernel failed to split")
    return basis


def _restrict_operator(op: Mat, rows: list[Vec]) -> Mat:
    """Matrix of op on the subspace spanned by rows (must be invariant)."""
    cols = []
    for r in rows:
        img = mat_vec(op, r)
        x = coords_in(rows, img)
        if x is None:
            raise InternalCheckError("subspace is not operator-invariant")
        cols.append(x)
    return transpose(mat(cols)) if cols else ()


def _row_parity(parities, v: Vec) -> int:
    return EVEN if all(parities[r] == EVEN or c == 0
                       for r, c in enumerate(v)) else ODD


def _solvable_isotropic_eigvector(q: QuadraticLieSuperalgebra,
                                  ind: _InducedSpace):
    """Isotropic joint eigenvector (in V'-coords) of the induced action
    of a solvable algebra satisfying the class condition.

    Restricts to the subspace killed by the odd part and the derived
    algebra (where the remaining even operators commute), then descends
    through their rational eigenspaces, backtracking over eigenvalue
    choices; nonzero eigenvalues are tried first since a nonzero joint
    character makes every vector of the final eigenspace isotropic.
    Returns (vector or None, first irrational characteristic polynomial
    encountered or None).  Deterministic throughout.
    """
    g = q.algebra
    n = g.dim
    killers: list[Mat] = []
    for i in range(n):
        if g.parity(i) == ODD:
            killers.append(ind.operator(unit_vec(n, i)))
    from .superalgebra import derived_subspace
    for v in derived_subspace(g).vectors:
        killers.append(ind.operator(v))
    vpp = _common_kernel(killers, ind.dim)
    if not vpp:
        return None, None
    space0 = _split_by_parity(vpp, ind.parities)
    even_ops = [ind.operator(unit_vec(n, i)) for i in range(n)
                if g.parity(i) == EVEN]
    first_poly: list = [None]

    def leaf_pick(space: list[Vec]) -> Vec | None:
        par = tuple(_row_parity(ind.parities, v) for v in space)
        point = isotropic_vector(ind.induced_gram_on(space), par)
        if point is None:
            return None
        out = zero_vec(ind.dim)
        for c, row in zip(point, space):
            if c != 0:
                out = vec_add(out, vec_scale(c, row))
        return out

    def descend(space: list[Vec], k: int) -> Vec | None:
        if k == len(even_ops):
            return leaf_pick(space)
        op = _restrict_operator(even_ops[k], space)
        if all(vec_is_zero(r) for r in op):
            return descend(space, k + 1)
        coeffs = charpoly(op)
        roots = rational_roots(coeffs)
        if not roots:
            if first_poly[0] is None:
                first_poly[0] = coeffs
            return None
        for lam in sorted(roots, key=lambda r: (r == 0, r)):
            shifted = tuple(
                tuple(op[r][s] - (lam if r == s else ZERO)
                      for s in range(len(space)))
                for r in range(len(space)))
            new_space = []
            for u in kernel(shifted):
                w = zero_vec(ind.dim)
                for c, row in zip(u, space):
                    if c != 0:
                        w = vec_add(w, vec_scale(c, row))
                new_space.append(w)
            got = descend(_split_by_parity(new_space, ind.parities), k + 1)
            if got is not None:
                return got
        return None

    return descend(space0, 0), first_poly[0]


def max_isotropic_ideal(q: QuadraticLieSuperalgebra) -> IsotropicFlagResult:
    """Grow a flag of graded totally isotropic ideals of q up to
    dimension floor(dim/2).

    Requires q nilpotent, or solvable with [g_odd, g_odd] inside
    [g_even, g_even].  Each step picks a homogeneous isotropic vector of
    the invariant subspace (or joint eigenspace) of W^perp / W; when the
    even part of that space is rationally anisotropic the search fails
    with the offending quadric.
    """
    g = q.algebra
    nilp = is_nilpotent(g)
    if not nilp:
        if not (is_solvable(g) and class_condition(g)):
            raise PreconditionError(
                "algebra must be nilpotent, or solvable with the odd-odd "
                "brackets inside the even-even brackets")
    n = q.dim
    target = n // 2
    w = zero_subspace(q.basis)
    chain = [w]
    while w.dim < target:
        ind = _InducedSpace(q, w)
        ops = [ind.operator(unit_vec(n, i)) for i in range(n)]
        u_basis = _common_kernel(ops, ind.dim)
        vprime = None
        quadric_cert = None
        if u_basis:
            u_rows = _split_by_parity(u_basis, ind.parities)
            par = tuple(_row_parity(ind.parities, v) for v in u_rows)
            gram_u = ind.induced_gram_on(u_rows)
            point = isotropic_vector(gram_u, par)
            if point is not None:
                vprime = zero_vec(ind.dim)
                for c, row in zip(point, u_rows):
                    if c != 0:
                        vprime = vec_add(vprime, vec_scale(c, row))
            else:
                ev = [r for r, p in enumerate(par) if p == EVEN]
                sub_gram = mat([[gram_u[r][s] for s in ev] for r in ev])
                _, diag = diagonalize_symmetric(sub_gram)
                quadric_cert = diag
                if nilp:
                    raise RationalPointNotFound(
                        "no rational isotropic vector found in the "
                        "invariant subspace", quadric=diag,
                        quadric_str=_quadric_string(diag))
        elif nilp:
            raise InternalCheckError(
                "empty invariant subspace for a nilpotent action")
        if vprime is None:
            # solvable branch: a joint eigenvector with nonzero character
            # is isotropic even when the invariant subspace is not
            vprime, poly = _solvable_isotropic_eigvector(q, ind)
            if vprime is None:
                if quadric_cert is not None:
                    raise RationalPointNotFound(
                        "no rational isotropic vector found in the "
                        "invariant subspace, and no rational isotropic "
                        "joint eigenvector exists",
                        quadric=quadric_cert,
                        quadric_str=_quadric_string(quadric_cert))
                if poly is not None:
                    raise RationalPointNotFound(
                        "characteristic polynomial of an induced operator "
                        "has no rational root", polynomial=poly,
                        polynomial_str=_poly_string(poly))
                raise RationalPointNotFound(
                    "the rational joint-eigenvector search failed")
        # keep a homogeneous representative
        for p in (ODD, EVEN):
            part = tuple(c if ind.parities[r] == p else ZERO
                         for r, c in enumerate(vprime))
            if not vec_is_zero(part):
                vprime = part
                break
        lift = ind.lift(vprime)
        if q.form.apply(lift, lift) != 0:
            raise InternalCheckError("selected vector is not isotropic")
        w = extend_subspace(w, lift)
        # step postconditions: graded by construction, one dimension up,
        # still isotropic and still an ideal
        if w.dim != chain[-1].dim + 1:
            raise InternalCheckError("flag dimension did not grow by one")
        if not is_totally_isotropic(q.form, w):
            raise InternalCheckError("flag member is not totally isotropic")
        if not is_ideal(g, w):
            raise InternalCheckError("flag member is not an ideal")
        chain.append(w)
    wperp = orthogonal(q.form, w)
    if n % 2 == 0:
        if not w.equals(wperp):
            raise InternalCheckError("maximal member differs from its "
                                     "orthogonal in even dimension")
    else:
        if not (wperp.contains(w) and wperp.dim == w.dim + 1):
            raise InternalCheckError("orthogonal of the maximal member is "
                                     "not one dimension bigger")
        for i in range(n):
            for v in wperp.vectors:
                if not w.contains_vector(bracket(g, unit_vec(n, i), v)):
                    raise InternalCheckError(
                        "action does not map the orthogonal of the maximal "
                        "member into it")
    return IsotropicFlagResult(w, tuple(chain), w.dim)


def _augment_with_central_line(q: QuadraticLieSuperalgebra,
                               beta: Fraction) -> QuadraticLieSuperalgebra:
    """q plus a central even line t with B(t, t) = -beta, orthogonal to q."""
    basis = q.basis
    existing = set(basis.names)
    t_name = "t"
    while t_name in existing:
        t_name += "'"
    names = basis.names + (t_name,)
    parities = basis.parities + (EVEN,)
    n = q.dim
    N = n + 1
    c = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = q.algebra.c[i][j][k]
    G = [[ZERO] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            G[i][j] = q.form.gram[i][j]
    G[n][n] = -beta
    alg = LieSuperalgebra(graded_basis(names, parities),
                          tuple(tuple(tuple(v) for v in r) for r in c))
    form = EvenForm(alg.basis, tuple(tuple(r) for r in G))
    return quadratic(alg, form, check_algebra=False)


def decompose(q: QuadraticLieSuperalgebra) -> Decomposition:
    """Present q as a T*-extension (even total dimension) or as a
    verified codimension-1 nondegenerate graded ideal of one (odd total
    dimension), along a maximal totally isotropic graded ideal."""
    flag = max_isotropic_ideal(q)
    iso = flag.w_max
    n = q.dim
    if n % 2 == 0:
        ext, psi = recognize(q, iso)
        return Decomposition(ideal=iso, quotient=ext.base, extension=ext,
                             embedding=psi, parity_case="even")

    # odd case: orthogonally adjoin a central even line to make the
    # enlarged ideal Lagrangian, then recognize the enlarged algebra
    wperp = orthogonal(q.form, iso)
    d = next((v for v, p in zip(wperp.vectors, wperp.parities)
              if p == EVEN and not iso.contains_vector(v)), None)
    if d is None:
        raise InternalCheckError(
            "no even direction in W^perp beyond W in odd dimension")
    beta = q.form.apply(d, d)
    if beta == 0:
        raise InternalCheckError(
            "degenerate direction transverse to the maximal ideal")
    qhat = _augment_with_central_line(q, beta)
    N = n + 1
    iso_hat_vectors = [v + (ZERO,) for v in iso.vectors]
    iso_hat_vectors.append(tuple(d) + (frac(1),))  # d + t is isotropic
    iso_hat = subspace(qhat.basis, iso_hat_vectors)
    if not (is_totally_isotropic(qhat.form, iso_hat)
            and is_ideal(qhat.algebra, iso_hat)
            and 2 * iso_hat.dim == N):
        raise InternalCheckError("augmented ideal is not Lagrangian")
    ext, psi_hat = recognize(qhat, iso_hat)
    embedding = tuple(tuple(row[:n]) for row in psi_hat)
    _verify_codim1_embedding(q, ext, embedding)
    return Decomposition(ideal=iso, quotient=ext.base, extension=ext,
                         embedding=embedding, parity_case="odd")


def _verify_codim1_embedding(q: QuadraticLieSuperalgebra,
                             ext: TStarExtension, m: Mat) -> None:
    """The embedding must be injective, even, a bracket map, an isometry
    onto its image, and its image a graded nondegenerate ideal of
    codimension 1."""
    from .superalgebra import vector_parity
    n = q.dim
    total = ext.total
    N = total.dim
    if rank(m) != n:
        raise InternalCheckError("embedding is not injective")
    cols = [tuple(m[r][a] for r in range(N)) for a in range(n)]
    for a, col in enumerate(cols):
        if vector_parity(total.basis, col) != q.basis.parity(a):
            raise InternalCheckError("embedding is not even", witness=a)
    for a in range(n):
        for b in range(n):
            lhs = mat_vec(m, bracket(q.algebra, unit_vec(n, a),
                                     unit_vec(n, b)))
            rhs = bracket(total.algebra, cols[a], cols[b])
            if lhs != rhs:
                raise InternalCheckError("embedding is not a bracket map",
                                         witness=(a, b))
            if total.form.apply(cols[a], cols[b]) != q.form.apply(
                    unit_vec(n, a), unit_vec(n, b)):
                raise InternalCheckError("embedding is not an isometry",
                                         witness=(a, b))
    image = subspace(total.basis, cols)
    if image.dim != N - 1:
        raise InternalCheckError("image does not have codimension 1")
    if not is_ideal(total.algebra, image):
        raise InternalCheckError("image is not an ideal")
    gram = mat([[total.form.apply(u, v) for v in image.vectors]
                for u in image.vectors])
    if rank(gram) != image.dim:
        raise InternalCheckError("form is degenerate on the image")
