"""Finite-dimensional Lie superalgebras by structure constants.

A superalgebra lives on a :class:`GradedBasis`; the bracket is stored as
a dense rational tensor c[i][j][k] meaning [e_i, e_j] = sum_k c[i][j][k] e_k,
for *all* ordered pairs (i, j).  Storing both orders and enforcing
super-skew-symmetry at construction keeps sign bookkeeping out of the
algorithms, which is where superalgebra code usually goes wrong.

Sign conventions used throughout (see docs/conventions.md):

* super-skew-symmetry   [x, y] = -(-1)^{|x||y|} [y, x]
* graded Jacobi         (-1)^{|x||z|}[x,[y,z]] + (-1)^{|x||y|}[y,[z,x]]
                        + (-1)^{|y||z|}[z,[x,y]] = 0
* coadjoint action      (pi(x)F)(y) = -(-1)^{|x||F|} F([x, y])
"""

from __future__ import annotations

from dataclasses import dataclass, field, InitVar

from .errors import (AxiomError, DimensionMismatch, NotGradedError,
                     NotIdealError, PreconditionError)
from .linalg import (Mat, RowReducer, Vec, ZERO, coords_in, frac, inverse,
                     kernel, mat, rank, row_basis, transpose, unit_vec, vec,
                     vec_is_zero, vec_scale, zero_vec)

EVEN = 0
ODD = 1


def sgn(exponent: int) -> int:
    """(-1)**exponent for integer exponents."""
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class GradedBasis:
    """Ordered list of named basis vectors, each tagged even (0) or odd (1)."""

    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.parities):
            raise DimensionMismatch("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise PreconditionError("basis labels must be unique")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise PreconditionError("parities must be 0 (even) or 1 (odd)")
        object.__setattr__(self, "_index",
                           {n: i for i, n in enumerate(self.names)})

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def even_dim(self) -> int:
        return sum(1 for p in self.parities if p == EVEN)

    @property
    def odd_dim(self) -> int:
        return sum(1 for p in self.parities if p == ODD)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PreconditionError(f"unknown basis label {name!r}") from None

    def parity(self, i: int) -> int:
        return self.parities[i]


def graded_basis(names, parities) -> GradedBasis:
    return GradedBasis(tuple(names), tuple(int(p) for p in parities))


@dataclass(frozen=True)
class DualVector:
    """Linear functional with a definite parity.

    The coordinate F_k is the value on the k-th basis vector; parity a
    means F vanishes on every basis vector of the opposite parity.
    """

    coords: Vec
    parity: int


def dual_vector(basis: GradedBasis, coords, parity: int | None = None) -> DualVector:
    cs = vec(coords)
    support = {basis.parity(k) for k, q in enumerate(cs) if q != 0}
    if len(support) > 1:
        raise NotGradedError("functional mixes parities")
    if parity is None:
        parity = support.pop() if support else EVEN
    elif support and support != {parity}:
        raise NotGradedError("functional support contradicts declared parity")
    return DualVector(cs, parity)


@dataclass(frozen=True)
class LieSuperalgebra:
    """Lie superalgebra given by its structure-constant tensor."""

    basis: GradedBasis
    c: tuple[tuple[Vec, ...], ...]
    validate: InitVar[bool] = True
    _table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self, validate: bool):
        n = self.basis.dim
        if len(self.c) != n or any(len(row) != n for row in self.c) or any(
                len(v) != n for row in self.c for v in row):
            raise DimensionMismatch("structure tensor must be dim^3")
        # sparse bracket table: _table[i][j] = ((k, coeff), ...)
        table = tuple(
            tuple(tuple((k, q) for k, q in enumerate(self.c[i][j]) if q != 0)
                  for j in range(n)) for i in range(n))
        object.__setattr__(self, "_table", table)
        if validate:
            bad = _grading_violations(self)
            if bad:
                raise AxiomError(f"bracket violates the grading at {bad[0]}",
                                 report=bad)
            bad = _skew_violations(self)
            if bad:
                raise AxiomError(
                    f"bracket violates super-skew-symmetry at {bad[0]}",
                    report=bad)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def parity(self, i: int) -> int:
        return self.basis.parity(i)


def lie_superalgebra(names, parities, c, validate: bool = True) -> LieSuperalgebra:
    n = len(tuple(names))
    tensor = tuple(
        tuple(vec(c[i][j]) for j in range(n)) for i in range(n))
    return LieSuperalgebra(graded_basis(names, parities), tensor, validate)


def from_brackets(names, parities, brackets,
                  validate: bool = True) -> LieSuperalgebra:
    """Build an algebra from a sparse {(a, b): {label: coeff}} description.

    Brackets for the opposite order are filled in by super-skew-symmetry;
    an explicit entry that contradicts the completion is an error.
    """
    basis = graded_basis(names, parities)
    n = basis.dim
    c = [[list(zero_vec(n)) for _ in range(n)] for _ in range(n)]
    seen: dict[tuple[int, int], Vec] = {}

    def assign(i: int, j: int, v: Vec, origin: str):
        prev = seen.get((i, j))
        if prev is not None:
            if prev != v:
                raise PreconditionError(
                    f"contradictory bracket entries for ({origin})")
            return
        seen[(i, j)] = v
        c[i][j] = list(v)

    for (a, b), terms in brackets.items():
        i, j = basis.index(a), basis.index(b)
        v = list(zero_vec(n))
        items = terms.items() if isinstance(terms, dict) else terms
        for label, q in items:
            v[basis.index(label)] += frac(q)
        v = tuple(v)
        s = sgn(basis.parity(i) * basis.parity(j))
        assign(i, j, v, f"{a},{b}")
        if i != j:
            assign(j, i, vec_scale(-s, v), f"{a},{b}")
        elif s == 1 and not vec_is_zero(v):
            raise PreconditionError(
                f"bracket [{a},{a}] must vanish for an even generator")
    tensor = tuple(tuple(tuple(v) for v in row) for row in c)
    return LieSuperalgebra(basis, tensor, validate)


def abelian(even: int, odd: int) -> LieSuperalgebra:
    names = [f"e{i+1}" for i in range(even)] + [f"o{i+1}" for i in range(odd)]
    parities = [EVEN] * even + [ODD] * odd
    n = even + odd
    tensor = tuple(tuple(zero_vec(n) for _ in range(n)) for _ in range(n))
    return LieSuperalgebra(graded_basis(names, parities), tensor)


# ---------------------------------------------------------------------------
# bracket and axiom checking
# ---------------------------------------------------------------------------

def bracket(g: LieSuperalgebra, x: Vec, y: Vec) -> Vec:
    """Bilinear extension of the structure constants."""
    n = g.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch("vectors do not match the basis")
    out = [ZERO] * n
    table = g._table
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            f = xi * yj
            for k, q in table[i][j]:
                out[k] += f * q
    return tuple(out)


def _basis_bracket(g: LieSuperalgebra, i: int, j: int):
    return g._table[i][j]


def jacobi_defect(g: LieSuperalgebra, i: int, j: int, k: int) -> Vec:
    """(-1)^{xz}[e_i,[e_j,e_k]] + (-1)^{xy}[e_j,[e_k,e_i]] + (-1)^{yz}[e_k,[e_i,e_j]]."""
    n = g.dim
    p = g.basis.parities
    table = g._table
    out = [ZERO] * n
    for (a, b, c_), s in (((i, j, k), sgn(p[i] * p[k])),
                          ((j, k, i), sgn(p[i] * p[j])),
                          ((k, i, j), sgn(p[j] * p[k]))):
        for m, q in table[b][c_]:
            for t, r in table[a][m]:
                out[t] += s * q * r
    return tuple(out)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of check_axioms; empty violation lists mean a pass."""

    grading: tuple[tuple[int, int, int], ...]
    skew: tuple[tuple[int, int], ...]
    jacobi: tuple[tuple[int, int, int], ...]

    @property
    def passed(self) -> bool:
        return not (self.grading or self.skew or self.jacobi)


def _grading_violations(g: LieSuperalgebra):
    p = g.basis.parities
    bad = []
    for i in range(g.dim):
        for j in range(g.dim):
            target = (p[i] + p[j]) % 2
            for k, q in g._table[i][j]:
                if p[k] != target:
                    bad.append((i, j, k))
    return bad


def _skew_violations(g: LieSuperalgebra):
    p = g.basis.parities
    bad = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            s = sgn(p[i] * p[j])
            lhs = g.c[i][j]
            rhs = vec_scale(-s, g.c[j][i])
            if lhs != rhs:
                bad.append((i, j))
    return bad


def check_axioms(g: LieSuperalgebra) -> AxiomReport:
    """Verify grading, super-skew-symmetry and the graded Jacobi identity
    on all basis triples.  Violations are reported, not raised."""
    jac = []
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not vec_is_zero(jacobi_defect(g, i, j, k)):
                    jac.append((i, j, k))
    return AxiomReport(tuple(_grading_violations(g)),
                       tuple(_skew_violations(g)), tuple(jac))


def require_axioms(g: LieSuperalgebra, what: str = "algebra") -> None:
    report = check_axioms(g)
    if not report.passed:
        raise AxiomError(f"{what} fails the superalgebra axioms", report)


# ---------------------------------------------------------------------------
# graded subspaces
# ---------------------------------------------------------------------------

def split_vector(basis: GradedBasis, v: Vec) -> tuple[Vec, Vec]:
    """Parity components (even part, odd part) of a coordinate vector."""
    ev = tuple(q if basis.parity(k) == EVEN else ZERO for k, q in enumerate(v))
    od = tuple(q if basis.parity(k) == ODD else ZERO for k, q in enumerate(v))
    return ev, od


def vector_parity(basis: GradedBasis, v: Vec) -> int | None:
    """Parity of a homogeneous vector, or None if v mixes parities or is 0."""
    support = {basis.parity(k) for k, q in enumerate(v) if q != 0}
    if len(support) == 1:
        return support.pop()
    return None


@dataclass(frozen=True)
class Subspace:
    """Graded subspace with a canonical homogeneous (per-parity RREF) basis."""

    basis: GradedBasis
    even_rows: Mat
    odd_rows: Mat

    @property
    def vectors(self) -> Mat:
        return self.even_rows + self.odd_rows

    @property
    def parities(self) -> tuple[int, ...]:
        return (EVEN,) * len(self.even_rows) + (ODD,) * len(self.odd_rows)

    @property
    def dim(self) -> int:
        return len(self.even_rows) + len(self.odd_rows)

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains_vector(self, v: Vec) -> bool:
        ev, od = split_vector(self.basis, v)
        return (coords_in(self.even_rows, ev) is not None
                and coords_in(self.odd_rows, od) is not None)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.vectors)

    def equals(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains(other)


def subspace(basis: GradedBasis, vectors) -> Subspace:
    """Graded subspace spanned by ``vectors``.

    Every vector is split into parity components; if the split enlarges
    the span the input did not span a graded subspace and the
    construction is rejected.
    """
    vs = [vec(v) for v in vectors]
    for v in vs:
        if len(v) != basis.dim:
            raise DimensionMismatch("vector does not match the ambient basis")
    evens, odds = [], []
    for v in vs:
        ev, od = split_vector(basis, v)
        if not vec_is_zero(ev):
            evens.append(ev)
        if not vec_is_zero(od):
            odds.append(od)
    original = [v for v in vs if not vec_is_zero(v)]
    if original:
        split_rank = rank(mat(evens + odds))
        if split_rank != rank(mat(original)):
            raise NotGradedError(
                "spanning set does not span a graded subspace")
    return Subspace(basis,
                    tuple(row_basis(mat(evens))) if evens else (),
                    tuple(row_basis(mat(odds))) if odds else ())


def zero_subspace(basis: GradedBasis) -> Subspace:
    return Subspace(basis, (), ())


def full_subspace(basis: GradedBasis) -> Subspace:
    n = basis.dim
    return subspace(basis, [unit_vec(n, i) for i in range(n)])


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    return subspace(a.basis, a.vectors + b.vectors)


def extend_subspace(w: Subspace, v: Vec) -> Subspace:
    return subspace(w.basis, w.vectors + (vec(v),))


def graded_complement(basis: GradedBasis, inner: Subspace,
                      within: Subspace | None = None) -> Subspace:
    """Greedy graded complement of ``inner`` inside ``within`` (default:
    the whole space), spanned by canonical-basis vectors of ``within``."""
    if within is None:
        pool = [unit_vec(basis.dim, i) for i in range(basis.dim)]
    else:
        pool = list(within.vectors)
    acc = RowReducer(basis.dim)
    for v in inner.vectors:
        acc.add(v)
    chosen = []
    for v in pool:
        if acc.add(v):
            chosen.append(v)
    return subspace(basis, chosen)


# ---------------------------------------------------------------------------
# center, series, predicates
# ---------------------------------------------------------------------------

def ad_matrix(g: LieSuperalgebra, x: Vec) -> Mat:
    """Matrix of ad_x = [x, .] with columns indexed by basis vectors."""
    cols = [bracket(g, x, unit_vec(g.dim, j)) for j in range(g.dim)]
    return transpose(mat(cols))


def center(g: LieSuperalgebra) -> Subspace:
    """Graded subspace {x : [x, g] = 0}, via one stacked kernel computation."""
    n = g.dim
    rows = []
    for j in range(n):
        for k in range(n):
            row = tuple(g.c[i][j][k] for i in range(n))
            if not vec_is_zero(row):
                rows.append(row)
    if not rows:
        return full_subspace(g.basis)
    return subspace(g.basis, kernel(mat(rows)))


def product_subspace(g: LieSuperalgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of [a, b] over the spanning sets."""
    vecs = []
    for u in a.vectors:
        for v in b.vectors:
            w = bracket(g, u, v)
            if not vec_is_zero(w):
                vecs.append(w)
    return subspace(g.basis, vecs)


def derived_series(g: LieSuperalgebra) -> list[Subspace]:
    series = [full_subspace(g.basis)]
    while True:
        nxt = product_subspace(g, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def lower_central_series(g: LieSuperalgebra) -> list[Subspace]:
    whole = full_subspace(g.basis)
    series = [whole]
    while True:
        nxt = product_subspace(g, whole, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def is_solvable(g: LieSuperalgebra) -> bool:
    return derived_series(g)[-1].is_zero()


def is_nilpotent(g: LieSuperalgebra) -> bool:
    return lower_central_series(g)[-1].is_zero()


def derived_subspace(g: LieSuperalgebra) -> Subspace:
    return product_subspace(g, full_subspace(g.basis), full_subspace(g.basis))


def class_condition(g: LieSuperalgebra) -> bool:
    """True iff the span of odd-odd brackets lies inside the span of
    even-even brackets."""
    n = g.dim
    evens = [i for i in range(n) if g.parity(i) == EVEN]
    odds = [i for i in range(n) if g.parity(i) == ODD]
    even_sq = [vec(g.c[i][j]) for i in evens for j in evens]
    odd_sq = [vec(g.c[i][j]) for i in odds for j in odds]
    even_span = subspace(g.basis, [v for v in even_sq if not vec_is_zero(v)])
    return all(even_span.contains_vector(v) for v in odd_sq)


def is_ideal(g: LieSuperalgebra, w: Subspace) -> bool:
    n = g.dim
    for i in range(n):
        ei = unit_vec(n, i)
        for v in w.vectors:
            if not w.contains_vector(bracket(g, ei, v)):
                return False
    return True


# ---------------------------------------------------------------------------
# coadjoint representation
# ---------------------------------------------------------------------------

def coadjoint(g: LieSuperalgebra, x: Vec, F: DualVector) -> DualVector:
    """(pi(x)F)(y) = -(-1)^{|x||F|} F([x, y]) for homogeneous x and F."""
    px = vector_parity(g.basis, x)
    if px is None:
        if vec_is_zero(vec(x)):
            px = EVEN
        else:
            raise NotGradedError("coadjoint needs a homogeneous vector")
    s = -sgn(px * F.parity)
    n = g.dim
    out = [ZERO] * n
    table = g._table
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for m in range(n):
            acc = ZERO
            for t, q in table[i][m]:
                ft = F.coords[t]
                if ft != 0:
                    acc += q * ft
            if acc != 0:
                out[m] += s * xi * acc
    return dual_vector(g.basis, out, (px + F.parity) % 2)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientResult:
    """Quotient algebra together with the projection and a graded section."""

    algebra: LieSuperalgebra
    projection: Mat  # (q x n), quotient coordinates of an ambient vector
    section: Mat     # (n x q), the chosen coset representatives as columns


def quotient(g: LieSuperalgebra, ideal: Subspace,
             complement: Subspace | None = None,
             names: tuple[str, ...] | None = None) -> QuotientResult:
    """Quotient by a graded ideal, on a homogeneous complement basis."""
    if not is_ideal(g, ideal):
        raise NotIdealError("subspace is not an ideal")
    comp = complement if complement is not None else graded_complement(
        g.basis, ideal)
    if comp.dim + ideal.dim != g.dim:
        raise PreconditionError("complement has the wrong dimension")
    cols = list(comp.vectors) + list(ideal.vectors)
    M = transpose(mat(cols))
    if rank(M) != g.dim:
        raise PreconditionError("complement overlaps the ideal")
    Minv = inverse(M)
    q = comp.dim
    projection = tuple(Minv[:q])
    section = transpose(mat(comp.vectors))
    if names is None:
        names = tuple(f"q{r+1}" for r in range(q))
    qbasis = graded_basis(names, comp.parities)
    tensor = []
    for i in range(q):
        row = []
        for j in range(q):
            br = bracket(g, comp.vectors[i], comp.vectors[j])
            row.append(tuple(a for a in _apply(projection, br)))
        tensor.append(tuple(row))
    alg = LieSuperalgebra(qbasis, tuple(tensor))
    require_axioms(alg, "quotient algebra")
    return QuotientResult(alg, projection, section)


def _apply(A: Mat, x: Vec) -> Vec:
    return tuple(sum((r * q for r, q in zip(row, x)), ZERO) for row in A)
