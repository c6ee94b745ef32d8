"""Generators for the concrete algebras used across the test suite and
the CLI: the full matrix superalgebra gl(n,n), the nilpotent triangular
family inside it, its zero-cocycle T*-extension, and small stock
algebras (abelian, Heisenberg, a solvable plane, hyperbolic quadratic
planes).

The catalog names accepted by :func:`stock` are documented in
docs/catalog.md together with their structure constants.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cohomology import (Cochain2Dual, ScalarCochain2, expand_cochain2dual,
                         expand_scalar2, free_coords_cochain2dual,
                         free_coords_scalar2, z2_basis, z2_supercyclic_basis)
from .errors import InternalCheckError, PreconditionError
from .forms import EvenForm, QuadraticLieSuperalgebra, quadratic
from .linalg import ZERO, mat, zero_vec
from .superalgebra import (EVEN, ODD, LieSuperalgebra, abelian, center,
                           from_brackets, graded_basis, is_nilpotent,
                           lie_superalgebra, require_axioms, sgn)
from .tstar import TStarExtension, build


# ---------------------------------------------------------------------------
# gl(n, n) and the triangular family
# ---------------------------------------------------------------------------

def _glnn_layout(n: int):
    """Basis labels and their (row, col) positions in the 2n x 2n matrix,
    even blocks (diagonal) first, odd blocks after, row-major inside."""
    labels, positions, parities = [], [], []
    for p in range(n):          # A block
        for q in range(n):
            labels.append(f"a{p+1}{q+1}")
            positions.append((p, q))
            parities.append(EVEN)
    for p in range(n):          # D block
        for q in range(n):
            labels.append(f"d{p+1}{q+1}")
            positions.append((n + p, n + q))
            parities.append(EVEN)
    for p in range(n):          # B block
        for q in range(n):
            labels.append(f"b{p+1}{q+1}")
            positions.append((p, n + q))
            parities.append(ODD)
    for p in range(n):          # C block
        for q in range(n):
            labels.append(f"c{p+1}{q+1}")
            positions.append((n + p, q))
            parities.append(ODD)
    return labels, positions, parities


def build_glnn(n: int) -> LieSuperalgebra:
    """gl(n, n) on the matrix-unit basis with [M, N] = MN - (-1)^{ab} NM."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    labels, positions, parities = _glnn_layout(n)
    index = {pos: t for t, pos in enumerate(positions)}
    dim = len(labels)
    c = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
    for i, (p, q) in enumerate(positions):
        for j, (r, s) in enumerate(positions):
            sign = sgn(parities[i] * parities[j])
            # E_pq E_rs = delta_qr E_ps ; E_rs E_pq = delta_sp E_rq
            if q == r:
                c[i][j][index[(p, s)]] += Fraction(1)
            if s == p:
                c[i][j][index[(r, q)]] -= Fraction(sign)
    alg = lie_superalgebra(labels, parities, c)
    require_axioms(alg, "gl(n,n)")
    return alg


def matrix_of_glnn(n: int, label: str):
    """The 2n x 2n matrix of a gl(n,n) basis label (for oracle tests)."""
    labels, positions, _ = _glnn_layout(n)
    pos = positions[labels.index(label)]
    m = [[ZERO] * (2 * n) for _ in range(2 * n)]
    m[pos[0]][pos[1]] = Fraction(1)
    return mat(m)


def _triangular_layout(n: int):
    """Basis of the nilpotent triangular subalgebra of gl(n,n):
    strictly upper-triangular diagonal blocks, upper-triangular upper-right
    block, strictly upper-triangular lower-left block."""
    labels, positions, parities = [], [], []
    for p in range(n):          # A block, strict
        for q in range(p + 1, n):
            labels.append(f"a{p+1}{q+1}")
            positions.append((p, q))
            parities.append(EVEN)
    for p in range(n):          # D block, strict
        for q in range(p + 1, n):
            labels.append(f"d{p+1}{q+1}")
            positions.append((n + p, n + q))
            parities.append(EVEN)
    for p in range(n):          # B block, with diagonal
        for q in range(p, n):
            labels.append(f"b{p+1}{q+1}")
            positions.append((p, n + q))
            parities.append(ODD)
    for p in range(n):          # C block, strict
        for q in range(p + 1, n):
            labels.append(f"c{p+1}{q+1}")
            positions.append((n + p, q))
            parities.append(ODD)
    return labels, positions, parities


def build_gn(n: int) -> LieSuperalgebra:
    """The nilpotent triangular sub-superalgebra of gl(n,n); closure under
    the bracket is verified on every basis pair."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    labels, positions, parities = _triangular_layout(n)
    index = {pos: t for t, pos in enumerate(positions)}
    dim = len(labels)
    c = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
    for i, (p, q) in enumerate(positions):
        for j, (r, s) in enumerate(positions):
            sign = sgn(parities[i] * parities[j])
            entries: dict[tuple[int, int], Fraction] = {}
            if q == r:
                entries[(p, s)] = entries.get((p, s), ZERO) + 1
            if s == p:
                entries[(r, q)] = entries.get((r, q), ZERO) - Fraction(sign)
            for pos, coeff in entries.items():
                if coeff == 0:
                    continue
                if pos not in index:
                    raise InternalCheckError(
                        f"bracket left the triangular family at {pos}")
                c[i][j][index[pos]] += coeff
    alg = lie_superalgebra(labels, parities, c)
    require_axioms(alg, "triangular family")
    return alg


def build_class_c_example(n: int) -> QuadraticLieSuperalgebra:
    """The zero-cocycle T*-extension of the triangular family: a
    nilpotent quadratic superalgebra whose center is nonzero and lies
    entirely in the odd part."""
    ext = tstar_of_gn(n)
    total = ext.total
    if not is_nilpotent(total.algebra):
        raise InternalCheckError("extension of a nilpotent base must be "
                                 "nilpotent")
    z = center(total.algebra)
    if z.is_zero() or z.even_rows:
        raise InternalCheckError("center must be nonzero and purely odd")
    return total


def tstar_of_gn(n: int) -> TStarExtension:
    return build(build_gn(n), None)


# ---------------------------------------------------------------------------
# stock catalog
# ---------------------------------------------------------------------------

def heisenberg3() -> LieSuperalgebra:
    return from_brackets(("e1", "e2", "e3"), (EVEN, EVEN, EVEN),
                         {("e1", "e2"): {"e3": 1}})


def solvable2d() -> LieSuperalgebra:
    return from_brackets(("e1", "e2"), (EVEN, EVEN), {("e1", "e2"): {"e2": 1}})


def hyperbolic_even() -> QuadraticLieSuperalgebra:
    alg = abelian(2, 0)
    form = EvenForm(alg.basis, mat([[0, 1], [1, 0]]))
    return quadratic(alg, form, check_algebra=False)


def hyperbolic_odd() -> QuadraticLieSuperalgebra:
    alg = abelian(0, 2)
    form = EvenForm(alg.basis, mat([[0, 1], [-1, 0]]))
    return quadratic(alg, form, check_algebra=False)


def even_line() -> QuadraticLieSuperalgebra:
    alg = abelian(1, 0)
    form = EvenForm(alg.basis, mat([[1]]))
    return quadratic(alg, form, check_algebra=False)


_ABELIAN_RE = re.compile(r"^abelian\((\d+)\|(\d+)\)$")

STOCK_NAMES = ("abelian(p|q)", "heisenberg3", "solvable2d",
               "hyperbolic-even", "hyperbolic-odd", "even-line")


def stock(name: str) -> LieSuperalgebra | QuadraticLieSuperalgebra:
    """Named catalog algebra; see docs/catalog.md for the full list."""
    m = _ABELIAN_RE.match(name)
    if m:
        return abelian(int(m.group(1)), int(m.group(2)))
    table = {
        "heisenberg3": heisenberg3,
        "solvable2d": solvable2d,
        "hyperbolic-even": hyperbolic_even,
        "hyperbolic-odd": hyperbolic_odd,
        "even-line": even_line,
    }
    if name not in table:
        raise PreconditionError(
            f"unknown stock algebra {name!r}; known: "
            + ", ".join(STOCK_NAMES))
    return table[name]()


# ---------------------------------------------------------------------------
# direct sums (used to assemble odd-dimensional test instances)
# ---------------------------------------------------------------------------

def orthogonal_direct_sum(a: QuadraticLieSuperalgebra,
                          b: QuadraticLieSuperalgebra,
                          prefixes: tuple[str, str] = ("l_", "r_")
                          ) -> QuadraticLieSuperalgebra:
    names = tuple(prefixes[0] + s for s in a.basis.names) + tuple(
        prefixes[1] + s for s in b.basis.names)
    parities = a.basis.parities + b.basis.parities
    na, nb = a.dim, b.dim
    n = na + nb
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    g = [[ZERO] * n for _ in range(n)]
    for i in range(na):
        for j in range(na):
            g[i][j] = a.form.gram[i][j]
            for k in range(na):
                c[i][j][k] = a.algebra.c[i][j][k]
    for i in range(nb):
        for j in range(nb):
            g[na + i][na + j] = b.form.gram[i][j]
            for k in range(nb):
                c[na + i][na + j][na + k] = b.algebra.c[i][j][k]
    alg = LieSuperalgebra(graded_basis(names, parities),
                          tuple(tuple(tuple(v) for v in r) for r in c))
    form = EvenForm(alg.basis, tuple(tuple(r) for r in g))
    return quadratic(alg, form)


# ---------------------------------------------------------------------------
# random cochains over gallery algebras (seeded, for property suites)
# ---------------------------------------------------------------------------

def _random_fraction(rng) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def random_cochain2(g: LieSuperalgebra, rng) -> Cochain2Dual:
    """Container-valid (even, super-antisymmetric) but otherwise random."""
    coords = {}
    for key in free_coords_cochain2dual(g.basis):
        if rng.random() < 0.6:
            coords[key] = _random_fraction(rng)
    return expand_cochain2dual(g.basis, coords)


def random_scalar2(g: LieSuperalgebra, rng) -> ScalarCochain2:
    coords = {}
    for key in free_coords_scalar2(g.basis):
        if rng.random() < 0.7:
            coords[key] = _random_fraction(rng)
    return expand_scalar2(g.basis, coords)


def _random_combination(basis_cochains, rng, expand, g):
    coords: dict = {}
    for w in basis_cochains:
        q = _random_fraction(rng)
        if q == 0:
            continue
        for key, val in w.items():
            coords[key] = coords.get(key, ZERO) + q * val
    return expand(g.basis, {k: v for k, v in coords.items() if v != 0})


def random_supercyclic_cocycle(g: LieSuperalgebra, rng,
                               basis=None) -> Cochain2Dual:
    """Random rational combination of a basis of the supercyclic cocycles."""
    from .cohomology import collect_cochain2dual
    if basis is None:
        basis = z2_supercyclic_basis(g)
    return _random_combination([collect_cochain2dual(w) for w in basis],
                               rng, expand_cochain2dual, g)


def random_cocycle2(g: LieSuperalgebra, rng, basis=None) -> Cochain2Dual:
    """Random element of the full 2-cocycle space (maybe not supercyclic)."""
    from .cohomology import collect_cochain2dual
    if basis is None:
        basis = z2_basis(g)
    return _random_combination([collect_cochain2dual(w) for w in basis],
                               rng, expand_cochain2dual, g)
