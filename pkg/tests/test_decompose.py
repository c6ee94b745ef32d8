import random
from fractions import Fraction

import pytest

import superquad as sq
from superquad.cohomology import unhat, z3_basis
from superquad.decompose import (Decomposition, decompose, isotropic_vector,
                                 max_isotropic_ideal)
from superquad.errors import (InternalCheckError, PreconditionError,
                              RationalPointNotFound)
from superquad.forms import EvenForm, is_totally_isotropic, orthogonal, quadratic
from superquad.gallery import (even_line, orthogonal_direct_sum,
                               random_supercyclic_cocycle)
from superquad.linalg import mat, rank, unit_vec, vec
from superquad.superalgebra import (EVEN, ODD, bracket, is_ideal, subspace)
from superquad.tstar import build

F = Fraction


def test_flag_hyperbolic_even_picks_first_null_vector():
    q = sq.hyperbolic_even()
    flag = max_isotropic_ideal(q)
    assert flag.achieved_dim == 1
    assert flag.w_max.equals(subspace(q.basis, [unit_vec(2, 0)]))
    assert [w.dim for w in flag.chain] == [0, 1]


def test_flag_anisotropic_rational_failure():
    a2 = sq.abelian(2, 0)
    q = quadratic(a2, EvenForm(a2.basis, mat([[1, 0], [0, 1]])),
                  check_algebra=False)
    with pytest.raises(RationalPointNotFound) as exc:
        max_isotropic_ideal(q)
    assert exc.value.quadric_str == "x^2 + y^2"
    assert tuple(exc.value.quadric) == (F(1), F(1))


def test_flag_odd_hyperbolic():
    q = sq.hyperbolic_odd()
    flag = max_isotropic_ideal(q)
    assert flag.achieved_dim == 1
    assert len(flag.w_max.odd_rows) == 1


def test_flag_chain_invariants():
    ext = sq.tstar_of_gn(2)
    flag = max_isotropic_ideal(ext.total)
    assert flag.achieved_dim == 6
    dims = [w.dim for w in flag.chain]
    assert dims == list(range(7))
    for w in flag.chain:
        assert is_totally_isotropic(ext.total.form, w)
        assert is_ideal(ext.total.algebra, w)
    # maximal member equals its orthogonal in even total dimension
    assert flag.w_max.equals(orthogonal(ext.total.form, flag.w_max))


def test_flag_preconditions():
    gl11 = sq.build_glnn(1)
    Q = build(gl11).total  # solvable but without the class condition
    with pytest.raises(PreconditionError):
        max_isotropic_ideal(Q)


def test_isotropic_vector_prefers_raw_basis():
    gram = mat([[0, 1], [1, 0]])
    v = isotropic_vector(gram, (EVEN, EVEN))
    assert v == unit_vec(2, 0)
    gram = mat([[2, 0], [0, -2]])
    v = isotropic_vector(gram, (EVEN, EVEN))
    assert v is not None
    assert sum(v[i] * gram[i][j] * v[j] for i in range(2)
               for j in range(2)) == 0
    assert isotropic_vector(mat([[1, 0], [0, 2]]), (EVEN, EVEN)) is None
    # the small grid catches three-variable points like (1, 1, 1)
    v = isotropic_vector(mat([[1, 0, 0], [0, 2, 0], [0, 0, -3]]),
                         (EVEN, EVEN, EVEN))
    assert v is not None


def test_decompose_even_case_g2():
    Q = sq.tstar_of_gn(2).total
    dec = decompose(Q)
    assert dec.parity_case == "even"
    assert dec.ideal.dim == 6
    assert dec.extension.total.dim == 12
    assert rank(dec.embedding) == 12  # onto


def test_decompose_even_case_h3_volume_cocycle():
    h3 = sq.heisenberg3()
    w = unhat(z3_basis(h3)[0])
    Q = build(h3, w).total
    dec = decompose(Q)
    assert dec.parity_case == "even"
    assert dec.ideal.dim == 3


def test_decompose_solvable_branch():
    Q = build(sq.solvable2d()).total
    dec = decompose(Q)
    assert dec.parity_case == "even"
    assert dec.ideal.dim == 2


def test_decompose_even_line_frozen():
    dec = decompose(even_line())
    assert dec.parity_case == "odd"
    assert dec.ideal.dim == 0
    assert dec.extension.total.dim == 2
    # the embedded line, pinned after verification: psi(e) = (1/2, 1)
    assert dec.embedding == ((F(1, 2),), (F(1),))
    B = dec.extension.total.form
    col = tuple(r[0] for r in dec.embedding)
    assert B.apply(col, col) == 1


def test_decompose_odd_dim_sum():
    Q = orthogonal_direct_sum(build(sq.heisenberg3()).total, even_line())
    assert Q.dim == 7
    dec = decompose(Q)
    assert dec.parity_case == "odd"
    assert dec.ideal.dim == 3
    assert dec.extension.total.dim == 8


def test_decompose_odd_dim_with_odd_part():
    Q = orthogonal_direct_sum(build(sq.abelian(1, 2)).total, even_line())
    assert Q.dim == 7
    dec = decompose(Q)
    assert dec.parity_case == "odd"
    assert dec.extension.total.dim == 8


def test_decompose_roundtrip_nilpotent_gallery(nilpotent_gallery,
                                               supercyclic_bases):
    rng = random.Random(61)
    for name, g in nilpotent_gallery.items():
        if g.dim > 4:
            continue  # one big case is covered separately
        for _ in range(3):
            w = random_supercyclic_cocycle(g, rng,
                                           basis=supercyclic_bases[name])
            Q = build(g, w).total
            dec = decompose(Q)  # embedding verified exactly inside
            assert dec.parity_case == "even"
            assert dec.ideal.dim == g.dim
            assert dec.extension.total.dim == Q.dim


def test_decompose_g2_roundtrip_with_cocycle(supercyclic_bases):
    rng = random.Random(67)
    g = sq.build_gn(2)
    w = random_supercyclic_cocycle(g, rng)
    Q = build(g, w).total
    dec = decompose(Q)
    assert dec.parity_case == "even"
    assert dec.ideal.dim == 6
