from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cogalois.linalg import (
    GF,
    QQ,
    Field,
    FieldMismatchError,
    LinearMap,
    NotInvertibleError,
    Subspace,
    flat_index,
    identity,
    image,
    invert,
    kernel,
    permute_factors,
    quotient,
    solve,
    tensor,
    twist,
    unflatten,
)

from conftest import FIELDS, matrices


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(4)


def test_rationals_lowest_terms():
    x = QQ.parse("6/-4")
    assert x == Fraction(-3, 2) and x.denominator == 2


def test_residues_canonical():
    F = GF(7)
    assert F(-1).value == 6
    assert F(10) == F(3)
    assert F(3) / F(5) * F(5) == F(3)
    assert F.format(F(-2)) == "5"


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        tensor(identity(QQ, 2), identity(GF(3), 2))


# tensor products


def test_identity_tensor_identity():
    assert tensor(identity(QQ, 2), identity(QQ, 3)) == identity(QQ, 6)


def test_zero_tensor_identity():
    z = LinearMap.zero(QQ, 2, 2)
    assert tensor(z, identity(QQ, 2)) == LinearMap.zero(QQ, 4, 4)


def test_swap_tensor_identity_row_major():
    f = LinearMap.from_rows(QQ, [[0, 1], [1, 0]])
    fg = tensor(f, identity(QQ, 2))
    # e0 (x) e1 sits at index 1 and maps to e1 (x) e1 at index 1*2 + 1
    assert fg({1: QQ.one}) == {3: QQ.one}
    assert fg({0: QQ.one}) == {2: QQ.one}


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_flat_index_associative(a, b, c, data):
    i, j, k = data.draw(st.integers(0, a - 1)), data.draw(st.integers(0, b - 1)), data.draw(st.integers(0, c - 1))
    assert (i * b + j) * c + k == i * (b * c) + (j * c + k) == flat_index((i, j, k), (a, b, c))
    assert unflatten(flat_index((i, j, k), (a, b, c)), (a, b, c)) == (i, j, k)


@given(matrices(max_dim=2), matrices(max_dim=2), matrices(max_dim=2))
def test_tensor_associative(f, g, h):
    assert tensor(tensor(f, g), h) == tensor(f, tensor(g, h))


@given(matrices(max_dim=3), matrices(max_dim=3), matrices(max_dim=3), matrices(max_dim=3))
def test_tensor_interchange(f, g, h, k):
    if f.codomain != h.domain or g.codomain != k.domain:
        h = LinearMap.zero(QQ, f.codomain, h.codomain)
        k = LinearMap.zero(QQ, g.codomain, k.codomain)
    assert tensor(h, k) @ tensor(f, g) == tensor(h @ f, k @ g)


def test_twist_and_permute():
    f = GF(5)
    tw = twist(f, 2, 3)
    assert tw({1 * 3 + 2: f.one}) == {2 * 2 + 1: f.one}
    assert permute_factors(f, (2, 3), (1, 0)) == tw
    assert twist(f, 3, 2) @ tw == identity(f, 6)


# kernels and images


def test_kernel_of_zero_is_everything():
    assert kernel(LinearMap.zero(QQ, 2, 2)) == Subspace.full(QQ, 2)


def test_kernel_of_identity_is_zero():
    assert kernel(identity(QQ, 3)).dim == 0


def test_coaction_equaliser_kz2(kz2):
    A, C, rho = kz2.A, kz2.C, kz2.coaction
    ell = tensor(rho, C.id) - tensor(A.id, C.comult)
    K = kernel(ell)
    # span{e (x) e, g (x) g} at flat indices 0 and 3
    assert K.basis == ((1, 0, 0, 0), (0, 0, 0, 1))


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_rank_nullity(field, data):
    f = data.draw(matrices(field=field, max_dim=5))
    assert kernel(f).dim + f.rank() == f.domain
    assert image(f).dim == f.rank()


@given(matrices(max_dim=4))
def test_kernel_vectors_vanish(f):
    for v in kernel(f).basis:
        assert not any(f(v))


@given(matrices(max_dim=4))
def test_rref_basis_unique(f):
    S = image(f)
    shuffled = Subspace.span(QQ, f.codomain, [tuple(2 * x for x in b) for b in reversed(S.basis)])
    assert shuffled == S


# solving and inverting


def test_invert_identity():
    assert invert(identity(QQ, 4)) == identity(QQ, 4)


def test_solve_zero_map_no_solution():
    assert solve(LinearMap.zero(QQ, 2, 2), (1, 0)) is None


def test_not_invertible_carries_rank():
    with pytest.raises(NotInvertibleError) as exc:
        invert(LinearMap.from_rows(QQ, [[1, 2], [2, 4]]))
    assert exc.value.rank == 1


def test_invert_can_kz2(kz2):
    assert kz2.can.shape == (4, 4)
    inv = invert(kz2.can)
    assert kz2.can @ inv == identity(QQ, 4) and inv @ kz2.can == identity(QQ, 4)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
def test_inverse_two_sided(field, data):
    f = data.draw(matrices(field=field, max_dim=4, density=0.8).filter(lambda m: m.domain == m.codomain))
    try:
        g = invert(f)
    except NotInvertibleError as exc:
        assert exc.rank == f.rank() < f.domain
        return
    n = f.domain
    assert f @ g == identity(field, n) and g @ f == identity(field, n)


@given(matrices(max_dim=4), st.data())
def test_solve_finds_solution_in_image(f, data):
    x = tuple(QQ(data.draw(st.integers(-2, 2))) for _ in range(f.domain))
    y = f(x)
    sol = solve(f, y)
    assert sol is not None and f(sol) == y


# quotients


def test_quotient_by_zero():
    Q = quotient(3, Subspace.zero(QQ, 3))
    assert Q.projection == identity(QQ, 3) and Q.section == identity(QQ, 3)


def test_quotient_by_everything():
    assert quotient(3, Subspace.full(QQ, 3)).dim == 0


def test_balanced_quotient_kz2(kz2):
    assert kz2.quotient.dim == 4
    assert kz2.quotient.relations.dim == 0


@given(matrices(max_dim=4))
def test_projection_section_identity(f):
    R = image(f)
    Q = quotient(f.codomain, R)
    assert Q.projection @ Q.section == identity(QQ, Q.dim)
    assert kernel(Q.projection) == R
