import pytest

from cogalois import catalog
from cogalois.associated import (
    NotBijective,
    PreconditionError,
    algebra_comodule,
    bimodule_section_ff,
    cotensor,
    cross_sections,
    duality_bridge,
    hom_psi_closed_under_B,
    hom_psi_space,
    left_associated,
    left_coinvariants_of_A_tensor_V,
    left_trivialization_ok,
    psi_inverse_world,
    regular_identification_ok,
    relation_isos,
    right_associated,
    right_trivialization_ok,
    s_hat,
    section_cleft_bridge,
    section_from_cleaving,
    theta,
    theta_iso,
    unit_grouplike,
    zeta_iso,
)
from cogalois.entwining import invert_psi
from cogalois.galois import canonical_entwining, check_cleft, find_cleaving_map, galois_data
from cogalois.linalg import QQ, LinearMap, Subspace, identity, map_to_vector, tensor
from cogalois.structures import (
    ConvolutionElement,
    LeftComodule,
    RightComodule,
    convolution_invert,
    ground_coalgebra,
    regular_left_comodule,
    regular_right_comodule,
    trivial_left_comodule,
    trivial_right_comodule,
)


def left_comodules(g):
    return {"k": trivial_left_comodule(g.C, unit_grouplike(g)), "C": regular_left_comodule(g.C)}


def right_comodules(g):
    return {"k": trivial_right_comodule(g.C, unit_grouplike(g)), "C": regular_right_comodule(g.C)}


# cotensor


def test_kz2_cotensor():
    C = catalog.group_algebra(2).coalgebra
    K = cotensor(regular_right_comodule(C), regular_left_comodule(C))
    assert K == Subspace.span(QQ, 4, [(1, 0, 0, 0), (0, 0, 0, 1)])


def test_cotensor_over_trivial_coalgebra():
    k = ground_coalgebra(QQ)
    X = RightComodule(k, 2, identity(QQ, 2))
    Y = LeftComodule(k, 3, identity(QQ, 3))
    assert cotensor(X, Y) == Subspace.full(QQ, 6)


def test_cotensor_rejects_mismatch():
    with pytest.raises(ValueError):
        cotensor(regular_right_comodule(catalog.group_algebra(2).coalgebra),
                 regular_left_comodule(catalog.group_algebra(3).coalgebra))


def test_A_cotensor_C_is_A(galois_family):
    for g in galois_family.values():
        E = cotensor(algebra_comodule(g), regular_left_comodule(g.C))
        assert E.dim == g.A.dim
        assert regular_identification_ok(g)


def test_unit_grouplike_of_function_algebra(galois_family):
    # in k^Z2 the unit is delta_0 + delta_1 and the grouplike is the same vector
    assert unit_grouplike(galois_family["kZ2dual"]) == (1, 1)
    assert unit_grouplike(galois_family["H4"]) == (1, 0, 0, 0)


# left associated modules


def test_left_associated_dims(galois_family):
    for g in galois_family.values():
        Vs = left_comodules(g)
        assert left_associated(g, Vs["k"]).dim == g.B.dim
        assert left_associated(g, Vs["C"]).dim == g.A.dim


def test_cleft_left_trivialization(galois_family):
    for g in galois_family.values():
        phi = find_cleaving_map(g).phi.map
        for V in left_comodules(g).values():
            L = left_associated(g, V, cleaving=phi)
            assert L.to_BV.shape == (g.B.dim * V.dim, L.dim)
            assert left_trivialization_ok(L)


def test_hom_psi_of_trivial_comodule_is_B(galois_family):
    for g in galois_family.values():
        H = hom_psi_space(g, left_comodules(g)["k"])
        assert H.dim == g.B.dim
        # phi(1) ranges over B
        assert Subspace.span(QQ, g.A.dim, H.basis) == g.B


def test_hom_psi_contains_cleaving_inverse(kz2, h4):
    for g in (kz2, h4):
        V = regular_left_comodule(g.C)
        H = hom_psi_space(g, V)
        phi = find_cleaving_map(g).phi.map
        phi_inv = convolution_invert(ConvolutionElement(g.C, g.A, phi)).map
        assert H.contains(map_to_vector(phi_inv))
        assert H.contains(map_to_vector(LinearMap.zero(QQ, g.C.dim, g.A.dim)))
        assert hom_psi_closed_under_B(g, H, V.dim)


def test_theta_of_cleaving_inverse_is_section(kz2):
    L = left_associated(kz2, regular_left_comodule(kz2.C))
    # the identity is its own convolution inverse on kZ2
    s = theta(L, kz2.A.id)
    # pulled back along A = E via the coaction: a -> a_(0) Phi^{-1}(a_(1))
    assert s @ L.E.coordinate_map() @ kz2.coaction == section_from_cleaving(kz2, kz2.A.id)
    assert section_from_cleaving(kz2, kz2.A.id) == LinearMap.from_rows(QQ, [[1, 1]])


def test_theta_trivial_comodule_identity(galois_family):
    for g in galois_family.values():
        iso = theta_iso(g, left_comodules(g)["k"])
        assert iso.bijective
        assert iso.hom_psi.dim == iso.sections.dim == g.B.dim


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "kZ2dual", "H4", "kZ4/Z2"])
@pytest.mark.parametrize("vname", ["k", "C"])
def test_theta_bijective(name, vname, galois_family):
    g = galois_family[name]
    iso = theta_iso(g, left_comodules(g)[vname])
    assert iso.bijective and iso.right_B_linear
    assert iso.matrix @ iso.inverse == identity(QQ, iso.sections.dim)


def test_theta_h4_dims(h4):
    iso = theta_iso(h4, regular_left_comodule(h4.C))
    assert iso.hom_psi.dim == iso.sections.dim == 4
    assert cross_sections(iso.module).dim == 4


# sections and cleaving maps


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "kZ2dual", "H4", "kZ4/Z2"])
def test_section_cleft_round_trip(name, galois_family):
    g = galois_family[name]
    phi = find_cleaving_map(g).phi.map
    s = section_from_cleaving(g, phi)
    cm = section_cleft_bridge(g, s)
    assert cm.phi.map == phi
    assert section_from_cleaving(g, cm.phi.map) == s
    assert check_cleft(g, cm.phi.map).cleft


def test_identity_round_trip(kz2, h4):
    for g in (kz2, h4):
        s = section_from_cleaving(g, g.A.id)
        assert section_cleft_bridge(g, s).phi.map == g.A.id


def test_zero_section_not_bijective(kz2):
    s = LinearMap.zero(QQ, 2, 1)
    assert s_hat(kz2, s).rank() == 0
    with pytest.raises(NotBijective) as exc:
        section_cleft_bridge(kz2, s)
    assert exc.value.rank == 0


def test_bimodule_section_kz2(kz2):
    verdict = bimodule_section_ff(kz2, LinearMap.from_rows(QQ, [[1, 0]]))
    assert verdict.hypotheses_hold and verdict.toolkit_faithfully_flat and verdict.faithfully_flat


def test_bimodule_section_h4(h4):
    verdict = bimodule_section_ff(h4, LinearMap.from_rows(QQ, [[1, 0, 0, 0]]))
    assert verdict.faithfully_flat


def test_bimodule_section_non_unital(kz2):
    with pytest.raises(PreconditionError):
        bimodule_section_ff(kz2, LinearMap.from_rows(QQ, [[2, 0]]))


# right associated modules


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "kZ2dual", "H4", "kZ4/Z2"])
@pytest.mark.parametrize("vname", ["k", "C"])
def test_zeta_bijective(name, vname, galois_family):
    g = galois_family[name]
    iso = zeta_iso(g, right_comodules(g)[vname])
    assert iso.faithfully_flat
    assert iso.bijective and iso.left_B_linear
    assert iso.colinear.dim == iso.sections.dim
    assert iso.inverse @ iso.matrix == identity(QQ, iso.colinear.dim)


def test_right_associated_dims(galois_family):
    for g in galois_family.values():
        Vs = right_comodules(g)
        assert right_associated(g, Vs["k"]).dim == g.B.dim
        assert right_associated(g, Vs["C"]).dim == g.C.dim * g.B.dim


def test_cleft_right_trivialization(galois_family):
    for g in galois_family.values():
        phi = find_cleaving_map(g).phi.map
        for V in right_comodules(g).values():
            assert right_trivialization_ok(right_associated(g, V, cleaving=phi))


def test_h4_zeta_dims(h4):
    iso = zeta_iso(h4, regular_right_comodule(h4.C))
    assert iso.colinear.dim == iso.sections.dim == 4


# duality


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "kZ2dual", "H4", "kZ4/Z2"])
@pytest.mark.parametrize("vname", ["k", "C"])
def test_duality_bridge(name, vname, galois_family):
    g = galois_family[name]
    db = duality_bridge(g, left_comodules(g)[vname])
    assert db.iso1 and db.iso2
    assert db.E.dim == db.colinear_from_dual.dim
    assert db.Ebar_dual.dim == db.hom_psi.dim
    assert db.comparison_left.bijective and db.comparison_right.bijective


def test_duality_kz2_regular(kz2):
    db = duality_bridge(kz2, regular_left_comodule(kz2.C))
    assert db.E.dim == 2 == db.colinear_from_dual.dim


# psi inverse


def test_psi_inverse_world(galois_family):
    for g in galois_family.values():
        w = psi_inverse_world(g)
        assert w.left_coaction_valid and w.can_L_bijective and w.can_L_factorization
        assert w.B_bar_equals_B and w.B_bar_products == g.B == w.B_bar_unit


def test_kz2_left_coaction(kz2):
    w = psi_inverse_world(kz2)
    # grouplikes: g -> g (x) g
    assert w.left_coaction({1: QQ.one}) == {3: 1}
    assert w.left_coaction({0: QQ.one}) == {0: 1}


def test_psi_inverse_over_trivial_coalgebra():
    A = catalog.group_algebra(2).algebra
    g = galois_data(A, ground_coalgebra(QQ), identity(QQ, 2))
    w = psi_inverse_world(g)
    assert w.psi_inverse == identity(QQ, 2)
    assert w.left_coaction == identity(QQ, 2)
    assert w.B_bar_equals_B


@pytest.mark.parametrize("name", ["kZ2", "kZ3", "kZ2dual", "H4", "kZ4/Z2"])
def test_relation_isos(name, galois_family):
    g = galois_family[name]
    for vname in ("k", "C"):
        assert relation_isos(g, left_comodules(g)[vname], right_comodules(g)[vname]) == (True, True)


def test_h4_left_coinvariants_dimension(h4):
    psi_inv = invert_psi(canonical_entwining(h4))
    V = regular_left_comodule(h4.C)
    K = left_coinvariants_of_A_tensor_V(h4, psi_inv, V)
    assert K.dim == 4 and K == cotensor(algebra_comodule(h4), V)
