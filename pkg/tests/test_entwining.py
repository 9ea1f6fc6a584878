import pytest

from cogalois import catalog
from cogalois.associated import left_coaction
from cogalois.entwining import (
    COUNIT_TRIANGLE,
    LEFT_PENTAGON,
    RIGHT_PENTAGON,
    UNIT_TRIANGLE,
    Entwining,
    EntwinedModule,
    EntwiningKind,
    EntwiningMorphism,
    HopfAlgebra,
    InvalidHopfDatum,
    a_tensor_v_left,
    check_entwining,
    comodule_algebra_violation,
    doi_hopf_psi_inverse,
    flip_entwining,
    induce_module,
    invert_psi,
    morphism_violation,
    regular_entwined,
    standard_entwining,
    trivial_entwining_over_k,
    trivial_entwining_under_k,
    validate_entwined_module,
    validate_entwining,
    validate_left_entwined_module,
    zero_module,
)
from cogalois.galois import canonical_entwining, regular_entwined_module
from cogalois.linalg import GF, QQ, LinearMap, NotInvertibleError, identity, tensor, unflatten
from cogalois.structures import (
    regular_left_comodule,
    regular_right_comodule,
    regular_right_module,
    trivial_right_comodule,
)

from conftest import perturb

HOPF = {
    "kZ2": catalog.group_algebra(2),
    "kZ3": catalog.group_algebra(3),
    "kZ2/GF3": catalog.group_algebra(2, GF(3)),
    "k^Z2": catalog.function_algebra(2),
    "H4": catalog.sweedler_h4(),
}


def axiom_sides(A, C, psi):
    """The four axioms as (lhs, rhs, input dims), written out independently of the checker."""
    IA, IC = A.id, C.id
    n, m = A.dim, C.dim
    return {
        LEFT_PENTAGON: (psi @ tensor(IC, A.mult), tensor(A.mult, IC) @ tensor(IA, psi) @ tensor(psi, IA), (m, n, n)),
        UNIT_TRIANGLE: (psi @ tensor(IC, A.unit), tensor(A.unit, IC), (m,)),
        RIGHT_PENTAGON: (tensor(IA, C.comult) @ psi, tensor(psi, IC) @ tensor(IC, psi) @ tensor(C.comult, IA), (m, n)),
        COUNIT_TRIANGLE: (tensor(IA, C.counit) @ psi, tensor(C.counit, IA), (m, n)),
    }


def test_trivial_coalgebra_entwining():
    A = catalog.sweedler_h4().algebra
    E = trivial_entwining_over_k(A)
    assert check_entwining(E) is None
    assert invert_psi(E) == identity(QQ, 4)
    assert check_entwining(trivial_entwining_under_k(catalog.matrix_coalgebra(2))) is None


def test_flip_entwining_validates():
    H = HOPF["H4"]
    assert check_entwining(flip_entwining(H.algebra, H.coalgebra)) is None


def test_hopf_module_entwining_kz2():
    E = standard_entwining(EntwiningKind.HOPF_MODULE, HOPF["kZ2"])
    assert check_entwining(E) is None
    # g (x) g  ->  g (x) g g = g (x) e
    assert E.psi({1 * 2 + 1: QQ.one}) == {1 * 2 + 0: 1}
    # e (x) g -> g (x) g
    assert E.psi({0 * 2 + 1: QQ.one}) == {1 * 2 + 1: 1}


def test_yetter_drinfeld_kz2():
    E = standard_entwining("YetterDrinfeld", HOPF["kZ2"])
    assert check_entwining(E) is None
    assert E.psi({3: QQ.one}) == {3: 1}
    # grouplikes commute, so psi is the flip
    assert E.psi == flip_entwining(E.A, E.C).psi


@pytest.mark.parametrize("name", HOPF)
def test_doi_hopf_regular_equals_hopf_module(name):
    H = HOPF[name]
    assert standard_entwining("DoiHopf", H) == standard_entwining("HopfModule", H)


@pytest.mark.parametrize("kind", list(EntwiningKind))
@pytest.mark.parametrize("name", HOPF)
def test_standard_entwinings_validate(kind, name):
    assert check_entwining(standard_entwining(kind, HOPF[name])) is None


def test_invalid_antipode_rejected():
    H = HOPF["H4"]
    with pytest.raises(InvalidHopfDatum) as exc:
        HopfAlgebra(H.algebra, H.coalgebra, H.algebra.id)
    assert exc.value.violation.axiom.startswith("antipode")


def test_bad_comodule_algebra_rejected():
    H = HOPF["kZ2"]
    # a -> a (x) g is a coaction but sends 1 to 1 (x) g
    rho = LinearMap.from_function(QQ, 2, 4, lambda a: {a * 2 + 1: QQ.one})
    assert comodule_algebra_violation(H, H.algebra, rho) is not None
    with pytest.raises(InvalidHopfDatum):
        standard_entwining("HopfModule", H, H.algebra, rho)


@pytest.mark.parametrize("where", [(0, 0), (2, 3), (5, 7), (15, 15)])
def test_corrupted_psi_names_axiom_and_witness(where):
    E = standard_entwining("HopfModule", HOPF["H4"])
    psi = perturb(E.psi, *where)
    v = validate_entwining(E.A, E.C, psi)
    assert v is not None
    lhs, rhs, dims = axiom_sides(E.A, E.C, psi)[v.axiom]
    col = 0
    for i, d in zip(v.witness, dims):
        col = col * d + i
    assert (lhs.entry(v.row, col), rhs.entry(v.row, col)) == (v.lhs, v.rhs)
    assert v.lhs != v.rhs
    # nothing earlier in lexicographic order differs
    assert all(lhs.column(j) == rhs.column(j) for j in range(col))
    assert unflatten(col, dims) == v.witness


def test_corrupted_kz2_psi():
    E = standard_entwining("HopfModule", HOPF["kZ2"])
    v = validate_entwining(E.A, E.C, perturb(E.psi, 2, 3, -1))
    assert v is not None and v.axiom in {LEFT_PENTAGON, UNIT_TRIANGLE, RIGHT_PENTAGON, COUNIT_TRIANGLE}


# entwined modules


def test_regular_module_of_canonical_entwining(galois_family):
    for g in galois_family.values():
        assert validate_entwined_module(regular_entwined_module(g)) is None


def test_zero_module_ok():
    E = standard_entwining("HopfModule", HOPF["H4"])
    assert validate_entwined_module(zero_module(E)) is None


def test_trivial_coaction_breaks_compatibility():
    H = HOPF["kZ2"]
    E = standard_entwining("HopfModule", H)
    triv = LinearMap.from_function(QQ, 2, 4, lambda a: {a * 2: QQ.one})
    v = validate_entwined_module(regular_entwined(E, triv))
    # Delta(e g) = g (x) e but e . psi(e (x) g) = g (x) g
    assert v.axiom == "entwined compatibility" and v.witness == (0, 1)


def test_induce_tensor_c_over_trivial_coalgebra():
    A = HOPF["kZ2"].algebra
    E = trivial_entwining_over_k(A)
    M = induce_module("TensorC", regular_right_module(A), E)
    assert M.dim == 2 and M.action == A.mult and M.coaction == identity(QQ, 2)
    assert validate_entwined_module(M) is None


@pytest.mark.parametrize("name", HOPF)
def test_induced_modules_validate(name):
    H = HOPF[name]
    E = standard_entwining("HopfModule", H)
    M = induce_module("TensorC", regular_right_module(H.algebra), E)
    V = induce_module("VTensorA", regular_right_comodule(H.coalgebra), E)
    assert M.dim == V.dim == H.dim ** 2
    assert validate_entwined_module(M) is None
    assert validate_entwined_module(V) is None


def test_v_tensor_a_kz2_coaction_by_hand():
    H = HOPF["kZ2"]
    E = standard_entwining("HopfModule", H)
    V = induce_module("VTensorA", regular_right_comodule(H.coalgebra), E)
    # g (x) g -> g (x) psi(g (x) g) = g (x) g (x) e at flat (1, 1, 0)
    assert V.coaction({3: QQ.one}) == {1 * 4 + 1 * 2 + 0: 1}


def test_induce_rejects_mismatched_base():
    E = standard_entwining("HopfModule", HOPF["kZ2"])
    with pytest.raises(ValueError):
        induce_module("TensorC", regular_right_module(HOPF["kZ3"].algebra), E)
    with pytest.raises(ValueError):
        induce_module("Sideways", regular_right_module(E.A), E)


# morphisms


def test_identity_morphism():
    E = standard_entwining("HopfModule", HOPF["H4"])
    m = EntwiningMorphism(E, E, E.A.id, E.C.id)
    assert morphism_violation(m) is None


def test_zero_is_not_a_morphism():
    E = standard_entwining("HopfModule", HOPF["kZ2"])
    m = EntwiningMorphism(E, E, LinearMap.zero(QQ, 2, 2), E.C.id)
    assert morphism_violation(m).axiom == "unital"


def test_automorphism_of_kz3_intertwines():
    H = HOPF["kZ3"]
    E = standard_entwining("HopfModule", H)
    inv = LinearMap.from_function(QQ, 3, 3, lambda k: {(-k) % 3: QQ.one})
    m = EntwiningMorphism(E, E, inv, inv)
    assert morphism_violation(m) is None
    assert tensor(inv, inv) @ E.psi == E.psi @ tensor(inv, inv)


# psi inverse


def test_h4_psi_inverse_matches_formula():
    H = HOPF["H4"]
    E = standard_entwining("HopfModule", H)
    inv = invert_psi(E)
    assert inv == doi_hopf_psi_inverse(H)
    assert inv @ E.psi == identity(QQ, 16) and E.psi @ inv == identity(QQ, 16)


def test_rank_deficient_psi():
    H = HOPF["kZ2"]
    psi = LinearMap.from_function(QQ, 4, 4, lambda j: {0: QQ.one})
    with pytest.raises(NotInvertibleError) as exc:
        invert_psi(Entwining(H.algebra, H.coalgebra, psi))
    assert exc.value.rank == 1


def test_left_entwined_regular(kz2):
    E = canonical_entwining(kz2)
    inv = invert_psi(E)
    assert validate_left_entwined_module(E, inv, 2, E.A.mult, left_coaction(kz2, inv)) is None


def test_left_entwined_zero(kz2):
    E = canonical_entwining(kz2)
    z = LinearMap.zero(QQ, 0, 0)
    assert validate_left_entwined_module(E, invert_psi(E), 0, z, z) is None


@pytest.mark.parametrize("name", ["kZ2", "H4"])
def test_a_tensor_v_left(name):
    H = HOPF[name]
    E = standard_entwining("HopfModule", H)
    inv = invert_psi(E)
    dim, action, coaction = a_tensor_v_left(E, inv, regular_left_comodule(H.coalgebra))
    assert dim == H.dim ** 2
    assert validate_left_entwined_module(E, inv, dim, action, coaction) is None


def test_entwined_module_shape_checked():
    E = standard_entwining("HopfModule", HOPF["kZ2"])
    with pytest.raises(ValueError):
        EntwinedModule(E, 1, LinearMap.zero(QQ, 1, 1), LinearMap.zero(QQ, 1, 2))


def test_trivial_comodule_is_entwined_over_k():
    C = HOPF["kZ2"].coalgebra
    V = trivial_right_comodule(C, (1, 0))
    E = trivial_entwining_under_k(C)
    M = induce_module("VTensorA", V, E)
    assert validate_entwined_module(M) is None and M.dim == 1
