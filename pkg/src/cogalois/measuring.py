"""Measurings between entwining structures and the induced functors.

A measuring (alpha, gamma) goes from a source entwining (A~, C~, psi~) to a
target (A, C, psi) with alpha: C~ (x) A~ -> A and gamma: C~ -> A (x) C.  It
induces M -> M hat-cotensor C~ (target modules to source modules, a kernel)
and M~ -> M~ hat-tensor A (source to target, a cokernel).  These form an
adjoint pair whose unit and counit are built here as explicit matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .entwining import (
    EntwinedModule,
    Entwining,
    EntwiningMorphism,
    morphism_violation,
    tensor_c,
    trivial_entwining_over_k,
    trivial_entwining_under_k,
    v_tensor_a,
)
from .galois import GaloisData, canonical_entwining
from .linalg import (
    LinearMap,
    NotInvertibleError,
    QuotientData,
    Subspace,
    hom_space,
    identity,
    image,
    invert,
    kernel,
    map_from_vector,
    map_to_vector,
    quotient,
    tensor,
)
from .structures import (
    RightComodule,
    RightModule,
    Violation,
    compare,
    first_violation,
    regular_right_comodule,
    regular_right_module,
)

MEA1A, MEA1B, MEA2A, MEA2B, MEA3 = "Mea1a", "Mea1b", "Mea2a", "Mea2b", "Mea3"


@dataclass(frozen=True, eq=False)
class Measuring:
    source: Entwining  # (A~, C~, psi~)
    target: Entwining  # (A, C, psi)
    alpha: LinearMap  # C~ (x) A~ -> A
    gamma: LinearMap  # C~ -> A (x) C

    def __post_init__(self):
        S, T = self.source, self.target
        if self.alpha.shape != (T.A.dim, S.C.dim * S.A.dim):
            raise ValueError(f"alpha has shape {self.alpha.shape}")
        if self.gamma.shape != (T.A.dim * T.C.dim, S.C.dim):
            raise ValueError(f"gamma has shape {self.gamma.shape}")

    @property
    def field(self):
        return self.target.field


def validate_measuring(m: Measuring) -> Violation | None:
    S, T, al, ga = m.source, m.target, m.alpha, m.gamma
    At, Ct, A, C = S.A, S.C, T.A, T.C
    ct, at = Ct.dim, At.dim
    return first_violation(
        lambda: compare(
            MEA1A,
            A.mult @ tensor(al, al) @ tensor(Ct.id, S.psi, At.id) @ tensor(Ct.comult, At.id, At.id),
            al @ tensor(Ct.id, At.mult),
            (ct, at, at),
        ),
        lambda: compare(MEA1B, al @ tensor(Ct.id, At.unit), A.unit @ Ct.counit, (ct,)),
        lambda: compare(
            MEA2A,
            tensor(A.mult, C.id, C.id) @ tensor(A.id, T.psi, C.id) @ tensor(ga, ga) @ Ct.comult,
            tensor(A.id, C.comult) @ ga,
            (ct,),
        ),
        lambda: compare(MEA2B, tensor(A.id, C.counit) @ ga, A.unit @ Ct.counit, (ct,)),
        lambda: compare(
            MEA3,
            tensor(A.mult, C.id) @ tensor(al, ga) @ tensor(Ct.id, S.psi) @ tensor(Ct.comult, At.id),
            tensor(A.mult, C.id) @ tensor(A.id, T.psi) @ tensor(ga, al) @ tensor(Ct.comult, At.id),
            (ct, at),
        ),
    )


# -- standard measurings ----------------------------------------------------------------


def morphism_measuring(mor: EntwiningMorphism) -> Measuring:
    """(eps~ (x) f, eta (x) g) for a morphism (f, g) from source to target."""
    v = morphism_violation(mor)
    if v is not None:
        raise ValueError(f"not an entwining morphism: {v}")
    S, T = mor.source, mor.target
    return Measuring(S, T, tensor(S.C.counit, mor.f), tensor(T.A.unit, mor.g))


def identity_measuring(E: Entwining) -> Measuring:
    return morphism_measuring(EntwiningMorphism(E, E, E.A.id, E.C.id))


def coinvariants_measuring(g: GaloisData, E: Entwining | None = None) -> Measuring:
    """(iota_B, Delta_A o eta) from (B, k) to (A, C)_psi."""
    E = E or canonical_entwining(g)
    src = trivial_entwining_over_k(g.B_algebra)
    return Measuring(src, E, g.embedding, g.coaction @ g.A.unit)


def forgetful_measuring(E: Entwining) -> Measuring:
    """(eps (x) A, eta o eps) from (A, C)_psi to (A, k): hat-cotensor is M -> M (x) C."""
    tgt = trivial_entwining_over_k(E.A)
    return Measuring(E, tgt, tensor(E.C.counit, E.A.id), E.A.unit @ E.C.counit)


def free_measuring(E: Entwining) -> Measuring:
    """(eta o eps, eta (x) C) from (k, C) to (A, C)_psi: hat-tensor is V -> V (x) A."""
    src = trivial_entwining_under_k(E.C)
    return Measuring(src, E, E.A.unit @ E.C.counit, tensor(E.A.unit, E.C.id))


# -- induced modules -----------------------------------------------------------------------


def induce_up(M: RightModule, m: Measuring) -> EntwinedModule:
    """M (x) C~ over the source, for a right A-module M."""
    S = m.source
    Ct, At = S.C, S.A
    IM = identity(m.field, M.dim)
    action = (tensor(M.action, Ct.id) @ tensor(IM, m.alpha, Ct.id) @ tensor(IM, Ct.id, S.psi)
              @ tensor(IM, Ct.comult, At.id))
    return EntwinedModule(S, M.dim * Ct.dim, action, tensor(IM, Ct.comult))


def induce_down(Mt: RightComodule, m: Measuring) -> EntwinedModule:
    """M~ (x) A over the target, for a right C~-comodule M~."""
    T = m.target
    A, C = T.A, T.C
    IM = identity(m.field, Mt.dim)
    coaction = (tensor(IM, A.mult, C.id) @ tensor(IM, A.id, T.psi) @ tensor(IM, m.gamma, A.id)
                @ tensor(Mt.coaction, A.id))
    return EntwinedModule(T, Mt.dim * A.dim, tensor(IM, A.mult), coaction)


def hat_ell_up(M: EntwinedModule, m: Measuring) -> LinearMap:
    """M (x) C~ -> M (x) C (x) C~ for M over the target."""
    Ct = m.source.C
    C = m.target.C
    IM = identity(m.field, M.dim)
    second = tensor(M.action, C.id, Ct.id) @ tensor(IM, m.gamma, Ct.id) @ tensor(IM, Ct.comult)
    return tensor(M.coaction, Ct.id) - second


def hat_ell_down(Mt: EntwinedModule, m: Measuring) -> LinearMap:
    """M~ (x) A~ (x) A -> M~ (x) A for M~ over the source."""
    A = m.target.A
    At = m.source.A
    IM = identity(m.field, Mt.dim)
    second = tensor(IM, A.mult) @ tensor(IM, m.alpha, A.id) @ tensor(Mt.coaction, At.id, A.id)
    return tensor(Mt.action, A.id) - second


def module_morphism_violation(h: LinearMap, M: EntwinedModule, N: EntwinedModule) -> Violation | None:
    A, C = M.over.A, M.over.C
    return first_violation(
        lambda: compare("A-linearity", h @ M.action, N.action @ tensor(h, A.id), (M.dim, A.dim)),
        lambda: compare("C-colinearity", N.coaction @ h, tensor(h, C.id) @ M.coaction, (M.dim,)),
    )


def hat_ell_up_violation(M: EntwinedModule, m: Measuring) -> Violation | None:
    """The up map is a morphism of source modules between induced objects."""
    dom = induce_up(M.as_module(), m)
    cod = induce_up(tensor_c(M.as_module(), m.target).as_module(), m)
    return module_morphism_violation(hat_ell_up(M, m), dom, cod)


def hat_ell_down_violation(Mt: EntwinedModule, m: Measuring) -> Violation | None:
    dom = induce_down(v_tensor_a(Mt.as_comodule(), m.source).as_comodule(), m)
    cod = induce_down(Mt.as_comodule(), m)
    return module_morphism_violation(hat_ell_down(Mt, m), dom, cod)


# -- hat-cotensor / hat-tensor ----------------------------------------------------------------


class StructureNotInduced(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HatCotensor:
    base: EntwinedModule  # M over the target
    ambient: EntwinedModule  # M (x) C~ over the source
    subspace: Subspace
    module: EntwinedModule  # in subspace coordinates

    @property
    def dim(self) -> int:
        return self.subspace.dim


@dataclass(frozen=True, eq=False)
class HatTensor:
    base: EntwinedModule  # M~ over the source
    ambient: EntwinedModule  # M~ (x) A over the target
    quotient: QuotientData
    module: EntwinedModule

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def projection(self) -> LinearMap:
        return self.quotient.projection

    @property
    def section(self) -> LinearMap:
        return self.quotient.section


def restrict_module(amb: EntwinedModule, K: Subspace) -> EntwinedModule:
    """Restrict the structure maps of ``amb`` to an invariant subspace, checking closure."""
    A, C = amb.over.A, amb.over.C
    inc, P = K.inclusion(), K.coordinate_map()
    act = amb.action @ tensor(inc, A.id)
    coact = amb.coaction @ inc
    act_K = P @ act
    coact_K = tensor(P, C.id) @ coact
    if inc @ act_K != act or tensor(inc, C.id) @ coact_K != coact:
        raise StructureNotInduced("subspace is not a subobject")
    return EntwinedModule(amb.over, K.dim, act_K, coact_K)


def descend_module(amb: EntwinedModule, Q: QuotientData) -> EntwinedModule:
    """Push the structure maps of ``amb`` to a quotient, checking that relations are preserved."""
    A, C = amb.over.A, amb.over.C
    P, s = Q.projection, Q.section
    R = Q.relations.inclusion()
    if not (P @ amb.action @ tensor(R, A.id)).is_zero():
        raise StructureNotInduced("action does not preserve the relations")
    if not (tensor(P, C.id) @ amb.coaction @ R).is_zero():
        raise StructureNotInduced("coaction does not preserve the relations")
    act = P @ amb.action @ tensor(s, A.id)
    coact = tensor(P, C.id) @ amb.coaction @ s
    return EntwinedModule(amb.over, Q.dim, act, coact)


def hat_cotensor(M: EntwinedModule, m: Measuring) -> HatCotensor:
    amb = induce_up(M.as_module(), m)
    K = kernel(hat_ell_up(M, m))
    return HatCotensor(M, amb, K, restrict_module(amb, K))


def hat_tensor(Mt: EntwinedModule, m: Measuring) -> HatTensor:
    amb = induce_down(Mt.as_comodule(), m)
    Q = quotient(amb.dim, image(hat_ell_down(Mt, m)))
    return HatTensor(Mt, amb, Q, descend_module(amb, Q))


def alternative_section(Q: QuotientData) -> LinearMap:
    """Another section of the projection, shifted by a relation in every column."""
    f = Q.section.field
    if Q.relations.dim == 0:
        return Q.section
    shift = LinearMap(f, Q.dim, Q.relations.dim, [{0: f.one}] * Q.dim)
    return Q.section + Q.relations.inclusion() @ shift


def section_independent(H: HatTensor) -> bool:
    """Structure maps computed through a different section agree."""
    amb, Q = H.ambient, H.quotient
    s2 = alternative_section(Q)
    if Q.projection @ s2 != LinearMap.identity(amb.field, Q.dim):
        return False
    A, C = amb.over.A, amb.over.C
    act2 = Q.projection @ amb.action @ tensor(s2, A.id)
    coact2 = tensor(Q.projection, C.id) @ amb.coaction @ s2
    return act2 == H.module.action and coact2 == H.module.coaction


# -- adjunction --------------------------------------------------------------------------------


def module_hom_space(M: EntwinedModule, N: EntwinedModule) -> Subspace:
    """Morphisms M -> N of entwined modules inside Hom(M, N)."""
    A, C = M.over.A, M.over.C
    return hom_space(M.field, M.dim, N.dim, [
        lambda h: h @ M.action - N.action @ tensor(h, A.id),
        lambda h: N.coaction @ h - tensor(h, C.id) @ M.coaction,
    ])


def tensor_functor(h: LinearMap, X: HatTensor, Y: HatTensor) -> LinearMap:
    """-hat-tensor A on a morphism h: X.base -> Y.base."""
    A = X.ambient.over.A
    return Y.projection @ tensor(h, A.id) @ X.section


def cotensor_functor(h: LinearMap, X: HatCotensor, Y: HatCotensor) -> LinearMap:
    """-hat-cotensor C~ on a morphism h: X.base -> Y.base."""
    Ct = X.ambient.over.C
    return Y.subspace.coordinate_map() @ tensor(h, Ct.id) @ X.subspace.inclusion()


def unit_psi(Mt: EntwinedModule, m: Measuring) -> tuple[LinearMap, HatTensor, HatCotensor]:
    """M~ -> (M~ hat-tensor A) hat-cotensor C~."""
    T = hat_tensor(Mt, m)
    K = hat_cotensor(T.module, m)
    Ct = m.source.C
    raw = tensor(T.projection, Ct.id) @ tensor(identity(m.field, Mt.dim), m.target.A.unit, Ct.id) @ Mt.coaction
    psi = K.subspace.coordinate_map() @ raw
    if K.subspace.inclusion() @ psi != raw:
        raise StructureNotInduced("unit does not land in the hat-cotensor")
    return psi, T, K


def counit_phi(M: EntwinedModule, m: Measuring) -> tuple[LinearMap, HatCotensor, HatTensor]:
    """(M hat-cotensor C~) hat-tensor A -> M."""
    K = hat_cotensor(M, m)
    T = hat_tensor(K.module, m)
    A = m.target.A
    lift = (M.action @ tensor(identity(m.field, M.dim), m.source.C.counit, A.id)
            @ tensor(K.subspace.inclusion(), A.id))
    if not (lift @ T.quotient.relations.inclusion()).is_zero():
        raise StructureNotInduced("counit is not defined on the hat-tensor")
    return lift @ T.section, K, T


@dataclass(frozen=True, eq=False)
class Adjunction:
    measuring: Measuring
    source_module: EntwinedModule  # M~
    target_module: EntwinedModule  # M
    hat_tensor: HatTensor
    hat_cotensor: HatCotensor
    left_hom: Subspace  # Hom_target(M~ hat-tensor A, M)
    right_hom: Subspace  # Hom_source(M~, M hat-cotensor C~)

    def zeta(self, f: LinearMap) -> LinearMap:
        m, T, K = self.measuring, self.hat_tensor, self.hat_cotensor
        Mt = self.source_module
        Ct = m.source.C
        first = f @ T.projection @ tensor(identity(m.field, Mt.dim), m.target.A.unit)
        raw = tensor(first, Ct.id) @ Mt.coaction
        out = K.subspace.coordinate_map() @ raw
        if K.subspace.inclusion() @ out != raw:
            raise StructureNotInduced("zeta(f) leaves the hat-cotensor")
        return out

    def zeta_inverse(self, g: LinearMap) -> LinearMap:
        m, T, K = self.measuring, self.hat_tensor, self.hat_cotensor
        M = self.target_module
        A = m.target.A
        lift = (M.action @ tensor(identity(m.field, M.dim), m.source.C.counit, A.id)
                @ tensor(K.subspace.inclusion() @ g, A.id))
        return lift @ T.section

    def is_bijective(self) -> bool:
        """zeta and zeta^{-1} are mutually inverse on the morphism spaces."""
        f = self.measuring.field
        if self.left_hom.dim != self.right_hom.dim:
            return False
        for b in self.left_hom.basis:
            h = map_from_vector(f, b, self.hat_tensor.dim, self.target_module.dim)
            z = self.zeta(h)
            if not self.right_hom.contains(map_to_vector(z)) or self.zeta_inverse(z) != h:
                return False
        for b in self.right_hom.basis:
            g = map_from_vector(f, b, self.source_module.dim, self.hat_cotensor.dim)
            z = self.zeta_inverse(g)
            if not self.left_hom.contains(map_to_vector(z)) or self.zeta(z) != g:
                return False
        return True


def adjunction(m: Measuring, Mt: EntwinedModule, M: EntwinedModule) -> Adjunction:
    T = hat_tensor(Mt, m)
    K = hat_cotensor(M, m)
    return Adjunction(m, Mt, M, T, K, module_hom_space(T.module, M), module_hom_space(Mt, K.module))


def triangle_identities(m: Measuring, Mt: EntwinedModule, M: EntwinedModule) -> tuple[bool, bool]:
    """Phi_F(M~) o F(Psi_M~) = id and G(Phi_M) o Psi_G(M) = id."""
    psi, T, _ = unit_psi(Mt, m)
    phi_F, _, T_KF = counit_phi(T.module, m)
    first = phi_F @ tensor_functor(psi, T, T_KF) == LinearMap.identity(m.field, T.dim)
    phi, K, _ = counit_phi(M, m)
    psi_G, _, K_TG = unit_psi(K.module, m)
    second = cotensor_functor(phi, K_TG, K) @ psi_G == LinearMap.identity(m.field, K.dim)
    return first, second


# -- Galois measurings -------------------------------------------------------------------------


@dataclass(frozen=True)
class GaloisMeasuringReport:
    unit_rank: int
    unit_shape: tuple[int, int]
    counit_rank: int
    counit_shape: tuple[int, int]

    @property
    def unit_bijective(self) -> bool:
        return self.unit_shape[0] == self.unit_shape[1] == self.unit_rank

    @property
    def counit_bijective(self) -> bool:
        return self.counit_shape[0] == self.counit_shape[1] == self.counit_rank

    @property
    def galois(self) -> bool:
        return self.unit_bijective and self.counit_bijective


def free_source_object(m: Measuring) -> EntwinedModule:
    """C~ (x) A~ over the source."""
    return v_tensor_a(regular_right_comodule(m.source.C), m.source)


def cofree_target_object(m: Measuring) -> EntwinedModule:
    """A (x) C over the target."""
    return tensor_c(regular_right_module(m.target.A), m.target)


def is_galois_measuring(m: Measuring) -> GaloisMeasuringReport:
    psi, _, _ = unit_psi(free_source_object(m), m)
    phi, _, _ = counit_phi(cofree_target_object(m), m)
    return GaloisMeasuringReport(psi.rank(), psi.shape, phi.rank(), phi.shape)


@dataclass(frozen=True)
class EquivalenceEntry:
    label: str
    side: str  # "source": unit tested; "target": counit tested
    dim: int
    rank: int
    other_dim: int

    @property
    def bijective(self) -> bool:
        return self.dim == self.other_dim == self.rank


def equivalence_check(m: Measuring, family: list[tuple[str, str, EntwinedModule]]) -> list[EquivalenceEntry]:
    """Bijectivity of the unit on source modules and the counit on target modules.

    ``family`` holds ``(label, side, module)`` with side ``"source"`` or
    ``"target"``.  Only the listed modules are tested.
    """
    out = []
    for label, side, N in family:
        if side == "source":
            psi, _, _ = unit_psi(N, m)
            out.append(EquivalenceEntry(label, side, N.dim, psi.rank(), psi.codomain))
        elif side == "target":
            phi, _, _ = counit_phi(N, m)
            out.append(EquivalenceEntry(label, side, N.dim, phi.rank(), phi.domain))
        else:
            raise ValueError(f"unknown side {side!r}")
    return out


def is_bijective(f: LinearMap) -> bool:
    try:
        invert(f)
    except NotInvertibleError:
        return False
    return True
