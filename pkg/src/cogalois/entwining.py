"""Entwining structures (A, C, psi) and their entwined modules.

``psi`` is a map C (x) A -> A (x) C.  Right entwined modules carry a right
A-action and a right C-coaction related by

    coaction(m . a) = m_(0) . psi(m_(1) (x) a).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .linalg import LinearMap, NotInvertibleError, identity, invert, permute_factors, tensor, twist
from .structures import (
    ConvolutionElement,
    LeftComodule,
    LeftModule,
    FinAlgebra,
    FinCoalgebra,
    RightComodule,
    RightModule,
    Violation,
    compare,
    convolve_maps,
    dualize,
    first_violation,
    ground_algebra,
    ground_coalgebra,
    validate,
)

LEFT_PENTAGON = "LeftPentagon"
UNIT_TRIANGLE = "UnitTriangle"
RIGHT_PENTAGON = "RightPentagon"
COUNIT_TRIANGLE = "CounitTriangle"


class InvalidHopfDatum(ValueError):
    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(str(violation))


@dataclass(frozen=True)
class Entwining:
    A: FinAlgebra
    C: FinCoalgebra
    psi: LinearMap

    def __post_init__(self):
        n, m = self.A.dim, self.C.dim
        if self.psi.shape != (n * m, m * n):
            raise ValueError(f"psi must be {n * m}x{m * n}, got {self.psi.shape}")
        if self.A.field != self.C.field:
            raise ValueError("algebra and coalgebra over different fields")

    @property
    def field(self):
        return self.A.field

    def dual(self) -> "Entwining":
        """Transposed entwining (C*, A*, psi^T)."""
        return Entwining(dualize(self.C), dualize(self.A), self.psi.T)


def validate_entwining(A: FinAlgebra, C: FinCoalgebra, psi: LinearMap) -> Violation | None:
    """Check the four entwining axioms bit-exactly."""
    if psi.shape != (A.dim * C.dim, C.dim * A.dim):
        raise ValueError("psi has the wrong shape")
    n, m = A.dim, C.dim
    IA, IC = A.id, C.id
    return first_violation(
        lambda: compare(
            LEFT_PENTAGON,
            psi @ tensor(IC, A.mult),
            tensor(A.mult, IC) @ tensor(IA, psi) @ tensor(psi, IA),
            (m, n, n),
        ),
        lambda: compare(UNIT_TRIANGLE, psi @ tensor(IC, A.unit), tensor(A.unit, IC), (m,)),
        lambda: compare(
            RIGHT_PENTAGON,
            tensor(IA, C.comult) @ psi,
            tensor(psi, IC) @ tensor(IC, psi) @ tensor(C.comult, IA),
            (m, n),
        ),
        lambda: compare(COUNIT_TRIANGLE, tensor(IA, C.counit) @ psi, tensor(C.counit, IA), (m, n)),
    )


def check_entwining(E: Entwining) -> Violation | None:
    return validate_entwining(E.A, E.C, E.psi)


def trivial_entwining_over_k(A: FinAlgebra) -> Entwining:
    """(A, k) with psi the identification k (x) A = A = A (x) k."""
    return Entwining(A, ground_coalgebra(A.field), identity(A.field, A.dim))


def trivial_entwining_under_k(C: FinCoalgebra) -> Entwining:
    """(k, C) with psi the identification C (x) k = C = k (x) C."""
    return Entwining(ground_algebra(C.field), C, identity(C.field, C.dim))


def flip_entwining(A: FinAlgebra, C: FinCoalgebra) -> Entwining:
    """psi(c (x) a) = a (x) c, an entwining for any pair."""
    return Entwining(A, C, twist(A.field, C.dim, A.dim))


# -- Hopf data ------------------------------------------------------------------


@dataclass(frozen=True)
class HopfAlgebra:
    """Algebra, coalgebra and antipode on one space; axioms checked on construction."""

    algebra: FinAlgebra
    coalgebra: FinCoalgebra
    antipode: LinearMap

    def __post_init__(self):
        v = hopf_violation(self.algebra, self.coalgebra, self.antipode)
        if v is not None:
            raise InvalidHopfDatum(v)

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim


def hopf_violation(H: FinAlgebra, D: FinCoalgebra, S: LinearMap) -> Violation | None:
    if H.dim != D.dim or S.shape != (H.dim, H.dim):
        raise ValueError("Hopf datum dimensions disagree")
    n = H.dim
    I = H.id
    mu, eta, delta, eps = H.mult, H.unit, D.comult, D.counit
    k1 = identity(H.field, 1)
    middle = tensor(I, twist(H.field, n, n), I)
    conv_unit = eta @ eps
    return first_violation(
        lambda: validate(H),
        lambda: validate(D),
        lambda: compare("comultiplicativity", delta @ mu, tensor(mu, mu) @ middle @ tensor(delta, delta), (n, n)),
        lambda: compare("unit grouplike", delta @ eta, tensor(eta, eta), (1,)),
        lambda: compare("counit multiplicativity", eps @ mu, tensor(eps, eps), (n, n)),
        lambda: compare("counit of unit", eps @ eta, k1, (1,)),
        lambda: compare("antipode left", convolve_maps(D, H, S, I), conv_unit, (n,)),
        lambda: compare("antipode right", convolve_maps(D, H, I, S), conv_unit, (n,)),
    )


def comodule_algebra_violation(H: HopfAlgebra, A: FinAlgebra, rho: LinearMap) -> Violation | None:
    """A right H-comodule algebra: rho is a coaction and an algebra map."""
    n, h = A.dim, H.dim
    IA = A.id
    middle = tensor(IA, twist(A.field, h, n), H.algebra.id)
    return first_violation(
        lambda: validate(RightComodule(H.coalgebra, n, rho)),
        lambda: compare(
            "coaction multiplicativity",
            rho @ A.mult,
            tensor(A.mult, H.algebra.mult) @ middle @ tensor(rho, rho),
            (n, n),
        ),
        lambda: compare("coaction unitality", rho @ A.unit, tensor(A.unit, H.algebra.unit), (1,)),
    )


def module_coalgebra_violation(H: HopfAlgebra, C: FinCoalgebra, action: LinearMap) -> Violation | None:
    """A right H-module coalgebra: Delta(c.h) = c1.h1 (x) c2.h2, eps(c.h) = eps(c)eps(h)."""
    m, h = C.dim, H.dim
    IC = C.id
    IH = H.algebra.id
    shuffle = tensor(IC, twist(C.field, m, h), IH)
    return first_violation(
        lambda: validate(RightModule(H.algebra, m, action)),
        lambda: compare(
            "action comultiplicativity",
            C.comult @ action,
            tensor(action, action) @ shuffle @ tensor(C.comult, H.coalgebra.comult),
            (m, h),
        ),
        lambda: compare("action counitality", C.counit @ action, tensor(C.counit, H.coalgebra.counit), (m, h)),
    )


class EntwiningKind(Enum):
    HOPF_MODULE = "HopfModule"
    YETTER_DRINFELD = "YetterDrinfeld"
    DOI_HOPF = "DoiHopf"


def hopf_module_entwining(H: HopfAlgebra, A: FinAlgebra | None = None, rho: LinearMap | None = None) -> Entwining:
    """psi(h (x) a) = a_(0) (x) h a_(1) for a right H-comodule algebra A."""
    if A is None:
        A, rho = H.algebra, H.coalgebra.comult
    v = comodule_algebra_violation(H, A, rho)
    if v is not None:
        raise InvalidHopfDatum(v)
    return doi_hopf_entwining(H, A, rho, H.coalgebra, H.algebra.mult)


def doi_hopf_entwining(H: HopfAlgebra, A: FinAlgebra, rho: LinearMap, C: FinCoalgebra, action: LinearMap) -> Entwining:
    """psi(c (x) a) = a_(0) (x) c . a_(1) for a comodule algebra A and module coalgebra C."""
    v = comodule_algebra_violation(H, A, rho) or module_coalgebra_violation(H, C, action)
    if v is not None:
        raise InvalidHopfDatum(v)
    f = A.field
    # c (x) a -> c (x) a0 (x) a1 -> a0 (x) c (x) a1 -> a0 (x) c.a1
    psi = tensor(A.id, action) @ tensor(twist(f, C.dim, A.dim), H.algebra.id) @ tensor(C.id, rho)
    return Entwining(A, C, psi)


def yetter_drinfeld_entwining(H: HopfAlgebra) -> Entwining:
    """psi(g (x) h) = h_(2) (x) S(h_(1)) g h_(3) on A = C = H."""
    f = H.field
    n = H.dim
    I = H.algebra.id
    delta = H.coalgebra.comult
    mu = H.algebra.mult
    delta2 = tensor(delta, I) @ delta  # h -> h1 h2 h3
    # g (x) h -> g (x) h1 (x) h2 (x) h3
    step1 = tensor(I, delta2)
    # -> h2 (x) h1 (x) g (x) h3 : reorder (g, h1, h2, h3) to (h2, h1, g, h3)
    step2 = permute_factors(f, (n, n, n, n), (2, 1, 0, 3))
    # -> h2 (x) S(h1) g h3
    step3 = tensor(I, mu @ tensor(mu, I) @ tensor(H.antipode, I, I))
    return Entwining(H.algebra, H.coalgebra, step3 @ step2 @ step1)


def standard_entwining(kind, H: HopfAlgebra, A: FinAlgebra | None = None, rho: LinearMap | None = None,
                       C: FinCoalgebra | None = None, action: LinearMap | None = None) -> Entwining:
    kind = EntwiningKind(kind) if not isinstance(kind, EntwiningKind) else kind
    if kind is EntwiningKind.HOPF_MODULE:
        return hopf_module_entwining(H, A, rho)
    if kind is EntwiningKind.YETTER_DRINFELD:
        return yetter_drinfeld_entwining(H)
    if A is None:
        A, rho = H.algebra, H.coalgebra.comult
    if C is None:
        C, action = H.coalgebra, H.algebra.mult
    return doi_hopf_entwining(H, A, rho, C, action)


# -- entwined modules ------------------------------------------------------------


@dataclass(frozen=True)
class EntwinedModule:
    over: Entwining
    dim: int
    action: LinearMap  # M (x) A -> M
    coaction: LinearMap  # M -> M (x) C

    def __post_init__(self):
        n, m = self.over.A.dim, self.over.C.dim
        if self.action.shape != (self.dim, self.dim * n):
            raise ValueError(f"action must be {self.dim}x{self.dim * n}, got {self.action.shape}")
        if self.coaction.shape != (self.dim * m, self.dim):
            raise ValueError(f"coaction must be {self.dim * m}x{self.dim}, got {self.coaction.shape}")

    @property
    def field(self):
        return self.over.field

    def as_module(self) -> RightModule:
        return RightModule(self.over.A, self.dim, self.action)

    def as_comodule(self) -> RightComodule:
        return RightComodule(self.over.C, self.dim, self.coaction)


def compatibility_violation(E: Entwining, dim: int, action: LinearMap, coaction: LinearMap) -> Violation | None:
    IM = identity(E.field, dim)
    return compare(
        "entwined compatibility",
        coaction @ action,
        tensor(action, E.C.id) @ tensor(IM, E.psi) @ tensor(coaction, E.A.id),
        (dim, E.A.dim),
    )


def validate_entwined_module(M: EntwinedModule) -> Violation | None:
    return first_violation(
        lambda: validate(M.as_module()),
        lambda: validate(M.as_comodule()),
        lambda: compatibility_violation(M.over, M.dim, M.action, M.coaction),
    )


def zero_module(E: Entwining) -> EntwinedModule:
    f = E.field
    return EntwinedModule(E, 0, LinearMap.zero(f, 0, 0), LinearMap.zero(f, 0, 0))


def regular_entwined(E: Entwining, coaction: LinearMap) -> EntwinedModule:
    """A itself with multiplication and the given coaction."""
    return EntwinedModule(E, E.A.dim, E.A.mult, coaction)


def module_from_right_module(M: RightModule) -> EntwinedModule:
    """A right A-module as an object over (A, k)."""
    E = trivial_entwining_over_k(M.over)
    return EntwinedModule(E, M.dim, M.action, identity(M.field, M.dim))


def module_from_right_comodule(V: RightComodule) -> EntwinedModule:
    """A right C-comodule as an object over (k, C)."""
    E = trivial_entwining_under_k(V.over)
    return EntwinedModule(E, V.dim, identity(V.field, V.dim), V.coaction)


def tensor_c(M: RightModule, E: Entwining) -> EntwinedModule:
    """M (x) C with action m (x) c (x) a -> m . psi(c (x) a) and coaction M (x) Delta."""
    IM = identity(E.field, M.dim)
    action = tensor(M.action, E.C.id) @ tensor(IM, E.psi)
    return EntwinedModule(E, M.dim * E.C.dim, action, tensor(IM, E.C.comult))


def v_tensor_a(V: RightComodule, E: Entwining) -> EntwinedModule:
    """V (x) A with action V (x) mu and coaction v (x) a -> v_(0) (x) psi(v_(1) (x) a)."""
    IV = identity(E.field, V.dim)
    coaction = tensor(IV, E.psi) @ tensor(V.coaction, E.A.id)
    return EntwinedModule(E, V.dim * E.A.dim, tensor(IV, E.A.mult), coaction)


def induce_module(side: str, datum, E: Entwining) -> EntwinedModule:
    """``side`` is ``"TensorC"`` (datum a right A-module) or ``"VTensorA"`` (a right C-comodule)."""
    if side == "TensorC":
        if datum.over != E.A:
            raise ValueError("module is over a different algebra")
        return tensor_c(datum, E)
    if side == "VTensorA":
        if datum.over != E.C:
            raise ValueError("comodule is over a different coalgebra")
        return v_tensor_a(datum, E)
    raise ValueError(f"unknown side {side!r}")


# -- morphisms ---------------------------------------------------------------------


@dataclass(frozen=True)
class EntwiningMorphism:
    source: Entwining
    target: Entwining
    f: LinearMap  # A -> A~
    g: LinearMap  # C -> C~


def morphism_violation(m: EntwiningMorphism) -> Violation | None:
    S, T, f, g = m.source, m.target, m.f, m.g
    n, c = S.A.dim, S.C.dim
    return first_violation(
        lambda: compare("algebra map", f @ S.A.mult, T.A.mult @ tensor(f, f), (n, n)),
        lambda: compare("unital", f @ S.A.unit, T.A.unit, (1,)),
        lambda: compare("coalgebra map", T.C.comult @ g, tensor(g, g) @ S.C.comult, (c,)),
        lambda: compare("counital", T.C.counit @ g, S.C.counit, (c,)),
        lambda: compare("psi intertwining", tensor(f, g) @ S.psi, T.psi @ tensor(g, f), (c, n)),
    )


# -- psi inverse and left entwined modules ---------------------------------------------


def invert_psi(E: Entwining) -> LinearMap:
    """psi^{-1}: A (x) C -> C (x) A; raises NotInvertibleError with the rank."""
    try:
        return invert(E.psi)
    except NotInvertibleError as exc:
        raise NotInvertibleError(exc.rank, f"psi is not bijective (rank {exc.rank})") from None


def left_compatibility_violation(E: Entwining, psi_inv: LinearMap, dim: int, action: LinearMap,
                                 coaction: LinearMap) -> Violation | None:
    """Left A-module, left C-comodule M with coaction(a.m) = psi^{-1}(a (x) m_(-1)) . m_(0)."""
    IM = identity(E.field, dim)
    IA, IC = E.A.id, E.C.id
    rhs = tensor(IC, action) @ tensor(psi_inv, IM) @ tensor(IA, coaction)
    return compare("left entwined compatibility", coaction @ action, rhs, (E.A.dim, dim))


def validate_left_entwined_module(E: Entwining, psi_inv: LinearMap, dim: int, action: LinearMap,
                                  coaction: LinearMap) -> Violation | None:
    return first_violation(
        lambda: validate(LeftModule(E.A, dim, action)),
        lambda: validate(LeftComodule(E.C, dim, coaction)),
        lambda: left_compatibility_violation(E, psi_inv, dim, action, coaction),
    )


def a_tensor_v_left(E: Entwining, psi_inv: LinearMap, V) -> tuple[int, LinearMap, LinearMap]:
    """A (x) V for a left comodule V: action mu (x) V, coaction psi^{-1}(a (x) v_(-1)) (x) v_(0)."""
    IV = identity(E.field, V.dim)
    action = tensor(E.A.mult, IV)
    coaction = tensor(psi_inv, IV) @ tensor(E.A.id, V.coaction)
    return E.A.dim * V.dim, action, coaction


def convolution_element(E: Entwining, f: LinearMap) -> ConvolutionElement:
    return ConvolutionElement(E.C, E.A, f)


def doi_hopf_psi_inverse(H: HopfAlgebra, A: FinAlgebra | None = None, rho: LinearMap | None = None,
                         C: FinCoalgebra | None = None, action: LinearMap | None = None) -> LinearMap:
    """a (x) c -> c . S^{-1}(a_(1)) (x) a_(0); needs a bijective antipode."""
    if A is None:
        A, rho = H.algebra, H.coalgebra.comult
    if C is None:
        C, action = H.coalgebra, H.algebra.mult
    f = H.field
    S_inv = invert(H.antipode)
    # a (x) c -> a0 (x) a1 (x) c -> c (x) a1 (x) a0 -> c.S^{-1}(a1) (x) a0
    reorder = permute_factors(f, (A.dim, H.dim, C.dim), (2, 1, 0))
    return tensor(action @ tensor(C.id, S_inv), A.id) @ reorder @ tensor(rho, C.id)
