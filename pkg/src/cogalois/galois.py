"""Coalgebra-Galois extensions.

An :class:`Extension` is an algebra A with a right C-coaction ``rho``.  From
it :func:`galois_data` computes the coinvariant subalgebra B, the balanced
tensor square A (x)_B A as an explicit quotient of A (x) A, the canonical map
``can: A (x)_B A -> A (x) C`` and, when ``can`` is bijective, its inverse and
the translation map.  Everything downstream (canonical entwining, cleaving
maps, gauge transformations, flatness tests) works on these matrices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .entwining import Entwining, EntwinedModule, validate_entwined_module
from .linalg import (
    Echelon,
    LinearMap,
    NotInvertibleError,
    QuotientData,
    Subspace,
    as_sparse,
    hom_space,
    invert,
    kernel_of_stack,
    map_from_vector,
    map_to_vector,
    quotient,
    solve,
    tensor,
    to_dense,
)
from .structures import (
    ConvolutionElement,
    FinAlgebra,
    FinCoalgebra,
    RightComodule,
    Violation,
    compare,
    convolution_invert,
    convolution_unit,
    convolve,
    validate,
)


class NotGalois(ValueError):
    pass


class NotSubalgebra(ValueError):
    pass


class NotFound(LookupError):
    """Budgeted cleaving-map search gave up; this does not prove non-cleftness."""

    def __init__(self, tried: int):
        self.tried = tried
        super().__init__(f"no cleaving map among {tried} candidates")


@dataclass(frozen=True)
class Extension:
    A: FinAlgebra
    C: FinCoalgebra
    coaction: LinearMap  # A -> A (x) C

    def __post_init__(self):
        if self.coaction.shape != (self.A.dim * self.C.dim, self.A.dim):
            raise ValueError("coaction has the wrong shape")

    @property
    def field(self):
        return self.A.field

    def as_comodule(self) -> RightComodule:
        return RightComodule(self.C, self.A.dim, self.coaction)


# -- coinvariants ---------------------------------------------------------------------


def _image_of_one(A: FinAlgebra, rho: LinearMap) -> LinearMap:
    """1_(0) (x) 1_(1) as a map k -> A (x) C."""
    return rho @ A.unit


def times_rho_one(A: FinAlgebra, C: FinCoalgebra, rho: LinearMap) -> LinearMap:
    """a -> a 1_(0) (x) 1_(1)."""
    return tensor(A.mult, C.id) @ tensor(A.id, _image_of_one(A, rho))


def coinvariants(A: FinAlgebra, C: FinCoalgebra, rho: LinearMap) -> Subspace:
    """B = {b : rho(b a) = b a_(0) (x) a_(1) for every a}."""
    n = A.dim
    blocks = []
    for j in range(n):
        a = LinearMap(A.field, 1, n, [{j: A.field.one}])
        rho_a = rho @ a
        lhs = rho @ A.right_mult(a.column(0))
        rhs = tensor(A.mult, C.id) @ tensor(A.id, rho_a)
        blocks.append(lhs - rhs)
    return kernel_of_stack(A.field, n, blocks)


def module_coinvariants(M: EntwinedModule, rho_A: LinearMap) -> Subspace:
    """M_0 = {m : coaction(m) = m . 1_(0) (x) 1_(1)}."""
    A, C = M.over.A, M.over.C
    IM = M.as_module()
    one_rho = _image_of_one(A, rho_A)
    rhs = tensor(IM.action, C.id) @ tensor(LinearMap.identity(A.field, M.dim), one_rho)
    from .linalg import kernel

    return kernel(M.coaction - rhs)


def subalgebra(A: FinAlgebra, B: Subspace) -> FinAlgebra:
    """The algebra structure on a subspace closed under multiplication and containing 1."""
    f = A.field
    if not B.contains(A.unit.column(0)):
        raise NotSubalgebra("1 is not in the subspace")
    d = B.dim
    basis = [as_sparse(b) for b in B.basis]
    cols = []
    for i in range(d):
        for j in range(d):
            prod = A.product(basis[i], basis[j])
            try:
                cols.append(as_sparse(B.coords(to_dense(prod, A.dim, f))))
            except ValueError:
                raise NotSubalgebra(f"product of basis elements {i}, {j} leaves the subspace") from None
    unit = as_sparse(B.coords(A.unit.column(0)))
    return FinAlgebra(f, d, LinearMap(f, d * d, d, cols), LinearMap(f, 1, d, [unit]))


# -- Galois data -------------------------------------------------------------------------


def balanced_relations(A: FinAlgebra, B: Subspace) -> Subspace:
    """span{ a b (x) a' - a (x) b a' } inside A (x) A."""
    n = A.dim
    vectors = []
    for b in B.basis:
        bs = as_sparse(b)
        for i in range(n):
            ab = A.product({i: A.field.one}, bs)
            for j in range(n):
                ba = A.product(bs, {j: A.field.one})
                v: dict = {}
                for p, x in ab.items():
                    v[p * n + j] = v.get(p * n + j, 0) + x
                for q, y in ba.items():
                    v[i * n + q] = v.get(i * n + q, 0) - y
                vectors.append(v)
    return Subspace.span(A.field, n * n, vectors)


@dataclass(frozen=True, eq=False)
class GaloisData:
    A: FinAlgebra
    C: FinCoalgebra
    coaction: LinearMap
    B: Subspace
    B_algebra: FinAlgebra
    quotient: QuotientData  # A (x)_B A
    can_lift: LinearMap  # A (x) A -> A (x) C
    can: LinearMap  # A (x)_B A -> A (x) C
    can_rank: int
    can_inverse: LinearMap | None = None
    translation: LinearMap | None = None  # C -> A (x) A, representatives via the section

    @property
    def is_galois(self) -> bool:
        return self.can_inverse is not None

    @property
    def field(self):
        return self.A.field

    @property
    def extension(self) -> Extension:
        return Extension(self.A, self.C, self.coaction)

    @property
    def embedding(self) -> LinearMap:
        """B -> A."""
        return self.B.inclusion()

    def require_galois(self):
        if not self.is_galois:
            raise NotGalois(f"canonical map has rank {self.can_rank}, "
                            f"domain {self.can.domain}, codomain {self.can.codomain}")


def galois_data(A: FinAlgebra, C: FinCoalgebra, coaction: LinearMap) -> GaloisData:
    """Coinvariants, A (x)_B A, the canonical map and (if bijective) its inverse and the translation map."""
    v = validate(RightComodule(C, A.dim, coaction))
    if v is not None:
        raise ValueError(f"not a comodule: {v}")
    B = coinvariants(A, C, coaction)
    B_alg = subalgebra(A, B)
    n = A.dim
    Q = quotient(n * n, balanced_relations(A, B))
    can_lift = tensor(A.mult, C.id) @ tensor(A.id, coaction)
    if not (can_lift @ Q.relations.inclusion()).is_zero():
        raise ValueError("canonical map is not balanced over B")
    can = can_lift @ Q.section
    rank = can.rank()
    try:
        can_inv = invert(can)
    except NotInvertibleError:
        return GaloisData(A, C, coaction, B, B_alg, Q, can_lift, can, rank)
    tau = Q.section @ can_inv @ tensor(A.unit, C.id)
    return GaloisData(A, C, coaction, B, B_alg, Q, can_lift, can, rank, can_inv, tau)


def build_canonical(ext: Extension) -> GaloisData:
    return galois_data(ext.A, ext.C, ext.coaction)


def translation_identity_violation(g: GaloisData) -> Violation | None:
    """a_(0) a_(1)^[1] (x)_B a_(1)^[2] = 1 (x)_B a for every basis a."""
    g.require_galois()
    A = g.A
    lhs = g.quotient.projection @ tensor(A.mult, A.id) @ tensor(A.id, g.translation) @ g.coaction
    rhs = g.quotient.projection @ tensor(A.unit, A.id)
    return compare("translation identity", lhs, rhs, (A.dim,))


def canonical_entwining(g: GaloisData) -> Entwining:
    """psi = can o (A (x)_B mu) o (tau (x) A)."""
    g.require_galois()
    A = g.A
    psi = g.can_lift @ tensor(A.id, A.mult) @ tensor(g.translation, A.id)
    return Entwining(A, g.C, psi)


def regular_entwined_module(g: GaloisData, E: Entwining | None = None) -> EntwinedModule:
    E = E or canonical_entwining(g)
    return EntwinedModule(E, g.A.dim, g.A.mult, g.coaction)


def coaction_from_psi_violation(g: GaloisData, E: Entwining) -> Violation | None:
    """rho(a) = 1_(0) psi(1_(1) (x) a)."""
    A, C = g.A, g.C
    rhs = tensor(A.mult, C.id) @ tensor(A.id, E.psi) @ tensor(_image_of_one(A, g.coaction), A.id)
    return compare("coaction via psi", g.coaction, rhs, (A.dim,))


# -- colinear maps, cleftness ------------------------------------------------------------


def is_colinear(g: GaloisData, phi: LinearMap) -> bool:
    return g.coaction @ phi == tensor(phi, g.C.id) @ g.C.comult


def colinear_maps(g: GaloisData) -> Subspace:
    """Right C-colinear maps C -> A inside Hom(C, A)."""
    A, C = g.A, g.C
    return hom_space(g.field, C.dim, A.dim, [lambda f: g.coaction @ f - tensor(f, C.id) @ C.comult])


@dataclass(frozen=True, eq=False)
class CleavingMap:
    phi: ConvolutionElement
    phi_inverse: ConvolutionElement


@dataclass(frozen=True, eq=False)
class CleftReport:
    colinear: bool
    invertible: bool
    galois: bool
    entwined: bool | None  # condition (2), via the canonical entwining
    cond3: bool | None
    psi_phi_identity: bool | None
    inverse_formula_matches: bool | None
    phi_inverse: LinearMap | None = None
    to_BC: LinearMap | None = None  # A -> B (x) C
    from_BC: LinearMap | None = None  # B (x) C -> A
    trivialization_verified: bool = False

    @property
    def cleft(self) -> bool:
        return bool(self.colinear and self.invertible and self.galois and self.cond3 and self.trivialization_verified)


def _in_subspace_tensor(S: Subspace, X: LinearMap, right: int) -> LinearMap | None:
    """Express a map into ambient (x) k^right in coordinates S (x) k^right, or None."""
    f = S.field
    P = tensor(S.coordinate_map(), LinearMap.identity(f, right))
    Y = P @ X
    if tensor(S.inclusion(), LinearMap.identity(f, right)) @ Y != X:
        return None
    return Y


def cleft_condition3(g: GaloisData, phi_inv: LinearMap) -> bool:
    """a_(0) Phi^{-1}(a_(1)) lies in B for every a."""
    s = g.A.mult @ tensor(g.A.id, phi_inv) @ g.coaction
    return all(g.B.contains(s.column(j)) for j in range(g.A.dim))


def check_cleft(g: GaloisData, phi: LinearMap) -> CleftReport:
    A, C, Bsp = g.A, g.C, g.B
    colinear = is_colinear(g, phi)
    try:
        phi_inv = convolution_invert(ConvolutionElement(C, A, phi)).map
    except NotInvertibleError:
        return CleftReport(colinear, False, g.is_galois, None, None, None, None)
    cond3 = cleft_condition3(g, phi_inv)
    entwined = psi_identity = formula = None
    if g.is_galois:
        E = canonical_entwining(g)
        entwined = validate_entwined_module(regular_entwined_module(g, E)) is None
        lhs = E.psi @ tensor(C.id, phi_inv) @ C.comult
        rhs = times_rho_one(A, C, g.coaction) @ phi_inv
        psi_identity = lhs == rhs
        # a (x) c -> a Phi^{-1}(c_(1)) (x)_B Phi(c_(2))
        cand = g.quotient.projection @ tensor(A.mult, A.id) @ tensor(A.id, phi_inv, phi) @ tensor(A.id, C.comult)
        formula = cand == g.can_inverse
    to_BC = from_BC = None
    verified = False
    if colinear and cond3:
        raw = tensor(A.mult, C.id) @ tensor(A.id, phi_inv, C.id) @ tensor(A.id, C.comult) @ g.coaction
        to_BC = _in_subspace_tensor(Bsp, raw, C.dim)
        from_BC = A.mult @ tensor(g.embedding, phi)
        if to_BC is not None:
            verified = _trivialization_ok(g, to_BC, from_BC)
    return CleftReport(colinear, True, g.is_galois, entwined, cond3, psi_identity, formula, phi_inv,
                       to_BC, from_BC, verified)


def _trivialization_ok(g: GaloisData, to_BC: LinearMap, from_BC: LinearMap) -> bool:
    """Mutually inverse, left B-linear and right C-colinear."""
    A, C, Balg = g.A, g.C, g.B_algebra
    d, m = Balg.dim, C.dim
    f = g.field
    I_BC = LinearMap.identity(f, d * m)
    if from_BC @ to_BC != A.id or to_BC @ from_BC != I_BC:
        return False
    left_A = A.mult @ tensor(g.embedding, A.id)  # B (x) A -> A
    left_BC = tensor(Balg.mult, C.id)  # B (x) B (x) C -> B (x) C
    if to_BC @ left_A != left_BC @ tensor(Balg.id, to_BC):
        return False
    return tensor(to_BC, C.id) @ g.coaction == tensor(Balg.id, C.comult) @ to_BC


def _candidates(d: int, max_height: int):
    """Nonzero integer vectors ordered by height, then support size, then support, then values."""
    for h in range(1, max_height + 1):
        values = []
        for k in range(1, h + 1):
            values += [k, -k]
        for size in range(1, d + 1):
            for support in itertools.combinations(range(d), size):
                for vals in itertools.product(values, repeat=size):
                    if max(abs(v) for v in vals) != h:
                        continue
                    vec = [0] * d
                    for pos, v in zip(support, vals):
                        vec[pos] = v
                    yield vec


def find_cleaving_map(g: GaloisData, budget: int = 1000, seed: int | None = None, max_height: int = 3) -> CleavingMap:
    """Search the colinear maps C -> A for a convolution-invertible one.

    Candidates are small integer combinations of the RREF basis of the
    colinear subspace, enumerated deterministically (or drawn from a seeded
    RNG when ``seed`` is given).  Raises :class:`NotFound` after ``budget``
    candidates; that is not a proof of non-cleftness.
    """
    g.require_galois()
    A, C = g.A, g.C
    space = colinear_maps(g)
    d = space.dim
    if d == 0 or budget <= 0:
        raise NotFound(0)
    if seed is None:
        source = _candidates(d, max_height)
    else:
        rng = random.Random(seed)
        source = ([rng.randint(-max_height, max_height) for _ in range(d)] for _ in itertools.count())
    tried = 0
    incl = space.inclusion()
    for coeffs in source:
        if tried >= budget:
            break
        if not any(coeffs):
            continue
        tried += 1
        vec = incl(tuple(g.field(c) for c in coeffs))
        phi = map_from_vector(g.field, vec, C.dim, A.dim)
        el = ConvolutionElement(C, A, phi)
        try:
            inv = convolution_invert(el)
        except NotInvertibleError:
            continue
        return CleavingMap(el, inv)
    raise NotFound(tried)


# -- gauge group --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GaugeGroup:
    galois: GaloisData
    entwining: Entwining
    subspace: Subspace  # maps C -> A satisfying the ad-covariance condition

    def is_member(self, f: LinearMap) -> bool:
        return self.subspace.contains(map_to_vector(f))

    def element(self, vec) -> LinearMap:
        return map_from_vector(self.galois.field, vec, self.galois.C.dim, self.galois.A.dim)

    def pi_map(self, f: LinearMap) -> LinearMap:
        """a -> a_(0) f(a_(1))."""
        A = self.galois.A
        return A.mult @ tensor(A.id, f) @ self.galois.coaction

    def is_left_B_linear(self, F: LinearMap) -> bool:
        A = self.galois.A
        emb = self.galois.embedding
        return F @ A.mult @ tensor(emb, A.id) == A.mult @ tensor(emb, F)

    def is_right_colinear(self, F: LinearMap) -> bool:
        g = self.galois
        return g.coaction @ F == tensor(F, g.C.id) @ g.coaction


def ad_covariance_defect(E: Entwining, f: LinearMap) -> LinearMap:
    C = E.C
    return E.psi @ tensor(C.id, f) @ C.comult - tensor(f, C.id) @ C.comult


def gauge_group(g: GaloisData) -> GaugeGroup:
    g.require_galois()
    E = canonical_entwining(g)
    space = hom_space(g.field, g.C.dim, g.A.dim, [lambda f: ad_covariance_defect(E, f)])
    return GaugeGroup(g, E, space)


# -- faithful flatness ----------------------------------------------------------------------


@dataclass(frozen=True)
class FlatnessReport:
    projective: bool
    generator: bool

    @property
    def faithfully_flat(self) -> bool:
        return self.projective and self.generator


@dataclass(frozen=True, eq=False)
class PropIntReport:
    unit_condition: bool
    psi_condition: bool
    commutation: bool

    @property
    def holds(self) -> bool:
        return self.unit_condition and self.psi_condition


def left_B_action(g: GaloisData) -> LinearMap:
    """B (x) A -> A."""
    return g.A.mult @ tensor(g.embedding, g.A.id)


def solve_constrained_map(field, dom: int, cod: int, constraints, affine, target: LinearMap) -> LinearMap | None:
    """A map f in the common kernel of ``constraints`` with ``affine(f) == target``, or None."""
    space = hom_space(field, dom, cod, constraints)
    if space.dim == 0:
        return None if not target.is_zero() else LinearMap.zero(field, dom, cod)
    cols = []
    for b in space.basis:
        cols.append(as_sparse(map_to_vector(affine(map_from_vector(field, b, dom, cod)))))
    tv = map_to_vector(target)
    system = LinearMap(field, space.dim, len(tv), cols)
    x = solve(system, tv)
    if x is None:
        return None
    return map_from_vector(field, space.inclusion()(x), dom, cod)


def is_projective_over_B(g: GaloisData) -> bool:
    """Does B (x) A -> A, b (x) a -> b a split as left B-modules?"""
    A, Balg = g.A, g.B_algebra
    n, d = A.dim, Balg.dim
    lam = left_B_action(g)
    free_action = tensor(Balg.mult, A.id)  # B (x) (B (x) k^n) -> B (x) k^n
    s = solve_constrained_map(
        g.field, n, d * n,
        [lambda s: s @ lam - free_action @ tensor(Balg.id, s)],
        lambda s: lam @ s,
        A.id,
    )
    return s is not None


def left_B_homs_to_B(g: GaloisData) -> Subspace:
    """Hom_{B-}(A, B) inside Hom(A, B)."""
    Balg = g.B_algebra
    lam = left_B_action(g)
    return hom_space(g.field, g.A.dim, Balg.dim, [lambda h: h @ lam - Balg.mult @ tensor(Balg.id, h)])


def is_generator_over_B(g: GaloisData) -> bool:
    """Trace ideal of A (as a left B-module) equals B."""
    Balg = g.B_algebra
    space = left_B_homs_to_B(g)
    images = []
    for b in space.basis:
        h = map_from_vector(g.field, b, g.A.dim, Balg.dim)
        images.extend(h.cols)
    return Subspace.span(g.field, Balg.dim, images).dim == Balg.dim


def flatness(g: GaloisData) -> FlatnessReport:
    return FlatnessReport(is_projective_over_B(g), is_generator_over_B(g))


def prop_int_hypotheses(g: GaloisData, phi: LinearMap, E: Entwining | None = None) -> PropIntReport:
    """1_(0) phi(1_(1)) = 1, psi(c_(1) (x) phi(c_(2))) = phi(c) 1_(0) (x) 1_(1), and b_a phi(c^a) = phi(c) b."""
    A, C = g.A, g.C
    E = E or canonical_entwining(g)
    unit_cond = A.mult @ tensor(A.id, phi) @ g.coaction @ A.unit == A.unit
    psi_cond = E.psi @ tensor(C.id, phi) @ C.comult == times_rho_one(A, C, g.coaction) @ phi
    emb = g.embedding
    commute = A.mult @ tensor(A.id, phi) @ E.psi @ tensor(C.id, emb) == A.mult @ tensor(phi, emb)
    return PropIntReport(unit_cond, psi_cond, commute)


@dataclass(frozen=True, eq=False)
class BimoduleSectionReport:
    unital: bool
    left_linear: bool
    right_linear: bool
    phi: LinearMap | None = None
    hypotheses: PropIntReport | None = None
    faithfully_flat: bool | None = None

    @property
    def valid_section(self) -> bool:
        return self.unital and self.left_linear and self.right_linear


def bimodule_section_checks(g: GaloisData, s: LinearMap) -> tuple[bool, bool, bool]:
    """s: A -> B (in B coordinates) unital, left and right B-linear."""
    A, Balg, emb = g.A, g.B_algebra, g.embedding
    unital = s @ A.unit == Balg.unit
    left = s @ A.mult @ tensor(emb, A.id) == Balg.mult @ tensor(Balg.id, s)
    right = s @ A.mult @ tensor(A.id, emb) == Balg.mult @ tensor(s, Balg.id)
    return unital, left, right


def section_to_phi(g: GaloisData, s: LinearMap) -> LinearMap:
    """c -> c^[1] s(c^[2]) using the translation map (well defined for left B-linear s)."""
    g.require_galois()
    A = g.A
    return A.mult @ tensor(A.id, g.embedding @ s) @ g.translation


def check_bimodule_section(g: GaloisData, s: LinearMap) -> BimoduleSectionReport:
    unital, left, right = bimodule_section_checks(g, s)
    if not (unital and left and right):
        return BimoduleSectionReport(unital, left, right)
    phi = section_to_phi(g, s)
    hyp = prop_int_hypotheses(g, phi)
    return BimoduleSectionReport(unital, left, right, phi, hyp, hyp.holds and hyp.commutation)


@dataclass(frozen=True, eq=False)
class FlatnessToolkit:
    galois: GaloisData

    @property
    def report(self) -> FlatnessReport:
        return flatness(self.galois)

    @property
    def is_projective_over_B(self) -> bool:
        return is_projective_over_B(self.galois)

    @property
    def is_generator(self) -> bool:
        return is_generator_over_B(self.galois)

    def check_prop_int_hypotheses(self, phi: LinearMap) -> PropIntReport:
        return prop_int_hypotheses(self.galois, phi)

    def check_bimodule_section(self, s: LinearMap) -> BimoduleSectionReport:
        return check_bimodule_section(self.galois, s)


def faithful_flatness_toolkit(g: GaloisData) -> FlatnessToolkit:
    return FlatnessToolkit(g)
