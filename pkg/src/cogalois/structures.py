"""Algebras, coalgebras, modules and comodules given by structure constants.

An algebra of dimension n carries ``mult: n*n -> n`` and ``unit: 1 -> n``;
a coalgebra of dimension m carries ``comult: m -> m*m`` and ``counit: m -> 1``.
All structure maps are :class:`~cogalois.linalg.LinearMap` instances, so
axioms are checked as exact matrix identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .linalg import (
    Field,
    FieldMismatchError,
    LinearMap,
    NotInvertibleError,
    identity,
    invert,
    map_from_vector,
    map_to_vector,
    tensor,
    unflatten,
)


@dataclass(frozen=True)
class Violation:
    """First failing instance of an axiom.

    ``witness`` is the basis index tuple of the input where the two sides
    first differ (lexicographic order), ``row`` the output coordinate, and
    ``lhs``/``rhs`` the two values there.
    """

    axiom: str
    witness: tuple
    row: int
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.axiom} fails at {self.witness} (output {self.row}): {self.lhs} != {self.rhs}"


def compare(axiom: str, lhs: LinearMap, rhs: LinearMap, dims: tuple[int, ...]) -> Violation | None:
    """Compare two maps; report the lexicographically first differing input tuple."""
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    j, i = diff
    return Violation(axiom, unflatten(j, dims), i, lhs.entry(i, j), rhs.entry(i, j))


def first_violation(*checks) -> Violation | None:
    for check in checks:
        v = check()
        if v is not None:
            return v
    return None


def _same_field(*objs):
    fields = {o.field for o in objs}
    if len(fields) > 1:
        raise FieldMismatchError(f"mixed fields: {sorted(map(str, fields))}")


@dataclass(frozen=True)
class FinAlgebra:
    field: Field
    dim: int
    mult: LinearMap
    unit: LinearMap

    def __post_init__(self):
        n = self.dim
        if self.mult.shape != (n, n * n):
            raise ValueError(f"multiplication must be {n}x{n * n}, got {self.mult.shape}")
        if self.unit.shape != (n, 1):
            raise ValueError(f"unit must be {n}x1, got {self.unit.shape}")
        _same_field(self, self.mult, self.unit)

    @property
    def id(self) -> LinearMap:
        return identity(self.field, self.dim)

    @property
    def one(self) -> dict:
        return dict(self.unit.cols[0])

    def left_mult(self, a) -> LinearMap:
        """x -> a x."""
        return self.mult @ tensor(LinearMap.from_vector(self.field, _dense(a, self)), self.id)

    def right_mult(self, a) -> LinearMap:
        """x -> x a."""
        return self.mult @ tensor(self.id, LinearMap.from_vector(self.field, _dense(a, self)))

    def product(self, a: dict, b: dict) -> dict:
        """Product of two sparse elements."""
        out: dict = {}
        n = self.dim
        for i, x in a.items():
            for j, y in b.items():
                for k, v in self.mult.cols[i * n + j].items():
                    out[k] = out.get(k, 0) + x * y * v
        return {k: v for k, v in out.items() if v}


def _dense(a, alg) -> tuple:
    if isinstance(a, dict):
        z = alg.field.zero
        return tuple(a.get(i, z) for i in range(alg.dim))
    return tuple(a)


@dataclass(frozen=True)
class FinCoalgebra:
    field: Field
    dim: int
    comult: LinearMap
    counit: LinearMap

    def __post_init__(self):
        m = self.dim
        if self.comult.shape != (m * m, m):
            raise ValueError(f"comultiplication must be {m * m}x{m}, got {self.comult.shape}")
        if self.counit.shape != (1, m):
            raise ValueError(f"counit must be 1x{m}, got {self.counit.shape}")
        _same_field(self, self.comult, self.counit)

    @property
    def id(self) -> LinearMap:
        return identity(self.field, self.dim)


@dataclass(frozen=True)
class RightModule:
    over: FinAlgebra
    dim: int
    action: LinearMap  # M (x) A -> M

    def __post_init__(self):
        if self.action.shape != (self.dim, self.dim * self.over.dim):
            raise ValueError(f"right action must be {self.dim}x{self.dim * self.over.dim}")
        _same_field(self.over, self.action)

    @property
    def field(self) -> Field:
        return self.over.field


@dataclass(frozen=True)
class LeftModule:
    over: FinAlgebra
    dim: int
    action: LinearMap  # A (x) M -> M

    def __post_init__(self):
        if self.action.shape != (self.dim, self.over.dim * self.dim):
            raise ValueError(f"left action must be {self.dim}x{self.over.dim * self.dim}")
        _same_field(self.over, self.action)

    @property
    def field(self) -> Field:
        return self.over.field


@dataclass(frozen=True)
class RightComodule:
    over: FinCoalgebra
    dim: int
    coaction: LinearMap  # V -> V (x) C

    def __post_init__(self):
        if self.coaction.shape != (self.dim * self.over.dim, self.dim):
            raise ValueError(f"right coaction must be {self.dim * self.over.dim}x{self.dim}")
        _same_field(self.over, self.coaction)

    @property
    def field(self) -> Field:
        return self.over.field


@dataclass(frozen=True)
class LeftComodule:
    over: FinCoalgebra
    dim: int
    coaction: LinearMap  # V -> C (x) V

    def __post_init__(self):
        if self.coaction.shape != (self.over.dim * self.dim, self.dim):
            raise ValueError(f"left coaction must be {self.over.dim * self.dim}x{self.dim}")
        _same_field(self.over, self.coaction)

    @property
    def field(self) -> Field:
        return self.over.field


Structure = Union[FinAlgebra, FinCoalgebra, RightModule, LeftModule, RightComodule, LeftComodule]


# -- standard objects -----------------------------------------------------------


def ground_algebra(field: Field) -> FinAlgebra:
    """k as an algebra."""
    one = field.one
    return FinAlgebra(field, 1, LinearMap(field, 1, 1, [{0: one}]), LinearMap(field, 1, 1, [{0: one}]))


def ground_coalgebra(field: Field) -> FinCoalgebra:
    """k as a coalgebra."""
    one = field.one
    return FinCoalgebra(field, 1, LinearMap(field, 1, 1, [{0: one}]), LinearMap(field, 1, 1, [{0: one}]))


def regular_right_module(A: FinAlgebra) -> RightModule:
    return RightModule(A, A.dim, A.mult)


def regular_left_module(A: FinAlgebra) -> LeftModule:
    return LeftModule(A, A.dim, A.mult)


def regular_right_comodule(C: FinCoalgebra) -> RightComodule:
    return RightComodule(C, C.dim, C.comult)


def regular_left_comodule(C: FinCoalgebra) -> LeftComodule:
    return LeftComodule(C, C.dim, C.comult)


def trivial_right_comodule(C: FinCoalgebra, grouplike, dim: int = 1) -> RightComodule:
    """k^dim with v -> v (x) g for a grouplike g."""
    g = LinearMap.from_vector(C.field, grouplike)
    return RightComodule(C, dim, tensor(identity(C.field, dim), g))


def trivial_left_comodule(C: FinCoalgebra, grouplike, dim: int = 1) -> LeftComodule:
    g = LinearMap.from_vector(C.field, grouplike)
    return LeftComodule(C, dim, tensor(g, identity(C.field, dim)))


# -- axioms -----------------------------------------------------------------------


def validate(x: Structure) -> Violation | None:
    """Check every axiom of ``x``; None means all hold."""
    if isinstance(x, FinAlgebra):
        return _validate_algebra(x)
    if isinstance(x, FinCoalgebra):
        return _validate_coalgebra(x)
    if isinstance(x, RightModule):
        return _validate_right_module(x)
    if isinstance(x, LeftModule):
        return _validate_left_module(x)
    if isinstance(x, RightComodule):
        return _validate_right_comodule(x)
    if isinstance(x, LeftComodule):
        return _validate_left_comodule(x)
    raise TypeError(f"cannot validate {type(x).__name__}")


def _validate_algebra(A: FinAlgebra) -> Violation | None:
    n, mu, eta, I = A.dim, A.mult, A.unit, A.id
    return first_violation(
        lambda: compare("associativity", mu @ tensor(mu, I), mu @ tensor(I, mu), (n, n, n)),
        lambda: compare("left unitality", mu @ tensor(eta, I), I, (n,)),
        lambda: compare("right unitality", mu @ tensor(I, eta), I, (n,)),
    )


def _validate_coalgebra(C: FinCoalgebra) -> Violation | None:
    m, d, e, I = C.dim, C.comult, C.counit, C.id
    return first_violation(
        lambda: compare("coassociativity", tensor(d, I) @ d, tensor(I, d) @ d, (m,)),
        lambda: compare("left counitality", tensor(e, I) @ d, I, (m,)),
        lambda: compare("right counitality", tensor(I, e) @ d, I, (m,)),
    )


def _validate_right_module(M: RightModule) -> Violation | None:
    A, act = M.over, M.action
    IM = identity(M.field, M.dim)
    return first_violation(
        lambda: validate(A),
        lambda: compare("action associativity", act @ tensor(act, A.id), act @ tensor(IM, A.mult), (M.dim, A.dim, A.dim)),
        lambda: compare("action unitality", act @ tensor(IM, A.unit), IM, (M.dim,)),
    )


def _validate_left_module(M: LeftModule) -> Violation | None:
    A, act = M.over, M.action
    IM = identity(M.field, M.dim)
    return first_violation(
        lambda: validate(A),
        lambda: compare("action associativity", act @ tensor(A.id, act), act @ tensor(A.mult, IM), (A.dim, A.dim, M.dim)),
        lambda: compare("action unitality", act @ tensor(A.unit, IM), IM, (M.dim,)),
    )


def _validate_right_comodule(V: RightComodule) -> Violation | None:
    C, rho = V.over, V.coaction
    IV = identity(V.field, V.dim)
    return first_violation(
        lambda: validate(C),
        lambda: compare("coaction coassociativity", tensor(rho, C.id) @ rho, tensor(IV, C.comult) @ rho, (V.dim,)),
        lambda: compare("coaction counitality", tensor(IV, C.counit) @ rho, IV, (V.dim,)),
    )


def _validate_left_comodule(V: LeftComodule) -> Violation | None:
    C, lam = V.over, V.coaction
    IV = identity(V.field, V.dim)
    return first_violation(
        lambda: validate(C),
        lambda: compare("coaction coassociativity", tensor(C.id, lam) @ lam, tensor(C.comult, IV) @ lam, (V.dim,)),
        lambda: compare("coaction counitality", tensor(C.counit, IV) @ lam, IV, (V.dim,)),
    )


# -- duality --------------------------------------------------------------------


def dualize(x):
    """Finite-dimensional linear dual: transpose every structure map.

    Algebras and coalgebras swap, right (left) modules over A become right
    (left) comodules over the dual coalgebra on the dual space, and back.
    Applying it twice returns the original structure constants.
    """
    if isinstance(x, FinAlgebra):
        return FinCoalgebra(x.field, x.dim, x.mult.T, x.unit.T)
    if isinstance(x, FinCoalgebra):
        return FinAlgebra(x.field, x.dim, x.comult.T, x.counit.T)
    if isinstance(x, RightModule):
        return RightComodule(dualize(x.over), x.dim, x.action.T)
    if isinstance(x, LeftModule):
        return LeftComodule(dualize(x.over), x.dim, x.action.T)
    if isinstance(x, RightComodule):
        return RightModule(dualize(x.over), x.dim, x.coaction.T)
    if isinstance(x, LeftComodule):
        return LeftModule(dualize(x.over), x.dim, x.coaction.T)
    dual = getattr(x, "dual", None)
    if dual is not None:
        return dual()
    raise TypeError(f"cannot dualize {type(x).__name__}")


def dual_comodule(V):
    """V* with the coaction determined by the evaluation pairing.

    For a left comodule the right coaction on V* satisfies
    <v*_(0), v> v*_(1) = v_(-1) <v*, v_(0)>, which in coordinates is a
    partial transpose of the coaction matrix in the V indices.
    """
    C = V.over
    m, d = C.dim, V.dim
    cols: list[dict] = [{} for _ in range(d)]
    if isinstance(V, LeftComodule):
        # coaction[(k, i), j]  ->  dual[(j, k), i]
        for j, col in enumerate(V.coaction.cols):
            for flat, val in col.items():
                k, i = divmod(flat, d)
                cols[i][j * m + k] = val
        return RightComodule(C, d, LinearMap(V.field, d, d * m, cols))
    if isinstance(V, RightComodule):
        # coaction[(j, k), i]  ->  dual[(k, i), j]
        for i, col in enumerate(V.coaction.cols):
            for flat, val in col.items():
                j, k = divmod(flat, m)
                cols[j][k * d + i] = val
        return LeftComodule(C, d, LinearMap(V.field, d, m * d, cols))
    raise TypeError("dual_comodule expects a comodule")


# -- convolution ------------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionElement:
    source: FinCoalgebra
    target: FinAlgebra
    map: LinearMap  # C -> A

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise ValueError("convolution element has the wrong shape")
        _same_field(self.source, self.target, self.map)

    def __mul__(self, other: "ConvolutionElement") -> "ConvolutionElement":
        return convolve(self, other)


def convolve(f: ConvolutionElement, g: ConvolutionElement) -> ConvolutionElement:
    """(f*g)(c) = f(c_(1)) g(c_(2))."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("convolution of maps between different (co)algebras")
    A, C = f.target, f.source
    return ConvolutionElement(C, A, A.mult @ tensor(f.map, g.map) @ C.comult)


def convolve_maps(C: FinCoalgebra, A: FinAlgebra, f: LinearMap, g: LinearMap) -> LinearMap:
    return A.mult @ tensor(f, g) @ C.comult


def convolution_unit(C: FinCoalgebra, A: FinAlgebra) -> ConvolutionElement:
    return ConvolutionElement(C, A, A.unit @ C.counit)


def left_convolution_operator(f: ConvolutionElement) -> LinearMap:
    """g -> f*g on Hom(C, A), in the ``i * dim C + j`` encoding."""
    A, C = f.target, f.source
    n, m = A.dim, C.dim
    one = A.field.one
    left = A.mult @ tensor(f.map, identity(A.field, n))
    cols = []
    for idx in range(n * m):
        i, j = divmod(idx, m)
        E = LinearMap(A.field, m, n, [{i: one} if jj == j else {} for jj in range(m)])
        cols.append(dict(enumerate(map_to_vector(left @ tensor(identity(A.field, m), E) @ C.comult))))
    return LinearMap(A.field, n * m, n * m, cols)


def convolution_invert(f: ConvolutionElement) -> ConvolutionElement:
    """Convolution inverse via the left multiplication operator.

    Raises NotInvertibleError carrying the rank of that operator.
    """
    A, C = f.target, f.source
    L = left_convolution_operator(f)
    try:
        Linv = invert(L)
    except NotInvertibleError as exc:
        raise NotInvertibleError(exc.rank, f"not convolution invertible (operator rank {exc.rank} < {L.domain})") from None
    unit = convolution_unit(C, A).map
    g = Linv(map_to_vector(unit))
    return ConvolutionElement(C, A, map_from_vector(A.field, g, C.dim, A.dim))


def is_convolution_invertible(f: ConvolutionElement) -> bool:
    L = left_convolution_operator(f)
    return L.rank() == L.domain
