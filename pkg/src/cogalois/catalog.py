"""Deterministic worked examples.

Basis conventions: group algebras use g^0, ..., g^(n-1); function algebras
the delta functions delta_0, ..., delta_(n-1); Sweedler's H4 uses
{1, g, x, gx}; the matrix coalgebra uses e_ij at index i*n + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .entwining import HopfAlgebra
from .galois import Extension
from .linalg import QQ, Field, LinearMap
from .structures import FinAlgebra, FinCoalgebra, ground_coalgebra, validate


class UnsupportedField(ValueError):
    pass


@dataclass(frozen=True)
class NamedExample:
    name: str
    payload: Any
    note: str = ""


def algebra_from_table(field: Field, n: int, table: dict, unit: dict) -> FinAlgebra:
    """``table[(i, j)]`` is the product e_i e_j as a sparse dict."""
    mult = LinearMap.from_function(field, n * n, n, lambda ij: table.get(divmod(ij, n), {}))
    return FinAlgebra(field, n, mult, LinearMap(field, 1, n, [unit]))


def coalgebra_from_table(field: Field, n: int, delta: dict, counit: dict) -> FinCoalgebra:
    """``delta[k]`` is Delta(e_k) as a sparse dict over pairs (i, j)."""
    comult = LinearMap.from_function(field, n, n * n,
                                     lambda k: {i * n + j: c for (i, j), c in delta.get(k, {}).items()})
    eps = LinearMap.from_function(field, n, 1, lambda k: {0: counit[k]} if counit.get(k) else {})
    return FinCoalgebra(field, n, comult, eps)


def trivial_coalgebra(field: Field = QQ) -> FinCoalgebra:
    return ground_coalgebra(field)


def group_algebra(n: int, field: Field = QQ) -> HopfAlgebra:
    """k Z_n: grouplike basis, g^i g^j = g^(i+j)."""
    one = field.one
    A = algebra_from_table(field, n, {(i, j): {(i + j) % n: one} for i in range(n) for j in range(n)}, {0: one})
    C = coalgebra_from_table(field, n, {k: {(k, k): one} for k in range(n)}, {k: one for k in range(n)})
    S = LinearMap.from_function(field, n, n, lambda k: {(-k) % n: one})
    return HopfAlgebra(A, C, S)


def function_algebra(n: int, field: Field = QQ) -> HopfAlgebra:
    """k^(Z_n): orthogonal idempotents, Delta(delta_a) = sum_b delta_b (x) delta_(a-b)."""
    one = field.one
    A = algebra_from_table(field, n, {(i, i): {i: one} for i in range(n)}, {i: one for i in range(n)})
    C = coalgebra_from_table(field, n, {a: {(b, (a - b) % n): one for b in range(n)} for a in range(n)}, {0: one})
    S = LinearMap.from_function(field, n, n, lambda a: {(-a) % n: one})
    return HopfAlgebra(A, C, S)


def sweedler_h4(field: Field = QQ) -> HopfAlgebra:
    """g^2 = 1, x^2 = 0, xg = -gx; Delta x = x (x) 1 + g (x) x."""
    if field.characteristic == 2:
        raise UnsupportedField("H4 needs characteristic different from 2")
    one, m = field.one, -field.one
    E, G, X, GX = range(4)
    table = {}
    for b in range(4):
        table[(E, b)] = {b: one}
        table[(b, E)] = {b: one}
    table.update({
        (G, G): {E: one}, (G, X): {GX: one}, (G, GX): {X: one},
        (X, G): {GX: m}, (X, X): {}, (X, GX): {},
        (GX, G): {X: m}, (GX, X): {}, (GX, GX): {},
    })
    A = algebra_from_table(field, 4, table, {E: one})
    delta = {
        E: {(E, E): one},
        G: {(G, G): one},
        X: {(X, E): one, (G, X): one},
        GX: {(GX, G): one, (E, GX): one},
    }
    C = coalgebra_from_table(field, 4, delta, {E: one, G: one})
    S = LinearMap.from_function(field, 4, 4, lambda k: [{E: one}, {G: one}, {GX: m}, {X: one}][k])
    return HopfAlgebra(A, C, S)


def matrix_coalgebra(n: int, field: Field = QQ) -> FinCoalgebra:
    """Delta(e_ij) = sum_k e_ik (x) e_kj, eps(e_ij) = delta_ij."""
    one = field.one
    delta = {i * n + j: {(i * n + k, k * n + j): one for k in range(n)} for i in range(n) for j in range(n)}
    return coalgebra_from_table(field, n * n, delta, {i * n + i: one for i in range(n)})


def matrix_algebra(n: int, field: Field = QQ) -> FinAlgebra:
    one = field.one
    table = {(i * n + k, k * n + j): {i * n + j: one} for i in range(n) for k in range(n) for j in range(n)}
    return algebra_from_table(field, n * n, table, {i * n + i: one for i in range(n)})


def regular_extension(H: HopfAlgebra) -> Extension:
    """A = C = H with coaction Delta."""
    return Extension(H.algebra, H.coalgebra, H.coalgebra.comult)


def quotient_group_extension(n: int, m: int, field: Field = QQ) -> Extension:
    """A = k Z_n coacted on by C = k Z_m through Z_n -> Z_m; B = span of g^(m j)."""
    if n % m:
        raise ValueError("m must divide n")
    A = group_algebra(n, field).algebra
    C = group_algebra(m, field).coalgebra
    one = field.one
    rho = LinearMap.from_function(field, n, n * m, lambda i: {i * m + i % m: one})
    return Extension(A, C, rho)


def trivial_coaction_extension(H: HopfAlgebra | None = None) -> Extension:
    """A = C = H with a -> a (x) 1; B = A, not Galois."""
    H = H or group_algebra(2)
    f = H.field
    n = H.dim
    e = H.algebra.one  # the unit is grouplike in every catalog Hopf algebra
    rho = LinearMap.from_function(f, n, n * n, lambda a: {a * n + k: c for k, c in e.items()})
    return Extension(H.algebra, H.coalgebra, rho)


def _field_of(field) -> Field:
    return field if isinstance(field, Field) else Field(int(field))


def construct(name: str, *args, field: Field = QQ) -> NamedExample:
    """Build a catalog entry by name and validate it."""
    field = _field_of(field)
    if name == "trivialCoalgebra":
        ex = NamedExample(name, trivial_coalgebra(field), "k with Delta(1) = 1 (x) 1")
    elif name == "groupAlgebra":
        n = int(args[0]) if args else 2
        ex = NamedExample(f"groupAlgebra({n})", group_algebra(n, field), "group algebra of the cyclic group")
    elif name == "functionAlgebraOnGroup":
        n = int(args[0]) if args else 2
        ex = NamedExample(f"functionAlgebraOnGroup({n})", function_algebra(n, field), "functions on the cyclic group")
    elif name == "sweedlerH4":
        ex = NamedExample(name, sweedler_h4(field), "four-dimensional Sweedler Hopf algebra, basis 1, g, x, gx")
    elif name == "matrixCoalgebra":
        n = int(args[0]) if args else 2
        ex = NamedExample(f"matrixCoalgebra({n})", matrix_coalgebra(n, field), "comatrix coalgebra")
    elif name == "regularGaloisExtension":
        H = args[0] if args and isinstance(args[0], HopfAlgebra) else sweedler_h4(field)
        ex = NamedExample(name, regular_extension(H), "H over itself via the coproduct")
    elif name == "trivialCoactionNonExample":
        ex = NamedExample(name, trivial_coaction_extension(group_algebra(2, field)), "k Z_2 with a -> a (x) e")
    else:
        raise KeyError(f"unknown catalog entry {name!r}")
    _check(ex.payload)
    return ex


def _check(x):
    if isinstance(x, HopfAlgebra):
        return  # validated on construction
    if isinstance(x, Extension):
        for part in (x.A, x.C, x.as_comodule()):
            _check(part)
        return
    v = validate(x)
    if v is not None:
        raise ValueError(f"catalog entry fails validation: {v}")


CATALOG_NAMES = (
    "trivialCoalgebra",
    "groupAlgebra",
    "functionAlgebraOnGroup",
    "sweedlerH4",
    "matrixCoalgebra",
    "regularGaloisExtension",
    "trivialCoactionNonExample",
)


def galois_examples(field: Field = QQ) -> dict[str, Extension]:
    """Galois extensions used across the test-suite."""
    return {
        "kZ2": regular_extension(group_algebra(2, field)),
        "kZ3": regular_extension(group_algebra(3, field)),
        "kZ2dual": regular_extension(function_algebra(2, field)),
        "H4": regular_extension(sweedler_h4(field)),
        "kZ4/Z2": quotient_group_extension(4, 2, field),
    }


# -- interchange --------------------------------------------------------------------------


def serialize(x: NamedExample) -> str:
    """Interchange document holding the payload as object ``x.name`` plus its parts."""
    from .docformat import document_from_structures, print_document

    doc = document_from_structures(x.payload.field, {x.name: x.payload},
                                   meta={"name": x.name, "note": x.note})
    return print_document(doc)


def deserialize(text: str) -> NamedExample:
    from .docformat import ParseError, parse

    doc = parse(text)
    meta = doc.meta or {}
    name = meta.get("name")
    if name not in doc.objects:
        raise ParseError(1, 1, "meta.name must name an object of the document")
    return NamedExample(name, doc.get(name), meta.get("note", ""))
