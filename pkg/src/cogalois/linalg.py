"""Exact linear algebra over the rationals and prime fields.

Every vector space here is a coordinate space k^n.  Tensor products use a
single index convention throughout the package: basis vector (i, j) of
V (x) W has flat index ``i * dim(W) + j`` (left factor major).  Iterated
tensor products flatten the same way, so the flattening is associative.

Linear maps are stored column-wise and sparsely: column ``j`` is a dict
``{row: value}`` holding the image of basis vector ``e_j``.  Structure
constants are naturally given in this form, and composition of very sparse
maps (identities tensored with small maps) stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence


class FieldMismatchError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a singular map.

    ``rank`` is the witness.
    """

    def __init__(self, rank: int, message: str = ""):
        self.rank = rank
        super().__init__(message or f"map is not invertible (rank {rank})")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of Z/pZ, stored as its canonical representative 0..p-1."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, Residue or string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, Residue):
                raise FieldMismatchError("residue given where a rational was expected")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) element given for GF({self.p})")
            return x
        if isinstance(x, Fraction):
            return Residue(x.numerator, self.p) / Residue(x.denominator, self.p)
        return Residue(int(x), self.p)

    def parse(self, text: str):
        text = text.strip()
        if self.p == 0:
            if "/" in text:
                num, den = text.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = Fraction(int(text))
            return value
        if "/" in text:
            raise ValueError(f"residues are written as integers, got {text!r}")
        return Residue(int(text), self.p)

    def format(self, x) -> str:
        if self.p == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(self(x).value)

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _clean(col: Mapping[int, object]) -> dict:
    return {i: v for i, v in col.items() if v}


class LinearMap:
    """A matrix between coordinate spaces, stored by sparse columns."""

    __slots__ = ("field", "domain", "codomain", "cols")

    def __init__(self, field: Field, domain: int, codomain: int, cols: Sequence[Mapping[int, object]]):
        if len(cols) != domain:
            raise ValueError(f"expected {domain} columns, got {len(cols)}")
        for col in cols:
            for i in col:
                if not 0 <= i < codomain:
                    raise IndexError(f"row index {i} outside codomain of dimension {codomain}")
        self.field = field
        self.domain = domain
        self.codomain = codomain
        self.cols = tuple(_clean(c) for c in cols)

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], domain: int | None = None) -> "LinearMap":
        codomain = len(rows)
        if domain is None:
            domain = len(rows[0]) if rows else 0
        cols: list[dict] = [{} for _ in range(domain)]
        for i, row in enumerate(rows):
            if len(row) != domain:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                v = field(v)
                if v:
                    cols[j][i] = v
        return cls(field, domain, codomain, cols)

    @classmethod
    def from_function(cls, field: Field, domain: int, codomain: int, fn: Callable[[int], Mapping[int, object]]) -> "LinearMap":
        """Build the map whose column ``j`` is ``fn(j)`` (a sparse vector)."""
        return cls(field, domain, codomain, [fn(j) for j in range(domain)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearMap":
        one = field.one
        return cls(field, n, n, [{j: one} for j in range(n)])

    @classmethod
    def zero(cls, field: Field, domain: int, codomain: int) -> "LinearMap":
        return cls(field, domain, codomain, [{} for _ in range(domain)])

    @classmethod
    def from_vector(cls, field: Field, vec) -> "LinearMap":
        """The map k -> V sending 1 to ``vec``."""
        col = as_sparse(vec)
        n = len(vec) if not isinstance(vec, Mapping) else None
        if n is None:
            raise ValueError("dense vector required")
        return cls(field, 1, n, [col])

    @classmethod
    def covector(cls, field: Field, vec) -> "LinearMap":
        """The map V -> k whose row is ``vec``."""
        return cls(field, len(vec), 1, [{0: v} if v else {} for v in vec])

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.codomain, self.domain)

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, self.field.zero)

    def to_rows(self) -> list[list]:
        rows = [[self.field.zero] * self.domain for _ in range(self.codomain)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.codomain)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def column(self, j: int) -> tuple:
        return to_dense(self.cols[j], self.codomain, self.field)

    def nonzero(self) -> Iterable[tuple[int, int, object]]:
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                yield i, j, col[i]

    def is_zero(self) -> bool:
        return not any(self.cols)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "LinearMap"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition: ``(f @ g)(x) = f(g(x))``."""
        self._check(other)
        if self.domain != other.codomain:
            raise ValueError(f"cannot compose {self.shape} after {other.shape}")
        mine = self.cols
        out = []
        for gcol in other.cols:
            acc: dict = {}
            for k, gv in gcol.items():
                for i, fv in mine[k].items():
                    acc[i] = acc.get(i, 0) + fv * gv
            out.append(acc)
        return LinearMap(self.field, other.domain, self.codomain, out)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self.cols, other.cols):
            acc = dict(a)
            for i, v in b.items():
                acc[i] = acc.get(i, 0) + v
            out.append(acc)
        return LinearMap(self.field, self.domain, self.codomain, out)

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.field, self.domain, self.codomain, [{i: -v for i, v in c.items()} for c in self.cols])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def scale(self, c) -> "LinearMap":
        c = self.field(c)
        return LinearMap(self.field, self.domain, self.codomain, [{i: c * v for i, v in col.items()} for col in self.cols])

    __rmul__ = scale

    def __call__(self, vec):
        """Apply to a dense tuple (returns a tuple) or sparse dict (returns a dict)."""
        if isinstance(vec, Mapping):
            acc: dict = {}
            for j, x in vec.items():
                for i, v in self.cols[j].items():
                    acc[i] = acc.get(i, 0) + v * x
            return _clean(acc)
        if len(vec) != self.domain:
            raise ValueError(f"vector of length {len(vec)} for domain {self.domain}")
        return to_dense(self(as_sparse(vec)), self.codomain, self.field)

    def transpose(self) -> "LinearMap":
        return LinearMap(self.field, self.codomain, self.domain, self.row_dicts())

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.field == other.field
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.cols == other.cols
        )

    __hash__ = None

    def __repr__(self):
        return f"LinearMap({self.codomain}x{self.domain} over {self.field}, nnz={sum(map(len, self.cols))})"

    def rank(self) -> int:
        ech = Echelon(self.field, self.domain)
        for row in self.row_dicts():
            ech.add(row)
        return ech.rank

    def first_difference(self, other: "LinearMap"):
        """Smallest (column, row) where the two maps differ, or None."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                rows = sorted(set(a) | set(b))
                for i in rows:
                    if a.get(i, 0) != b.get(i, 0):
                        return j, i
        return None


def as_sparse(vec) -> dict:
    if isinstance(vec, Mapping):
        return _clean(vec)
    return {i: v for i, v in enumerate(vec) if v}


def to_dense(vec: Mapping, n: int, field: Field) -> tuple:
    z = field.zero
    return tuple(vec.get(i, z) for i in range(n))


def identity(field: Field, n: int) -> LinearMap:
    return LinearMap.identity(field, n)


def tensor_product(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product ``f (x) g`` in the left-factor-major convention."""
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field} vs {g.field}")
    gd = g.codomain
    cols = []
    for fcol in f.cols:
        for gcol in g.cols:
            cols.append({i * gd + k: a * b for i, a in fcol.items() for k, b in gcol.items()})
    return LinearMap(f.field, f.domain * g.domain, f.codomain * g.codomain, cols)


def tensor(*maps: LinearMap) -> LinearMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_product(out, m)
    return out


def compose(*maps: LinearMap) -> LinearMap:
    """``compose(f, g, h) = f @ g @ h``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


def twist(field: Field, m: int, n: int) -> LinearMap:
    """The flip V (x) W -> W (x) V with dim V = m, dim W = n."""
    one = field.one
    return LinearMap(field, m * n, n * m, [{j * m + i: one} for i in range(m) for j in range(n)])


def permute_factors(field: Field, dims: Sequence[int], order: Sequence[int]) -> LinearMap:
    """Reorder tensor factors: output factor ``k`` is input factor ``order[k]``."""
    dims = list(dims)
    n = len(dims)
    out_dims = [dims[o] for o in order]
    total = 1
    for d in dims:
        total *= d
    one = field.one
    cols = []
    for flat in range(total):
        idx = []
        r = flat
        for d in reversed(dims):
            idx.append(r % d)
            r //= d
        idx.reverse()
        out = 0
        for k in range(n):
            out = out * out_dims[k] + idx[order[k]]
        cols.append({out: one})
    return LinearMap(field, total, total, cols)


def flat_index(idx: Sequence[int], dims: Sequence[int]) -> int:
    out = 0
    for i, d in zip(idx, dims):
        out = out * d + i
    return out


def unflatten(flat: int, dims: Sequence[int]) -> tuple[int, ...]:
    idx = []
    for d in reversed(dims):
        idx.append(flat % d)
        flat //= d
    return tuple(reversed(idx))


# -- row reduction -----------------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row-echelon form.

    Rows are sparse dicts.  Every stored row has a leading 1 at its pivot and
    zeros at every other pivot column, so the RREF of the rows added so far is
    available at any time and does not depend on insertion order.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivot_rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Mapping) -> dict:
        row = _clean(row)
        hits = [c for c in row if c in self.pivot_rows]
        for c in hits:
            coef = row.get(c)
            if not coef:
                continue
            for k, v in self.pivot_rows[c].items():
                row[k] = row.get(k, 0) - coef * v
            row = _clean(row)
        return row

    def add(self, row: Mapping) -> bool:
        """Add a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p] if self.field.is_rational else row[p].inverse()
        row = {k: v * inv for k, v in row.items()}
        for c, other in self.pivot_rows.items():
            coef = other.get(p)
            if coef:
                for k, v in row.items():
                    other[k] = other.get(k, 0) - coef * v
                self.pivot_rows[c] = _clean(other)
        self.pivot_rows[p] = row
        return True

    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)

    def rows(self) -> list[dict]:
        return [self.pivot_rows[p] for p in self.pivots()]


def rref(field: Field, rows: Iterable[Mapping], ncols: int) -> tuple[list[dict], list[int]]:
    ech = Echelon(field, ncols)
    for r in rows:
        ech.add(r)
    return ech.rows(), ech.pivots()


# -- subspaces and quotients ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^ambient given by its unique RREF basis."""

    field: Field
    ambient: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable) -> "Subspace":
        ech = Echelon(field, ambient)
        for v in vectors:
            ech.add(as_sparse(v))
        return cls._from_echelon(ech)

    @classmethod
    def _from_echelon(cls, ech: Echelon) -> "Subspace":
        piv = ech.pivots()
        basis = tuple(to_dense(ech.pivot_rows[p], ech.ncols, ech.field) for p in piv)
        return cls(ech.field, ech.ncols, basis, tuple(piv))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls.span(field, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient} over {self.field})"

    def _echelon(self) -> Echelon:
        ech = Echelon(self.field, self.ambient)
        for p, b in zip(self.pivots, self.basis):
            ech.pivot_rows[p] = as_sparse(b)
        return ech

    def contains(self, vec) -> bool:
        return not self._echelon().reduce(as_sparse(vec))

    __contains__ = contains

    def coords(self, vec) -> tuple:
        """Coordinates of a member in the RREF basis (the values at the pivots)."""
        v = as_sparse(vec)
        if self._echelon().reduce(v):
            raise ValueError("vector is not in the subspace")
        z = self.field.zero
        return tuple(v.get(p, z) for p in self.pivots)

    def inclusion(self) -> LinearMap:
        return LinearMap(self.field, self.dim, self.ambient, [as_sparse(b) for b in self.basis])

    def coordinate_map(self) -> LinearMap:
        """Ambient -> coordinates; reads off pivot entries (a left inverse of the inclusion)."""
        one = self.field.one
        cols: list[dict] = [{} for _ in range(self.ambient)]
        for k, p in enumerate(self.pivots):
            cols[p] = {k: one}
        return LinearMap(self.field, self.ambient, self.dim, cols)

    def contains_subspace(self, other: "Subspace") -> bool:
        ech = self._echelon()
        return all(not ech.reduce(as_sparse(b)) for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        # kernel of [incl_self | -incl_other] projected to the first block
        joint = LinearMap(
            self.field,
            self.dim + other.dim,
            self.ambient,
            [as_sparse(b) for b in self.basis] + [{i: -v for i, v in as_sparse(b).items()} for b in other.basis],
        )
        ker = kernel(joint)
        incl = self.inclusion()
        return Subspace.span(self.field, self.ambient, [incl(b[: self.dim]) for b in ker.basis])

    def restrict(self, f: LinearMap, target: "Subspace | None" = None) -> LinearMap:
        """Matrix of ``f`` restricted to this subspace, in target coordinates.

        Raises ValueError if some image leaves ``target``.
        """
        images = f @ self.inclusion()
        if target is None:
            return images
        out = []
        for col in images.cols:
            out.append(as_sparse(target.coords(to_dense(col, target.ambient, self.field))))
        return LinearMap(self.field, self.dim, target.dim, out)


def image(f: LinearMap) -> Subspace:
    return Subspace.span(f.field, f.codomain, f.cols)


def kernel(f: LinearMap) -> Subspace:
    """RREF basis of ``{v : f(v) = 0}``."""
    ech = Echelon(f.field, f.domain)
    for row in f.row_dicts():
        if row:
            ech.add(row)
    return nullspace_from_echelon(ech)


def nullspace_from_echelon(ech: Echelon) -> Subspace:
    field = ech.field
    piv = set(ech.pivot_rows)
    vectors = []
    for fc in range(ech.ncols):
        if fc in piv:
            continue
        v = {fc: field.one}
        for p, row in ech.pivot_rows.items():
            c = row.get(fc)
            if c:
                v[p] = -c
        vectors.append(v)
    return Subspace.span(field, ech.ncols, vectors)


def kernel_of_stack(field: Field, ncols: int, blocks: Iterable[LinearMap]) -> Subspace:
    """Common kernel of several maps sharing a domain."""
    ech = Echelon(field, ncols)
    for f in blocks:
        if f.domain != ncols:
            raise ValueError("domain mismatch in stacked kernel")
        for row in f.row_dicts():
            if row:
                ech.add(row)
    return nullspace_from_echelon(ech)


def solve(f: LinearMap, target) -> tuple | None:
    """One solution of ``f x = target`` (free variables set to 0), or None."""
    n = f.domain
    aug = f.row_dicts()
    t = as_sparse(target)
    ech = Echelon(f.field, n + 1)
    for i, row in enumerate(aug):
        r = dict(row)
        if i in t:
            r[n] = t[i]
        if r:
            ech.add(r)
    if n in ech.pivot_rows:
        return None
    z = f.field.zero
    x = [z] * n
    for p, row in ech.pivot_rows.items():
        x[p] = row.get(n, z)
    return tuple(x)


def invert(f: LinearMap) -> LinearMap:
    """Two-sided inverse of a square bijective map; NotInvertibleError otherwise."""
    n = f.domain
    if f.codomain != n:
        raise NotInvertibleError(f.rank(), f"non-square map {f.shape}")
    ech = Echelon(f.field, 2 * n)
    one = f.field.one
    for i, row in enumerate(f.row_dicts()):
        r = dict(row)
        r[n + i] = one
        ech.add(r)
    left = [p for p in ech.pivot_rows if p < n]
    if len(left) < n:
        raise NotInvertibleError(len(left))
    cols: list[dict] = [{} for _ in range(n)]
    for p, row in ech.pivot_rows.items():
        for k, v in row.items():
            if k >= n:
                cols[k - n][p] = v
    return LinearMap(f.field, n, n, cols)


def solve_or_invert(f: LinearMap, target=None):
    """``solve(f, target)`` when a target is given, else ``invert(f)``."""
    if target is None:
        return invert(f)
    return solve(f, target)


@dataclass(frozen=True, eq=False)
class QuotientData:
    ambient: int
    relations: Subspace
    projection: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return self.projection.codomain

    @property
    def complement(self) -> tuple[int, ...]:
        """Ambient coordinates used as the quotient basis."""
        return tuple(next(iter(c)) for c in self.section.cols)


def quotient(ambient: int, relations: Subspace) -> QuotientData:
    """Quotient by ``relations``; the section picks the non-pivot coordinates."""
    if relations.ambient != ambient:
        raise ValueError("relations live in a different ambient space")
    field = relations.field
    piv = set(relations.pivots)
    comp = [j for j in range(ambient) if j not in piv]
    where = {j: k for k, j in enumerate(comp)}
    one = field.one
    proj_cols: list[dict] = [{} for _ in range(ambient)]
    for j in comp:
        proj_cols[j] = {where[j]: one}
    for p, b in zip(relations.pivots, relations.basis):
        # e_p = b - (b - e_p) and b is a relation, so e_p == -(b - e_p)
        proj_cols[p] = {where[j]: -b[j] for j in comp if b[j]}
    projection = LinearMap(field, ambient, len(comp), proj_cols)
    section = LinearMap(field, len(comp), ambient, [{j: one} for j in comp])
    return QuotientData(ambient, relations, projection, section)


def hom_space(field: Field, dom: int, cod: int, constraints: Sequence[Callable[[LinearMap], LinearMap]]) -> Subspace:
    """Subspace of Hom(k^dom, k^cod) where every constraint map vanishes.

    Each constraint must be linear in its argument.  A map ``f`` is encoded
    as the vector with entry ``f[i, j]`` at index ``i * dom + j``.
    """
    n = dom * cod
    one = field.one
    ech = Echelon(field, n)
    columns: list[list[dict]] = [[] for _ in constraints]
    for idx in range(n):
        i, j = divmod(idx, dom)
        basis_map = LinearMap(field, dom, cod, [{i: one} if jj == j else {} for jj in range(dom)])
        for k, c in enumerate(constraints):
            columns[k].append(c(basis_map))
    for blocks in columns:
        if not blocks:
            continue
        rows: dict[tuple[int, int], dict] = {}
        for idx, m in enumerate(blocks):
            for j, col in enumerate(m.cols):
                for i, v in col.items():
                    rows.setdefault((j, i), {})[idx] = v
        for key in sorted(rows):
            ech.add(rows[key])
    return nullspace_from_echelon(ech)


def map_from_vector(field: Field, vec, dom: int, cod: int) -> LinearMap:
    """Inverse of the Hom encoding used by :func:`hom_space`."""
    cols: list[dict] = [{} for _ in range(dom)]
    for idx, v in as_sparse(vec).items():
        i, j = divmod(idx, dom)
        cols[j][i] = v
    return LinearMap(field, dom, cod, cols)


def map_to_vector(f: LinearMap) -> tuple:
    out = [f.field.zero] * (f.domain * f.codomain)
    for j, col in enumerate(f.cols):
        for i, v in col.items():
            out[i * f.domain + j] = v
    return tuple(out)
