"""JSON interchange format for structures and task lists.

A document is ``{"formatVersion": 1, "field": ..., "objects": {...}, "tasks": [...]}``
with an optional ``"meta"`` block.  Structure constants are sparse entry lists
with scalars written as strings.  Parsing normalizes every entry list (zeros
dropped, entries sorted) so that printing a parsed document and parsing it
again gives back the same value.
"""

from __future__ import annotations

import json
import json.decoder
import json.scanner
from dataclasses import dataclass, field as dc_field
from typing import Any

from .entwining import EntwinedModule, Entwining, HopfAlgebra
from .galois import Extension
from .linalg import Field, LinearMap
from .measuring import Measuring
from .structures import FinAlgebra, FinCoalgebra, LeftComodule, LeftModule, RightComodule, RightModule

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line, self.column, self.message = line, column, message
        super().__init__(f"{line}:{column}: {message}")


# -- position-aware JSON --------------------------------------------------------------


class _PositionDecoder(json.JSONDecoder):
    """Records the source offset of every array and object it builds."""

    def __init__(self):
        super().__init__()
        self.positions: dict[int, int] = {}
        self._keep: list = []
        base_obj, base_arr = self.parse_object, self.parse_array

        def parse_object(s_and_end, *args):
            value, end = base_obj(s_and_end, *args)
            self._note(value, s_and_end[1] - 1)
            return value, end

        def parse_array(s_and_end, scan_once):
            value, end = base_arr(s_and_end, scan_once)
            self._note(value, s_and_end[1] - 1)
            return value, end

        self.parse_object, self.parse_array = parse_object, parse_array
        self.scan_once = json.scanner.py_make_scanner(self)

    def _note(self, value, offset):
        self.positions[id(value)] = offset
        self._keep.append(value)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Ctx:
    def __init__(self, text: str, positions: dict[int, int]):
        self.text, self.positions = text, positions

    def error(self, node, message: str) -> ParseError:
        off = self.positions.get(id(node), 0)
        return ParseError(*_line_col(self.text, off), message)


# -- object schemas ---------------------------------------------------------------------

# entry-list keys per object type, with the arity of the index part
_ENTRY_KEYS: dict[str, dict[str, int]] = {
    "algebra": {"mult": 3, "unit": 1},
    "coalgebra": {"comult": 3, "counit": 1},
    "map": {"entries": 2},
    "right-module": {"action": 3},
    "left-module": {"action": 3},
    "right-comodule": {"coaction": 3},
    "left-comodule": {"coaction": 3},
    "entwined-module": {"action": 3, "coaction": 3},
}
_INT_KEYS = {
    "algebra": ("dim",), "coalgebra": ("dim",), "map": ("dom", "cod"),
    "right-module": ("dim",), "left-module": ("dim",),
    "right-comodule": ("dim",), "left-comodule": ("dim",), "entwined-module": ("dim",),
}
_REF_KEYS = {
    "right-module": {"algebra": "algebra"}, "left-module": {"algebra": "algebra"},
    "right-comodule": {"coalgebra": "coalgebra"}, "left-comodule": {"coalgebra": "coalgebra"},
    "hopf": {"algebra": "algebra", "coalgebra": "coalgebra", "antipode": "map"},
    "extension": {"algebra": "algebra", "coalgebra": "coalgebra", "coaction": "map"},
    "entwining": {"algebra": "algebra", "coalgebra": "coalgebra", "psi": "map"},
    "entwined-module": {"entwining": "entwining"},
    "measuring": {"source": "entwining", "target": "entwining", "alpha": "map", "gamma": "map"},
}
OBJECT_TYPES = tuple(sorted(set(_ENTRY_KEYS) | set(_REF_KEYS)))

# task keys: required references (name -> expected type or None for any) and optional keys
TASK_SCHEMAS: dict[str, tuple[dict[str, Any], tuple[str, ...]]] = {
    "validate": ({"object": None}, ("expect",)),
    "galois-check": ({}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "entwining-check": ({"entwining": "entwining"}, ("expect",)),
    "cleft-search": ({}, ("extension", "algebra", "coalgebra", "coaction", "expect", "maxHeight")),
    "gauge-subspace": ({}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "measuring-check": ({"measuring": "measuring"}, ("expect",)),
    "hat-cotensor": ({"measuring": "measuring", "module": "entwined-module"}, ("expect",)),
    "associated-left": ({"comodule": "left-comodule"}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "associated-right": ({"comodule": "right-comodule"}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "cross-sections": ({"comodule": "left-comodule"}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "duality-bridge": ({"comodule": "left-comodule"}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "psi-inverse": ({}, ("extension", "algebra", "coalgebra", "coaction", "expect")),
    "dualize": ({"object": None}, ("expect",)),
}
_EXT_TRIPLE = ("algebra", "coalgebra", "coaction")
_EXT_TYPES = {"extension": "extension", "algebra": "algebra", "coalgebra": "coalgebra", "coaction": "map"}


@dataclass(eq=False)
class Document:
    field: Field
    objects: dict[str, dict]  # normalized specs
    tasks: list[dict]
    meta: dict | None = None
    _built: dict[str, Any] = dc_field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return to_json(self) == to_json(other)

    __hash__ = None

    def get(self, name: str):
        return self._built[name]


# -- parsing ------------------------------------------------------------------------------


def parse(text: str) -> Document:
    dec = _PositionDecoder()
    try:
        raw, end = dec.raw_decode(text, json.decoder.WHITESPACE.match(text, 0).end())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg) from None
    rest = json.decoder.WHITESPACE.match(text, end).end()
    if rest != len(text):
        raise ParseError(*_line_col(text, rest), "extra data after document")
    return from_raw(raw, _Ctx(text, dec.positions))


def from_raw(raw, ctx: _Ctx | None = None) -> Document:
    ctx = ctx or _Ctx("", {})
    if not isinstance(raw, dict):
        raise ctx.error(raw, "document must be an object")
    _keys(ctx, raw, required=("formatVersion", "field", "objects"), optional=("tasks", "meta"))
    if raw["formatVersion"] != FORMAT_VERSION:
        raise ctx.error(raw, f"unsupported formatVersion {raw['formatVersion']!r}")
    fld = _parse_field(ctx, raw["field"])
    objs = raw["objects"]
    if not isinstance(objs, dict):
        raise ctx.error(raw, "objects must be an object")
    specs: dict[str, dict] = {}
    for name, spec in objs.items():
        specs[name] = _normalize_object(ctx, fld, name, spec)
    tasks_raw = raw.get("tasks", [])
    if not isinstance(tasks_raw, list):
        raise ctx.error(raw, "tasks must be an array")
    meta = raw.get("meta")
    if meta is not None and not (isinstance(meta, dict) and all(isinstance(v, str) for v in meta.values())):
        raise ctx.error(raw, "meta must map keys to strings")
    doc = Document(fld, specs, [], meta)
    for name in specs:
        _build(ctx, doc, objs, name, ())
    doc.tasks = [_normalize_task(ctx, doc, t) for t in tasks_raw]
    return doc


def _keys(ctx, node, required=(), optional=()):
    for k in required:
        if k not in node:
            raise ctx.error(node, f"missing key {k!r}")
    for k in node:
        if k not in required and k not in optional:
            raise ctx.error(node, f"unknown key {k!r}")


def _parse_field(ctx, node) -> Field:
    if not isinstance(node, dict):
        raise ctx.error(node, "field must be an object")
    kind = node.get("kind")
    if kind == "Q":
        _keys(ctx, node, ("kind",))
        return Field(0)
    if kind == "Fp":
        _keys(ctx, node, ("kind", "p"))
        p = node["p"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise ctx.error(node, "p must be an integer")
        try:
            return Field(p)
        except ValueError as exc:
            raise ctx.error(node, str(exc)) from None
    raise ctx.error(node, f"unknown field kind {kind!r}")


def _int(ctx, parent, value, what) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ctx.error(parent, f"{what} must be a non-negative integer")
    return value


def _scalar(ctx, entry, fld: Field, value):
    if not isinstance(value, str):
        raise ctx.error(entry, f"scalar {value!r} must be a string")
    try:
        return fld.parse(value)
    except (ValueError, ZeroDivisionError):
        raise ctx.error(entry, f"cannot parse {value!r} in {fld}") from None


def _entry_bounds(otype: str, key: str, spec: dict, dims: dict) -> tuple[int, ...]:
    """Index ranges for the entries of ``key``; ``dims`` holds referenced object dims."""
    d = spec.get("dim")
    if otype == "algebra":
        return (d, d, d) if key == "mult" else (d,)
    if otype == "coalgebra":
        return (d, d, d) if key == "comult" else (d,)
    if otype == "map":
        return (spec["dom"], spec["cod"])
    if otype == "right-module":
        return (d, dims["algebra"], d)
    if otype == "left-module":
        return (dims["algebra"], d, d)
    if otype == "right-comodule":
        return (d, d, dims["coalgebra"])
    if otype == "left-comodule":
        return (d, dims["coalgebra"], d)
    if otype == "entwined-module":
        return (d, dims["algebra"], d) if key == "action" else (d, d, dims["coalgebra"])
    raise KeyError(otype)


def _normalize_object(ctx, fld: Field, name: str, spec) -> dict:
    if not isinstance(name, str) or not name:
        raise ctx.error(spec, "object names must be non-empty strings")
    if not isinstance(spec, dict):
        raise ctx.error(spec, f"object {name!r} must be an object")
    otype = spec.get("type")
    if otype not in OBJECT_TYPES:
        raise ctx.error(spec, f"object {name!r}: unknown type {otype!r}")
    ints = _INT_KEYS.get(otype, ())
    refs = _REF_KEYS.get(otype, {})
    entries = _ENTRY_KEYS.get(otype, {})
    _keys(ctx, spec, ("type", *ints, *refs, *entries))
    out: dict[str, Any] = {"type": otype}
    for k in ints:
        out[k] = _int(ctx, spec, spec[k], f"{name}.{k}")
    for k in refs:
        if not isinstance(spec[k], str):
            raise ctx.error(spec, f"{name}.{k} must name an object")
        out[k] = spec[k]
    for k, arity in entries.items():
        lst = spec[k]
        if not isinstance(lst, list):
            raise ctx.error(spec, f"{name}.{k} must be an array")
        acc: dict[tuple, Any] = {}
        for e in lst:
            if not isinstance(e, list) or len(e) != arity + 1:
                raise ctx.error(e if isinstance(e, list) else lst,
                                f"{name}.{k}: entries have {arity} indices and a scalar")
            idx = tuple(_int(ctx, e, i, f"{name}.{k} index") for i in e[:arity])
            if idx in acc:
                raise ctx.error(e, f"{name}.{k}: duplicate entry {list(idx)}")
            acc[idx] = (_scalar(ctx, e, fld, e[arity]), e)
        out[k] = acc  # index tuple -> (value, source node); flattened after bounds check
    return out


def _resolve(ctx, doc: Document, raw_objs, node, name: str, want: str | None, stack):
    if name not in doc.objects:
        raise ctx.error(node, f"unknown object {name!r}")
    have = doc.objects[name]["type"]
    if want is not None and have != want:
        raise ctx.error(node, f"object {name!r} has type {have!r}, expected {want!r}")
    return _build(ctx, doc, raw_objs, name, stack)


def _build(ctx, doc: Document, raw_objs, name: str, stack):
    if name in doc._built:
        return doc._built[name]
    if name in stack:
        raise ctx.error(raw_objs.get(name), f"circular reference through {name!r}")
    spec = doc.objects[name]
    node = raw_objs.get(name, spec)
    otype = spec["type"]
    fld = doc.field
    stack = (*stack, name)
    refs = {k: _resolve(ctx, doc, raw_objs, node, spec[k], want, stack) for k, want in _REF_KEYS.get(otype, {}).items()}
    dims = {}
    if otype == "entwined-module":
        dims = {"algebra": refs["entwining"].A.dim, "coalgebra": refs["entwining"].C.dim}
    elif "algebra" in refs:
        dims["algebra"] = refs["algebra"].dim
    if "coalgebra" in refs and otype != "entwined-module":
        dims["coalgebra"] = refs["coalgebra"].dim
    mats = {}
    for k in _ENTRY_KEYS.get(otype, {}):
        bounds = _entry_bounds(otype, k, spec, dims)
        clean = []
        for idx, (val, src) in sorted(spec[k].items()):
            for i, b in zip(idx, bounds):
                if i >= b:
                    raise ctx.error(src, f"{name}.{k}: index {i} out of range in entry {list(idx)} (bound {b})")
            if val:
                clean.append((idx, val))
        spec[k] = [[*idx, fld.format(v)] for idx, v in clean]
        mats[k] = _matrix(fld, otype, k, spec, dims, clean)
    try:
        obj = _construct(otype, fld, spec, refs, mats)
    except ValueError as exc:
        raise ctx.error(node, f"object {name!r}: {exc}") from None
    doc._built[name] = obj
    return obj


def _matrix(fld: Field, otype: str, key: str, spec: dict, dims: dict, entries) -> LinearMap:
    d = spec.get("dim")
    if otype in ("algebra", "coalgebra") and key in ("unit", "counit"):
        shape = (1, d) if key == "unit" else (d, 1)
        place = (lambda idx: (0, idx[0])) if key == "unit" else (lambda idx: (idx[0], 0))
    elif otype == "algebra":
        shape, place = (d * d, d), lambda idx: (idx[0] * d + idx[1], idx[2])
    elif otype == "coalgebra":
        shape, place = (d, d * d), lambda idx: (idx[0], idx[1] * d + idx[2])
    elif otype == "map":
        shape, place = (spec["dom"], spec["cod"]), lambda idx: (idx[0], idx[1])
    elif otype == "right-module" or (otype == "entwined-module" and key == "action"):
        n = dims["algebra"]
        shape, place = (d * n, d), lambda idx: (idx[0] * n + idx[1], idx[2])
    elif otype == "left-module":
        shape, place = (dims["algebra"] * d, d), lambda idx: (idx[0] * d + idx[1], idx[2])
    elif otype == "right-comodule" or otype == "entwined-module":
        m = dims["coalgebra"]
        shape, place = (d, d * m), lambda idx: (idx[0], idx[1] * m + idx[2])
    elif otype == "left-comodule":
        shape, place = (d, dims["coalgebra"] * d), lambda idx: (idx[0], idx[1] * d + idx[2])
    else:
        raise KeyError(otype)
    dom, cod = shape
    cols: list[dict] = [{} for _ in range(dom)]
    for idx, v in entries:
        j, i = place(idx)
        cols[j][i] = v
    return LinearMap(fld, dom, cod, cols)


def _construct(otype, fld, spec, refs, mats):
    d = spec.get("dim")
    if otype == "algebra":
        return FinAlgebra(fld, d, mats["mult"], mats["unit"])
    if otype == "coalgebra":
        return FinCoalgebra(fld, d, mats["comult"], mats["counit"])
    if otype == "map":
        return mats["entries"]
    if otype == "right-module":
        return RightModule(refs["algebra"], d, mats["action"])
    if otype == "left-module":
        return LeftModule(refs["algebra"], d, mats["action"])
    if otype == "right-comodule":
        return RightComodule(refs["coalgebra"], d, mats["coaction"])
    if otype == "left-comodule":
        return LeftComodule(refs["coalgebra"], d, mats["coaction"])
    if otype == "hopf":
        return HopfAlgebra(refs["algebra"], refs["coalgebra"], refs["antipode"])
    if otype == "extension":
        return Extension(refs["algebra"], refs["coalgebra"], refs["coaction"])
    if otype == "entwining":
        return Entwining(refs["algebra"], refs["coalgebra"], refs["psi"])
    if otype == "entwined-module":
        return EntwinedModule(refs["entwining"], d, mats["action"], mats["coaction"])
    if otype == "measuring":
        return Measuring(refs["source"], refs["target"], refs["alpha"], refs["gamma"])
    raise KeyError(otype)


def _normalize_task(ctx, doc: Document, task) -> dict:
    if not isinstance(task, dict):
        raise ctx.error(task, "tasks must be objects")
    cmd = task.get("cmd")
    if cmd not in TASK_SCHEMAS:
        raise ctx.error(task, f"unknown task {cmd!r}")
    required, optional = TASK_SCHEMAS[cmd]
    _keys(ctx, task, ("cmd", *required), optional)
    out = {"cmd": cmd}
    for k, want in required.items():
        _resolve(ctx, doc, {}, task, task[k], want, ())
        out[k] = task[k]
    if "extension" in optional:
        given = [k for k in _EXT_TRIPLE if k in task]
        if "extension" in task:
            if given:
                raise ctx.error(task, "give either 'extension' or algebra/coalgebra/coaction, not both")
            _resolve(ctx, doc, {}, task, task["extension"], "extension", ())
            out["extension"] = task["extension"]
        elif len(given) == 3:
            for k in _EXT_TRIPLE:
                _resolve(ctx, doc, {}, task, task[k], _EXT_TYPES[k], ())
                out[k] = task[k]
        else:
            raise ctx.error(task, f"{cmd} needs 'extension' or all of algebra/coalgebra/coaction")
    if "maxHeight" in task:
        out["maxHeight"] = _int(ctx, task, task["maxHeight"], "maxHeight")
    if "expect" in task:
        if not isinstance(task["expect"], str):
            raise ctx.error(task, "expect must be a string")
        out["expect"] = task["expect"]
    return out


# -- printing --------------------------------------------------------------------------------


def to_json(doc: Document) -> dict:
    out: dict[str, Any] = {"formatVersion": FORMAT_VERSION}
    out["field"] = {"kind": "Q"} if doc.field.p == 0 else {"kind": "Fp", "p": doc.field.p}
    if doc.meta is not None:
        out["meta"] = dict(doc.meta)
    out["objects"] = {name: dict(spec) for name, spec in doc.objects.items()}
    out["tasks"] = [dict(t) for t in doc.tasks]
    return out


def print_document(doc: Document) -> str:
    """Canonical text: two-space indentation with one entry per line."""
    data = to_json(doc)
    lines = ["{"]
    top = list(data.items())
    for ti, (key, value) in enumerate(top):
        comma = "," if ti < len(top) - 1 else ""
        if key == "objects":
            lines.append(f'  "objects": {{' if value else '  "objects": {}' + comma)
            if value:
                items = list(value.items())
                for oi, (name, spec) in enumerate(items):
                    lines.append(f"    {json.dumps(name)}: {{")
                    fields = list(spec.items())
                    for fi, (k, v) in enumerate(fields):
                        c = "," if fi < len(fields) - 1 else ""
                        if isinstance(v, list):
                            if not v:
                                lines.append(f"      {json.dumps(k)}: []{c}")
                            else:
                                lines.append(f"      {json.dumps(k)}: [")
                                for ei, e in enumerate(v):
                                    ec = "," if ei < len(v) - 1 else ""
                                    lines.append(f"        {json.dumps(e)}{ec}")
                                lines.append(f"      ]{c}")
                        else:
                            lines.append(f"      {json.dumps(k)}: {json.dumps(v)}{c}")
                    lines.append("    }" + ("," if oi < len(items) - 1 else ""))
                lines.append("  }" + comma)
        elif key == "tasks":
            if not value:
                lines.append(f'  "tasks": []{comma}')
            else:
                lines.append('  "tasks": [')
                for i, t in enumerate(value):
                    lines.append(f"    {json.dumps(t)}" + ("," if i < len(value) - 1 else ""))
                lines.append("  ]" + comma)
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structures to documents -----------------------------------------------------------------------


def _entries(fld: Field, mat: LinearMap, index) -> list[list]:
    out = []
    for j, col in enumerate(mat.cols):
        for i, v in col.items():
            out.append([*index(j, i), fld.format(v)])
    out.sort(key=lambda e: tuple(e[:-1]))
    return out


class _Emitter:
    def __init__(self, fld: Field):
        self.field = fld
        self.objects: dict[str, dict] = {}
        self.seen: list[tuple[Any, str]] = []

    def name_of(self, x, name: str) -> str:
        for y, n in self.seen:
            if y is x or (type(y) is type(x) and y == x):
                return n
        self.seen.append((x, name))
        self.objects[name] = self.spec(x, name)
        return name

    def spec(self, x, name: str) -> dict:
        f = self.field
        if isinstance(x, FinAlgebra):
            d = x.dim
            return {"type": "algebra", "dim": d,
                    "mult": _entries(f, x.mult, lambda j, i: (*divmod(j, d), i)),
                    "unit": _entries(f, x.unit, lambda j, i: (i,))}
        if isinstance(x, FinCoalgebra):
            d = x.dim
            return {"type": "coalgebra", "dim": d,
                    "comult": _entries(f, x.comult, lambda j, i: (j, *divmod(i, d))),
                    "counit": _entries(f, x.counit, lambda j, i: (j,))}
        if isinstance(x, LinearMap):
            return {"type": "map", "dom": x.domain, "cod": x.codomain,
                    "entries": _entries(f, x, lambda j, i: (j, i))}
        if isinstance(x, RightModule):
            n = x.over.dim
            return {"type": "right-module", "algebra": self.name_of(x.over, f"{name}.algebra"), "dim": x.dim,
                    "action": _entries(f, x.action, lambda j, i: (*divmod(j, n), i))}
        if isinstance(x, LeftModule):
            d = x.dim
            return {"type": "left-module", "algebra": self.name_of(x.over, f"{name}.algebra"), "dim": d,
                    "action": _entries(f, x.action, lambda j, i: (*divmod(j, d), i))}
        if isinstance(x, RightComodule):
            m = x.over.dim
            return {"type": "right-comodule", "coalgebra": self.name_of(x.over, f"{name}.coalgebra"), "dim": x.dim,
                    "coaction": _entries(f, x.coaction, lambda j, i: (j, *divmod(i, m)))}
        if isinstance(x, LeftComodule):
            d = x.dim
            return {"type": "left-comodule", "coalgebra": self.name_of(x.over, f"{name}.coalgebra"), "dim": d,
                    "coaction": _entries(f, x.coaction, lambda j, i: (j, *divmod(i, d)))}
        if isinstance(x, HopfAlgebra):
            return {"type": "hopf", "algebra": self.name_of(x.algebra, f"{name}.algebra"),
                    "coalgebra": self.name_of(x.coalgebra, f"{name}.coalgebra"),
                    "antipode": self.name_of(x.antipode, f"{name}.antipode")}
        if isinstance(x, Extension):
            return {"type": "extension", "algebra": self.name_of(x.A, f"{name}.algebra"),
                    "coalgebra": self.name_of(x.C, f"{name}.coalgebra"),
                    "coaction": self.name_of(x.coaction, f"{name}.coaction")}
        if isinstance(x, Entwining):
            return {"type": "entwining", "algebra": self.name_of(x.A, f"{name}.algebra"),
                    "coalgebra": self.name_of(x.C, f"{name}.coalgebra"),
                    "psi": self.name_of(x.psi, f"{name}.psi")}
        if isinstance(x, EntwinedModule):
            n, m = x.over.A.dim, x.over.C.dim
            return {"type": "entwined-module", "entwining": self.name_of(x.over, f"{name}.entwining"), "dim": x.dim,
                    "action": _entries(f, x.action, lambda j, i: (*divmod(j, n), i)),
                    "coaction": _entries(f, x.coaction, lambda j, i: (j, *divmod(i, m)))}
        if isinstance(x, Measuring):
            return {"type": "measuring", "source": self.name_of(x.source, f"{name}.source"),
                    "target": self.name_of(x.target, f"{name}.target"),
                    "alpha": self.name_of(x.alpha, f"{name}.alpha"),
                    "gamma": self.name_of(x.gamma, f"{name}.gamma")}
        raise TypeError(f"cannot serialize {type(x).__name__}")


def _ordered(objects: dict[str, dict]) -> dict[str, dict]:
    """Dependencies first, otherwise in emission order."""
    out: dict[str, dict] = {}

    def visit(n):
        if n in out:
            return
        spec = objects[n]
        for k in _REF_KEYS.get(spec["type"], {}):
            visit(spec[k])
        out[n] = spec

    for n in objects:
        visit(n)
    return out


def document_from_structures(fld: Field, named: dict[str, Any], tasks=(), meta=None) -> Document:
    em = _Emitter(fld)
    for name, x in named.items():
        em.name_of(x, name)
    text = json.dumps({"formatVersion": FORMAT_VERSION,
                       "field": {"kind": "Q"} if fld.p == 0 else {"kind": "Fp", "p": fld.p},
                       **({"meta": meta} if meta is not None else {}),
                       "objects": _ordered(em.objects), "tasks": list(tasks)})
    return parse(text)
