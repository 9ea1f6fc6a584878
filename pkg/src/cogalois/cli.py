"""Command line front end: ``check``, ``run`` and ``catalog``.

``run`` executes the tasks of a document in order and emits a JSON report.
Reports contain no timing data so that they are byte-stable for a fixed
input, seed and budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import associated as assoc
from . import catalog
from .docformat import FORMAT_VERSION, Document, ParseError, parse
from .entwining import EntwinedModule, Entwining, HopfAlgebra, check_entwining, validate_entwined_module
from .galois import Extension, GaloisData, NotFound, NotGalois, check_cleft, find_cleaving_map, galois_data, gauge_group
from .linalg import Field, LinearMap, map_to_vector
from .measuring import (
    Measuring,
    StructureNotInduced,
    hat_cotensor,
    is_galois_measuring,
    validate_measuring,
)
from .structures import Violation, convolution_unit, dualize, validate

PASS, FAIL = "pass", "fail"
FAILING_VERDICTS = {"Violation", "Error", "Inconsistent"}


class TaskFailure(Exception):
    """Internal consistency check failed while running a task."""


def _violation(v: Violation, fld: Field) -> dict:
    return {"verdict": "Violation", "axiom": v.axiom, "witness": list(v.witness), "row": v.row,
            "lhs": fld.format(v.lhs), "rhs": fld.format(v.rhs)}


def _entries(fld: Field, f: LinearMap) -> list:
    return sorted([j, i, fld.format(v)] for j, col in enumerate(f.cols) for i, v in col.items())


def validate_any(x) -> Violation | None:
    if isinstance(x, HopfAlgebra):
        return None  # axioms checked on construction
    if isinstance(x, Extension):
        for part in (x.A, x.C, x.as_comodule()):
            v = validate(part)
            if v is not None:
                return v
        return None
    if isinstance(x, Entwining):
        return validate(x.A) or validate(x.C) or check_entwining(x)
    if isinstance(x, EntwinedModule):
        return validate_entwined_module(x)
    if isinstance(x, Measuring):
        return validate_measuring(x)
    if isinstance(x, LinearMap):
        raise TypeError("a bare map carries no axioms")
    return validate(x)


class Runner:
    def __init__(self, doc: Document, seed: int | None = None, budget: int = 1000):
        self.doc, self.seed, self.budget = doc, seed, budget
        self._galois: dict[tuple, GaloisData] = {}

    @property
    def field(self) -> Field:
        return self.doc.field

    def galois(self, task: dict) -> GaloisData:
        if "extension" in task:
            key = (task["extension"],)
            ext = self.doc.get(task["extension"])
        else:
            key = tuple(task[k] for k in ("algebra", "coalgebra", "coaction"))
            ext = Extension(*(self.doc.get(k) for k in key))
        if key not in self._galois:
            self._galois[key] = galois_data(ext.A, ext.C, ext.coaction)
        return self._galois[key]

    def run(self) -> dict:
        results = [self.run_task(i, t) for i, t in enumerate(self.doc.tasks)]
        return {"formatVersion": FORMAT_VERSION, "seed": self.seed, "budget": self.budget, "results": results}

    def run_task(self, index: int, task: dict) -> dict:
        cmd = task["cmd"]
        handler: Callable[[dict], dict] = getattr(self, "task_" + cmd.replace("-", "_"))
        try:
            body = handler(task)
        except NotGalois as exc:
            body = {"verdict": "NotGalois", "message": str(exc)}
        except TaskFailure as exc:
            body = {"verdict": "Inconsistent", "message": str(exc)}
        except (ValueError, TypeError, ArithmeticError, LookupError) as exc:
            body = {"verdict": "Error", "message": f"{type(exc).__name__}: {exc}"}
        out: dict[str, Any] = {"task": index, "cmd": cmd}
        out.update(body)
        status = FAIL if out["verdict"] in FAILING_VERDICTS else PASS
        if "expect" in task:
            out["expected"] = task["expect"]
            if task["expect"] != out["verdict"]:
                status = FAIL
        out["status"] = status
        return out

    # -- tasks --------------------------------------------------------------------------------

    def task_validate(self, task):
        v = validate_any(self.doc.get(task["object"]))
        return {"verdict": "Ok"} if v is None else _violation(v, self.field)

    def task_galois_check(self, task):
        g = self.galois(task)
        return {"verdict": "Galois" if g.is_galois else "NotGalois", "dimA": g.A.dim, "dimC": g.C.dim,
                "dimB": g.B.dim, "canRank": g.can_rank, "canShape": [g.can.codomain, g.can.domain]}

    def task_entwining_check(self, task):
        v = validate_any(self.doc.get(task["entwining"]))
        return {"verdict": "Ok"} if v is None else _violation(v, self.field)

    def task_cleft_search(self, task):
        g = self.galois(task)
        try:
            cm = find_cleaving_map(g, budget=self.budget, seed=self.seed, max_height=task.get("maxHeight", 3))
        except NotFound as exc:
            return {"verdict": "NotFound", "tried": exc.tried}
        rep = check_cleft(g, cm.phi.map)
        if not rep.cleft:
            raise TaskFailure("search returned a map that fails the cleft checks")
        return {"verdict": "Cleft", "phi": _entries(self.field, cm.phi.map),
                "phiInverse": _entries(self.field, cm.phi_inverse.map), "trivialization": rep.trivialization_verified}

    def task_gauge_subspace(self, task):
        g = self.galois(task)
        G = gauge_group(g)
        unit = convolution_unit(g.C, g.A).map
        return {"verdict": "Ok", "dim": G.subspace.dim, "ambient": G.subspace.ambient,
                "containsUnit": G.subspace.contains(map_to_vector(unit))}

    def task_measuring_check(self, task):
        m = self.doc.get(task["measuring"])
        v = validate_measuring(m)
        if v is not None:
            return _violation(v, self.field)
        r = is_galois_measuring(m)
        return {"verdict": "GaloisMeasuring" if r.galois else "NotGaloisMeasuring",
                "unitRank": r.unit_rank, "unitShape": list(r.unit_shape),
                "counitRank": r.counit_rank, "counitShape": list(r.counit_shape)}

    def task_hat_cotensor(self, task):
        m = self.doc.get(task["measuring"])
        M = self.doc.get(task["module"])
        if M.over != m.target:
            raise ValueError("module must be entwined over the measuring's target")
        try:
            K = hat_cotensor(M, m)
        except StructureNotInduced as exc:
            return {"verdict": "NotInduced", "message": str(exc)}
        v = validate_entwined_module(K.module)
        if v is not None:
            raise TaskFailure(f"induced structure fails: {v}")
        return {"verdict": "Ok", "dim": K.dim, "ambientDim": K.ambient.dim}

    def _cleaving(self, g: GaloisData):
        try:
            return find_cleaving_map(g, budget=self.budget, seed=self.seed).phi.map
        except NotFound:
            return None

    def task_associated_left(self, task):
        g = self.galois(task)
        V = self.doc.get(task["comodule"])
        phi = self._cleaving(g) if g.is_galois else None
        L = assoc.left_associated(g, V, cleaving=phi)
        out = {"verdict": "Ok", "dimE": L.dim, "dimB": g.B.dim, "dimV": V.dim,
               "cleft": phi is not None,
               "trivialization": assoc.left_trivialization_ok(L) if phi is not None else None}
        if phi is not None and not out["trivialization"]:
            raise TaskFailure("E and B (x) V trivialization failed")
        return out

    def task_cross_sections(self, task):
        g = self.galois(task)
        th = assoc.theta_iso(g, self.doc.get(task["comodule"]))
        return {"verdict": "Isomorphism" if th.bijective and th.right_B_linear else "NotIsomorphism",
                "dimHomPsi": th.hom_psi.dim, "dimSections": th.sections.dim, "thetaRank": th.matrix.rank(),
                "bijective": th.bijective, "rightBLinear": th.right_B_linear,
                "homPsiClosed": assoc.hom_psi_closed_under_B(g, th.hom_psi, th.module.V.dim)}

    def task_associated_right(self, task):
        g = self.galois(task)
        V = self.doc.get(task["comodule"])
        phi = self._cleaving(g)
        R = assoc.right_associated(g, V, cleaving=phi)
        z = assoc.zeta_iso(g, V)
        triv = assoc.right_trivialization_ok(R) if phi is not None else None
        if triv is False:
            raise TaskFailure("Ebar and V (x) B trivialization failed")
        return {"verdict": "Isomorphism" if z.bijective and z.left_B_linear else "NotIsomorphism",
                "dimEbar": R.dim, "dimColinear": z.colinear.dim, "dimSections": z.sections.dim,
                "zetaRank": z.matrix.rank(), "bijective": z.bijective, "leftBLinear": z.left_B_linear,
                "faithfullyFlat": z.faithfully_flat, "cleft": phi is not None, "trivialization": triv}

    def task_duality_bridge(self, task):
        g = self.galois(task)
        d = assoc.duality_bridge(g, self.doc.get(task["comodule"]))
        ok = d.iso1 and d.iso2
        return {"verdict": "Ok" if ok else "Inconsistent",
                "dimE": d.E.dim, "dimColinearDual": d.colinear_from_dual.dim,
                "dimEbarDual": d.Ebar_dual.dim, "dimHomPsi": d.hom_psi.dim,
                "iso1": d.iso1, "iso2": d.iso2,
                "comparisonLeft": {"constructed": d.comparison_left.lands_in_linear_maps,
                                   "bijective": d.comparison_left.bijective},
                "comparisonRight": {"constructed": d.comparison_right.lands_in_linear_maps,
                                    "bijective": d.comparison_right.bijective}}

    def task_psi_inverse(self, task):
        from .structures import regular_left_comodule, regular_right_comodule

        g = self.galois(task)
        w = assoc.psi_inverse_world(g)
        r1, r2 = assoc.relation_isos(g, regular_left_comodule(g.C), regular_right_comodule(g.C))
        ok = w.left_coaction_valid and w.can_L_bijective and w.can_L_factorization and w.B_bar_equals_B and r1 and r2
        return {"verdict": "Ok" if ok else "Inconsistent",
                "leftCoaction": _entries(self.field, w.left_coaction),
                "leftCoactionValid": w.left_coaction_valid, "canLBijective": w.can_L_bijective,
                "canLFactorization": w.can_L_factorization, "dimBbar": w.B_bar_products.dim,
                "BbarEqualsB": w.B_bar_equals_B, "relationIso1": r1, "relationIso2": r2}

    def task_dualize(self, task):
        x = self.doc.get(task["object"])
        d = dualize(x)
        back = dualize(d)
        involution = back == x
        v = validate_any(d)
        if v is not None:
            return _violation(v, self.field)
        return {"verdict": "Ok" if involution else "Inconsistent", "dualType": type(d).__name__,
                "involution": involution}


def run(doc: Document, seed: int | None = None, budget: int = 1000) -> dict:
    return Runner(doc, seed, budget).run()


def _dump(x, indent: int) -> str:
    """JSON with flat arrays kept on one line."""
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(x, dict) and x:
        items = [f"{inner}{json.dumps(k)}: {_dump(v, indent + 2)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(x, list) and any(isinstance(v, (list, dict)) for v in x):
        items = [f"{inner}{_dump(v, indent + 2)}" for v in x]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(x, ensure_ascii=True)


def report_text(report: dict) -> str:
    return _dump(report, 0) + "\n"


def all_passing(report: dict) -> bool:
    return all(r["status"] == PASS for r in report["results"])


# -- verbs ---------------------------------------------------------------------------------


def _load(path: str) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"{path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        print(f"{path}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        raise SystemExit(2) from None


def cmd_check(args) -> int:
    doc = _load(args.file)
    print(f"{args.file}: ok ({len(doc.objects)} objects, {len(doc.tasks)} tasks)")
    return 0


def cmd_run(args) -> int:
    doc = _load(args.file)
    report = run(doc, seed=args.seed, budget=args.budget)
    text = report_text(report)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if all_passing(report) else 1


def _catalog_args(args) -> tuple:
    if args.name in ("groupAlgebra", "functionAlgebraOnGroup", "matrixCoalgebra"):
        return (args.n,)
    if args.name == "regularGaloisExtension" and args.base:
        base = catalog.construct(args.base, args.n, field=Field(args.p)).payload
        if not isinstance(base, HopfAlgebra):
            raise SystemExit(f"--base must name a Hopf algebra entry, got {args.base}")
        return (base,)
    return ()


def cmd_catalog(args) -> int:
    if args.name == "list":
        print("\n".join(catalog.CATALOG_NAMES))
        return 0
    try:
        ex = catalog.construct(args.name, *_catalog_args(args), field=Field(args.p))
    except (KeyError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    text = catalog.serialize(ex)
    if args.emit:
        Path(args.emit).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cogalois", description="Entwining structures and coalgebra-Galois extensions.")
    sub = p.add_subparsers(dest="verb", required=True)
    c = sub.add_parser("check", help="parse and validate a document")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)
    r = sub.add_parser("run", help="run the tasks of a document")
    r.add_argument("file")
    r.add_argument("--report", help="write the report here instead of stdout")
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--budget", type=int, default=1000)
    r.set_defaults(func=cmd_run)
    k = sub.add_parser("catalog", help="emit a catalog example as a document ('list' shows names)")
    k.add_argument("name")
    k.add_argument("--emit", help="output file")
    k.add_argument("--n", type=int, default=2, help="size parameter")
    k.add_argument("--p", type=int, default=0, help="field characteristic, 0 for Q")
    k.add_argument("--base", help="Hopf algebra entry for regularGaloisExtension")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # e.g. a non-prime --p
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
