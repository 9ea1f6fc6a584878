#!/usr/bin/env python3
"""Rewrite tests/golden/*.json documents and their *.report.json outputs.

Run after an intentional change to the document or report format, then
review the diff before committing.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from cogalois import catalog
from cogalois.cli import report_text, run
from cogalois.docformat import document_from_structures, print_document
from cogalois.entwining import tensor_c
from cogalois.galois import canonical_entwining, galois_data
from cogalois.linalg import GF, QQ
from cogalois.measuring import coinvariants_measuring
from cogalois.structures import (
    regular_left_comodule,
    regular_right_comodule,
    regular_right_module,
    trivial_left_comodule,
    trivial_right_comodule,
)

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def _unit_vector(C, k=0):
    return tuple(C.field.one if i == k else C.field.zero for i in range(C.dim))


def hopf_document(H, grouplike_index=0, meta=None):
    """Regular extension of H with comodules k and C on both sides and the full task list."""
    ext = catalog.regular_extension(H)
    C = ext.C
    e = _unit_vector(C, grouplike_index)
    named = {
        "H": H,
        "ext": ext,
        "Vk": trivial_left_comodule(C, e),
        "VC": regular_left_comodule(C),
        "Wk": trivial_right_comodule(C, e),
        "WC": regular_right_comodule(C),
    }
    tasks = [
        {"cmd": "validate", "object": "H.algebra", "expect": "Ok"},
        {"cmd": "validate", "object": "H.coalgebra", "expect": "Ok"},
        {"cmd": "validate", "object": "ext", "expect": "Ok"},
        {"cmd": "galois-check", "extension": "ext", "expect": "Galois"},
        {"cmd": "cleft-search", "extension": "ext", "expect": "Cleft"},
        {"cmd": "gauge-subspace", "extension": "ext"},
        {"cmd": "associated-left", "extension": "ext", "comodule": "Vk"},
        {"cmd": "associated-left", "extension": "ext", "comodule": "VC"},
        {"cmd": "cross-sections", "extension": "ext", "comodule": "Vk", "expect": "Isomorphism"},
        {"cmd": "cross-sections", "extension": "ext", "comodule": "VC", "expect": "Isomorphism"},
        {"cmd": "associated-right", "extension": "ext", "comodule": "Wk", "expect": "Isomorphism"},
        {"cmd": "associated-right", "extension": "ext", "comodule": "WC", "expect": "Isomorphism"},
        {"cmd": "duality-bridge", "extension": "ext", "comodule": "VC", "expect": "Ok"},
        {"cmd": "psi-inverse", "extension": "ext", "expect": "Ok"},
        {"cmd": "dualize", "object": "H.algebra", "expect": "Ok"},
        {"cmd": "dualize", "object": "VC", "expect": "Ok"},
    ]
    return document_from_structures(H.field, named, tasks, meta)


def nonexample_document():
    ext = catalog.trivial_coaction_extension(catalog.group_algebra(2))
    tasks = [
        {"cmd": "validate", "object": "ext", "expect": "Ok"},
        {"cmd": "galois-check", "extension": "ext", "expect": "NotGalois"},
        {"cmd": "cleft-search", "extension": "ext", "expect": "NotGalois"},
        {"cmd": "cross-sections", "extension": "ext", "comodule": "VC", "expect": "NotGalois"},
    ]
    named = {"ext": ext, "VC": regular_left_comodule(ext.C)}
    return document_from_structures(QQ, named, tasks, {"name": "trivial coaction", "note": "B = A"})


def measuring_document():
    ext = catalog.quotient_group_extension(4, 2)
    g = galois_data(ext.A, ext.C, ext.coaction)
    E = canonical_entwining(g)
    m = coinvariants_measuring(g, E)
    M = tensor_c(regular_right_module(ext.A), E)
    named = {"ext": ext, "psi": E, "m": m, "M": M, "Vk": trivial_left_comodule(ext.C, _unit_vector(ext.C)),
             "VC": regular_left_comodule(ext.C), "WC": regular_right_comodule(ext.C)}
    tasks = [
        {"cmd": "galois-check", "extension": "ext", "expect": "Galois"},
        {"cmd": "entwining-check", "entwining": "psi", "expect": "Ok"},
        {"cmd": "validate", "object": "M", "expect": "Ok"},
        {"cmd": "measuring-check", "measuring": "m", "expect": "GaloisMeasuring"},
        {"cmd": "hat-cotensor", "measuring": "m", "module": "M", "expect": "Ok"},
        {"cmd": "cross-sections", "extension": "ext", "comodule": "Vk", "expect": "Isomorphism"},
        {"cmd": "cross-sections", "extension": "ext", "comodule": "VC", "expect": "Isomorphism"},
        {"cmd": "associated-right", "extension": "ext", "comodule": "WC", "expect": "Isomorphism"},
        {"cmd": "psi-inverse", "extension": "ext", "expect": "Ok"},
        {"cmd": "dualize", "object": "psi", "expect": "Ok"},
    ]
    return document_from_structures(QQ, named, tasks, {"name": "kZ4 over kZ2", "note": "B = span(1, g^2)"})


def budget_document():
    ext = catalog.regular_extension(catalog.group_algebra(2))
    return document_from_structures(QQ, {"ext": ext}, [{"cmd": "cleft-search", "extension": "ext"}],
                                    {"name": "budget", "note": "run with --budget 0"})


def documents():
    yield "kz2_regular", hopf_document(catalog.group_algebra(2), meta={"name": "kZ2", "note": "regular"}), {}
    yield "h4_regular", hopf_document(catalog.sweedler_h4(), meta={"name": "H4", "note": "regular"}), {}
    yield "kz3_gf7", hopf_document(catalog.group_algebra(3, GF(7)), meta={"name": "kZ3 over GF(7)", "note": "regular"}), {}
    yield "nonexample", nonexample_document(), {}
    yield "measuring_kz4", measuring_document(), {}
    yield "budget_zero", budget_document(), {"budget": 0}
    yield "seeded_h4", document_from_structures(
        QQ, {"ext": catalog.regular_extension(catalog.sweedler_h4())},
        [{"cmd": "cleft-search", "extension": "ext", "expect": "Cleft"}],
        {"name": "seeded search", "note": "run with --seed 7"}), {"seed": 7}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=GOLDEN)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for stem, doc, opts in documents():
        manifest[stem] = {"seed": opts.get("seed"), "budget": opts.get("budget", 1000)}
        (args.out / f"{stem}.json").write_text(print_document(doc), encoding="utf-8")
        report = run(doc, seed=opts.get("seed"), budget=opts.get("budget", 1000))
        (args.out / f"{stem}.report.json").write_text(report_text(report), encoding="utf-8")
        bad = [r for r in report["results"] if r["status"] != "pass"]
        print(f"{stem}: {len(report['results'])} tasks, {len(bad)} failing")
    (args.out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
