"""Command line front end.  Every verb prints one JSON document on stdout.

Exit status: 0 on success, 1 on errors, 2 when ``--assert`` is given and the
verb's predicate is false.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classes import classify
from .cp import cp_factor_nonobtuse_facets
from .dual import (
    dual_hull_cell,
    geometry_report,
    in_suborthocentric_set,
    is_suborthocentric_simplex,
    suborthocentric_cells,
)
from .lab.campaigns import (
    extremal_search,
    test_conjecture_kfacets,
    test_conjecture_suborthocentric,
    verify_theorem_suite,
)
from .scalar import DEFAULT_EPS, EXACT, Field, ParseError, fmt
from .simplex import Simplex, VertexGramian, all_vertex_gramians, as_gramian, dihedral_angles, dihedral_report, radii

SEED_ENV = "NONOBTUSE_SEED"


def _stringify(obj):
    """All numbers become strings; booleans and None stay as they are."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [_stringify(v) for v in sorted(obj)]
    return fmt(obj)


def _load(text: str):
    path = Path(text)
    if not text.lstrip().startswith(("[", "{")) and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is neither a file nor a JSON literal: {exc}") from exc


def _field(args) -> Field:
    if args.mode == "float":
        return Field(args.epsilon)
    return EXACT


def _simplex(obj, fld: Field) -> Simplex:
    if isinstance(obj, dict) and "vertices" in obj:
        return Simplex.from_json(obj, fld)
    if isinstance(obj, list):
        return Simplex.from_points(obj, fld)
    raise ParseError("expected a simplex: {\"vertices\": [[...], ...]} or a list of points")


def _gramian(obj, fld: Field) -> VertexGramian:
    """Matrix literal, VertexGramian JSON or simplex JSON."""
    if isinstance(obj, dict) and "G" in obj:
        VG = as_gramian(obj["G"], fld)
        order = tuple(obj.get("order", VG.order))
        return VertexGramian(VG.G, int(obj.get("base", 0)), order, fld)
    if isinstance(obj, dict) and "vertices" in obj:
        return as_gramian(_simplex(obj, fld))
    return as_gramian(obj, fld)


def _point(text, fld: Field):
    if text is None:
        return None
    return fld.array(_load(text))


def cmd_classify_matrix(args):
    rep = classify(_gramian(_load(args.input), _field(args)))
    return rep.to_json(), rep.in_Mdd


def cmd_classify_simplex(args):
    S = _simplex(_load(args.input), _field(args))
    geo = geometry_report(S)
    geo["class_report"] = classify(as_gramian(S)).to_json()
    return geo, geo["nonobtuse"]


def cmd_gramians(args):
    VG = _gramian(_load(args.input), _field(args))
    out = []
    for G in all_vertex_gramians(VG):
        entry = G.to_json()
        entry["class_report"] = classify(G).to_json()
        out.append(entry)
    return {"gramians": out}, True


def cmd_dihedral(args):
    VG = _gramian(_load(args.input), _field(args))
    rep = dihedral_report(VG)
    out = rep.to_json()
    out["angles_degrees"] = [[repr(float(a) * 180 / 3.141592653589793) for a in row] for row in dihedral_angles(VG)]
    return out, rep.obtuse_count == 0


def cmd_radii(args):
    r_i, r_c = radii(_gramian(_load(args.input), _field(args)))
    return {"inradius": r_i, "circumradius": r_c}, True


def cmd_cp_factor(args):
    cp = cp_factor_nonobtuse_facets(_gramian(_load(args.input), _field(args)), fallback=args.fallback)
    return cp.to_json(), True


def cmd_subortho(args):
    fld = _field(args)
    S = _simplex(_load(args.input), fld)
    out = {"suborthocentric_simplex": is_suborthocentric_simplex(S)}
    if S.n >= 1:
        out["cells"] = suborthocentric_cells(S).to_json()
    x = _point(args.point, fld)
    if x is not None:
        out["point_in_suborthocentric_set"] = in_suborthocentric_set(S, x)
        return out, out["point_in_suborthocentric_set"]
    return out, out["suborthocentric_simplex"]


def cmd_dual_hull(args):
    fld = _field(args)
    S = _simplex(_load(args.input), fld)
    x = _point(args.point, fld)
    if x is None:
        raise ParseError("dual-hull needs --point")
    cell = dual_hull_cell(S, x)
    return {"kind": cell.kind, "facet": cell.facet, "nu": cell.nu}, cell.kind != "outside"


def cmd_search(args):
    if args.kind == "kfacets":
        if args.k is None:
            raise ParseError("--k is required for kfacets")
        rep = test_conjecture_kfacets(args.n, args.k, args.trials, args.seed, args.log, args.workers)
        return rep, not rep["counterexamples"]
    if args.kind == "suborthocentric":
        rep = test_conjecture_suborthocentric(args.n, args.trials, args.seed, args.log, args.workers)
        return rep, not rep["counterexamples"]
    rep = extremal_search(args.n, args.trials, args.seed)
    return rep, rep["best"] <= rep["bound"]


def cmd_verify(args):
    rep = verify_theorem_suite(args.n, args.trials, args.seed, args.log, args.workers)
    return rep, rep["passed"]


VERBS = {
    "classify-matrix": cmd_classify_matrix,
    "classify-simplex": cmd_classify_simplex,
    "gramians": cmd_gramians,
    "dihedral": cmd_dihedral,
    "radii": cmd_radii,
    "cp-factor": cmd_cp_factor,
    "subortho": cmd_subortho,
    "dual-hull": cmd_dual_hull,
    "search": cmd_search,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get(SEED_ENV, "0"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPS)
    common.add_argument("--assert", dest="check", action="store_true", help="exit 2 when the predicate is false")
    p = argparse.ArgumentParser(prog="nonobtuse", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("classify-matrix", "classify-simplex", "gramians", "dihedral", "radii", "cp-factor", "subortho", "dual-hull"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("input", help="path to a JSON file or an inline JSON literal")
        if verb == "cp-factor":
            sp.add_argument("--fallback", choices=("bruteforce", "off"), default="bruteforce")
        if verb in ("subortho", "dual-hull"):
            sp.add_argument("--point", help="point coordinates as a JSON list")
    for verb in ("search", "verify"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int, default=default_seed)
        sp.add_argument("--log", help="append trial records to this JSONL file")
        sp.add_argument("--workers", type=int, default=0)
        if verb == "search":
            sp.add_argument("--kind", choices=("kfacets", "suborthocentric", "extremal"), default="kfacets")
            sp.add_argument("--k", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, ok = VERBS[args.verb](args)
    except Exception as exc:  # every failure maps to exit 1 with a JSON error
        doc = {"version": __version__, "verb": args.verb, "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(doc, sort_keys=True))
        return 1
    doc = {"version": __version__, "verb": args.verb, "result": _stringify(payload)}
    print(json.dumps(doc, sort_keys=True))
    return 2 if args.check and not ok else 0


if __name__ == "__main__":
    raise SystemExit(main())
