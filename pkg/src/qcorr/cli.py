"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 structural obstruction (no lift, no regular correspondent, ...).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import belyi
from .corpus import CorpusEntry, ParseError, parse_map_file, run_catalog
from .corpus.runner import run_entry
from .dessin import (
    Dessin,
    DessinError,
    LiftError,
    InvalidSymmetry,
    classify_symmetries,
    count_dessins,
    enumerate_dessins,
    genus_of,
    lift_double_cover,
    passport_of,
    quotient_by_antisymmetry,
)
from .dessin.enumerate import DegreeTooLarge
from .passport import Passport, PassportError, correspondent_passports, genus_of_passport

OK, FAILED, USAGE, OBSTRUCTED = 0, 1, 2, 3

STRUCTURAL = (
    LiftError,
    InvalidSymmetry,
    belyi.NotRegularOnCurve,
    belyi.DegenerateRational,
    belyi.UnsupportedGenus,
)
PARSE = (ParseError, PassportError, DessinError, json.JSONDecodeError, DegreeTooLarge, OSError)


class Failure(Exception):
    """A check ran and did not hold; carries the report."""

    def __init__(self, report: dict):
        super().__init__(report.get("error", "verification failed"))
        self.report = report


# --------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_dessins(path: str) -> list[tuple[Dessin, dict]]:
    obj = json.loads(_read(path))
    if isinstance(obj, dict) and "dessins" in obj:
        obj = obj["dessins"]
    records = obj if isinstance(obj, list) else [obj]
    if not records:
        raise DessinError("no dessins in input")
    return [(Dessin.from_dict(r), r) for r in records]


def _entry(path_or_text: str) -> CorpusEntry:
    text = _read(path_or_text)
    return parse_map_file(text)


def _dessin_report(d: Dessin) -> dict:
    return {**d.to_dict(), "passport": str(passport_of(d)), "genus": genus_of(d)}


def _darts(spec: str | None) -> list[int] | None:
    if spec is None:
        return None
    return [int(t) - 1 for t in spec.replace(",", " ").split()]


# --------------------------------------------------------------------------
# commands; each returns (exit code, report dict, human text)


def cmd_passport_genus(a):
    p = Passport.parse(a.passport)
    g = genus_of_passport(p)
    return OK, {"passport": str(p), "genus": g}, f"{p}: genus {g}"


def cmd_passport_correspond(a):
    p = Passport.parse(a.passport)
    got = correspondent_passports(p, include_degenerate=a.degenerate)
    rows = [
        {"passport": str(p0), "k": d.k, "C": list(d.C), "degenerate": d.degenerate}
        for p0, d in got
    ]
    text = "\n".join(
        f"{r['passport']}{'  (degenerate)' if r['degenerate'] else ''}" for r in rows
    ) or "no correspondent passports"
    return OK, {"passport": str(p), "count": len(rows), "correspondents": rows}, text


def cmd_dessin_enumerate(a):
    p = Passport.parse(a.passport)
    if a.count_only:
        n = count_dessins(p)
        return OK, {"passport": str(p), "count": n}, str(n)
    ds = enumerate_dessins(p)
    report = {"passport": str(p), "count": len(ds), "dessins": [d.to_dict() for d in ds]}
    text = "\n".join(d.to_json() for d in ds) or "no dessins"
    return OK, report, f"{len(ds)} dessins\n{text}"


def cmd_dessin_lift(a):
    results = []
    for d, rec in _load_dessins(a.file):
        faces = _darts(a.faces)
        if faces is None and "branch_faces" in rec:
            faces = [int(x) - 1 for x in rec["branch_faces"]]
        mode = "chosen" if faces is not None else "strict"
        res = lift_double_cover(d, mode, faces, twist=a.twist)
        results.append({
            "passport": str(passport_of(res.upstairs)),
            "upstairs": res.upstairs.to_dict(),
            "deck_involution": [i + 1 for i in res.deck_involution],
            "fixed_structure_count": res.fixed_structure_count,
            "k": res.k,
        })
    text = "\n".join(f"{r['passport']}  {json.dumps(r['upstairs'])}" for r in results)
    return OK, {"count": len(results), "lifts": results}, text


def cmd_dessin_quotient(a):
    out = []
    for d, rec in _load_dessins(a.file):
        pi = _darts(a.pi)
        if pi is None and "deck_involution" in rec:
            pi = [int(x) - 1 for x in rec["deck_involution"]]
        if pi is None:
            rep = classify_symmetries(d)
            if not rep.central_antisymmetries:
                raise InvalidSymmetry("no central anti-symmetry to quotient by")
            pi = rep.central_antisymmetries[0]
        q = quotient_by_antisymmetry(d, pi)
        out.append(_dessin_report(q))
    text = "\n".join(f"{r['passport']}  {json.dumps({k: r[k] for k in ('degree', 'sigma0', 'sigma1')})}"
                     for r in out)
    return OK, {"count": len(out), "quotients": out}, text


def cmd_dessin_detect(a):
    out = []
    for d, _rec in _load_dessins(a.file):
        rep = classify_symmetries(d)
        out.append({
            "passport": str(passport_of(d)),
            "classification": rep.classification,
            "color_swap_involutions": [[i + 1 for i in p] for p in rep.color_swap_involutions],
            "fixed_structure_counts": [rep.fixed_structure_counts[p] for p in rep.color_swap_involutions],
            "central_antisymmetries": [[i + 1 for i in p] for p in rep.central_antisymmetries],
            "central_symmetries": [[i + 1 for i in p] for p in rep.central_symmetries],
        })
    text = "\n".join(f"{r['passport']}: {r['classification']}" for r in out)
    return OK, {"count": len(out), "dessins": out}, text


def _map_of(e: CorpusEntry) -> belyi.BelyiMap:
    if "map" not in e.values:
        raise ParseError("entry has no map line")
    return e.belyi_map()


def cmd_map_verify(a):
    e = _entry(a.file)
    bm = _map_of(e)
    try:
        p = bm.verify()
    except belyi.NotBelyi as exc:
        raise Failure({"error": "NotBelyi", "deficit": exc.deficit, "detail": str(exc)})
    report = {"id": e.id, "passport": str(p), "degree": bm.degree}
    want = e.get("passport")
    if want is not None and want != p:
        report["error"] = "PassportMismatch"
        report["expected"] = str(want)
        raise Failure(report)
    return OK, report, f"{e.id}: {p}"


def cmd_map_correspond(a):
    e = _entry(a.file)
    bm = _map_of(e)
    bm.verify()
    qc = belyi.q_correspond(bm)
    ok = belyi.q_identity_residual(bm.phi, qc.phi1).is_zero()
    report = {
        "id": e.id,
        "passport": str(bm.passport),
        "genus": qc.genus,
        "curve": str(qc.D),
        "q_passport": str(qc.genus1_passport) if qc.genus1_passport else None,
        "identity": ok,
    }
    if qc.D.degree in (3, 4):
        report["j"] = str(belyi.j_invariant(qc.D))
    if not ok:
        report["error"] = "IdentityFailed"
        raise Failure(report)
    text = f"y^2 = {qc.D}\nphi1 passport {qc.genus1_passport}" + (
        f"\nj = {report['j']}" if "j" in report else ""
    )
    return OK, report, text


def cmd_painleve_verify(a):
    e = _entry(a.file)
    if e.kind != "painleve-solution":
        raise ParseError(f"expected a painleve-solution entry, got {e.kind!r}")
    res = run_entry(e)
    report = res.to_dict()
    if res.status != "pass":
        report["error"] = res.error or "NonzeroResidual"
        raise Failure(report)
    return OK, report, f"{e.id}: residual vanishes"


def cmd_corpus_check(a):
    rep = run_catalog(a.filter)
    report = rep.to_dict()
    code = OK if rep.ok else FAILED
    return code, report, rep.format()


def cmd_render(a):
    from .render import render_svg

    items = _load_dessins(a.file)
    d = items[0][0]
    svg = render_svg(d, rhombus=a.rhombus, title=d.label)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        return OK, {"output": a.output, "genus": genus_of(d)}, f"wrote {a.output}"
    return OK, {"svg": svg, "genus": genus_of(d)}, svg.rstrip("\n")


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable report on standard output")
    ap = argparse.ArgumentParser(prog="qcorr", parents=[common],
                                 description="Quadratic correspondences of Belyi maps and dessins.")
    sub = ap.add_subparsers(dest="group", required=True)

    g = sub.add_parser("passport", help="passport arithmetic").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("genus", parents=[common])
    p.add_argument("passport")
    p.set_defaults(func=cmd_passport_genus)
    p = g.add_parser("correspond", parents=[common])
    p.add_argument("passport")
    p.add_argument("--degenerate", action="store_true", help="include k = 0 all-even decompositions")
    p.set_defaults(func=cmd_passport_correspond)

    g = sub.add_parser("dessin", help="dessins as permutation pairs").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("enumerate", parents=[common])
    p.add_argument("passport")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_dessin_enumerate)
    p = g.add_parser("lift", parents=[common])
    p.add_argument("file", help="dessin JSON file, or - for standard input")
    p.add_argument("--faces", help="1-based darts on the faces to branch at (chosen mode)")
    p.add_argument("--twist", type=int, default=0, help="pick another sheet labelling")
    p.set_defaults(func=cmd_dessin_lift)
    p = g.add_parser("quotient", parents=[common])
    p.add_argument("file")
    p.add_argument("--pi", help="1-based colour-swapping involution; detected if omitted")
    p.set_defaults(func=cmd_dessin_quotient)
    p = g.add_parser("detect", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_dessin_detect)

    g = sub.add_parser("map", help="Belyi maps in the map file format").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("verify", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_map_verify)
    p = g.add_parser("correspond", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_map_correspond)

    g = sub.add_parser("painleve", help="Painleve VI solutions").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("verify", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_painleve_verify)

    g = sub.add_parser("corpus", help="the built-in catalog").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("check", parents=[common])
    p.add_argument("--filter", help="tag, kind or id to select")
    p.set_defaults(func=cmd_corpus_check)

    p = sub.add_parser("render", parents=[common], help="draw a genus 0 or 1 dessin as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--rhombus", action="store_true", help="rhombic fundamental domain")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else USAGE
    as_json = getattr(args, "json", False)

    def emit(code, report, text):
        if as_json:
            print(json.dumps(report, ensure_ascii=False, sort_keys=True))
        elif text:
            print(text)
        return code

    try:
        return emit(*args.func(args))
    except Failure as exc:
        return emit(FAILED, exc.report, f"FAIL: {exc.report.get('error')}")
    except STRUCTURAL as exc:
        name = type(exc).__name__
        report = {"error": name, "detail": str(exc)}
        if getattr(exc, "D", None) is not None:
            report["curve"] = str(exc.D)
        return emit(OBSTRUCTED, report, f"{name}: {exc}")
    except belyi.NotBelyi as exc:
        return emit(FAILED, {"error": "NotBelyi", "deficit": exc.deficit, "detail": str(exc)},
                    f"NotBelyi: {exc}")
    except PARSE as exc:
        name = type(exc).__name__
        print(f"{ap.prog}: error: {name}: {exc}", file=sys.stderr)
        if as_json:
            print(json.dumps({"error": name, "detail": str(exc)}, sort_keys=True))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
