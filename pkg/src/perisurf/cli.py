"""Command line front end.

Every subcommand accepts ``--json`` for machine-readable output; setting
``PERISURF_FORMAT=json`` makes that the default.  Exit codes: 0 on success,
1 when the input is outside a command's domain (incompatible gluing,
non-integral genus, failed verification, ...), 2 for usage and syntax
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .census import (
    CensusQuery,
    census,
    enumerate_data_sets,
    enumerate_oracle,
    record_to_json,
)
from .core import (
    MarkedDataSet,
    ParseError,
    canonicalize,
    classify,
    data_set_to_json,
    format_data_set,
    genus,
    parse_data_set,
    validate,
    validation_report_to_json,
)
from .fillability import (
    build_profile,
    classify_assembly,
    classify_marked,
    search_profiles,
    verdict_to_json,
    verify_profile,
    write_profile_csv,
)
from .gluing import (
    Assembly,
    Ext,
    Rot,
    Twist,
    assemble,
    assembly_from_json,
    build_edge,
    compatible_pairs,
    glue,
    self_glue,
    word_to_json,
)
from .openbook import (
    descriptor_to_json,
    integral_resolution,
    page_descriptor,
    surgery_description,
    surgery_to_json,
    veering,
)
from .realization import draw_polygon_svg, polygon_realization, verify_realization


def _wants_json(args) -> bool:
    if getattr(args, "json", False):
        return True
    return os.environ.get("PERISURF_FORMAT", "").strip().lower() == "json"


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _frac(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _token_str(t) -> str:
    if isinstance(t, Ext):
        return f"ext({t.piece},{t.sign})"
    if isinstance(t, Twist):
        return f"twist({t.curve},{t.power:+d})"
    if isinstance(t, Rot):
        return f"rot({t.orbit},{_frac(t.slope)})"
    raise TypeError(f"unknown token {t!r}")


def _word_str(word) -> str:
    return " ".join(_token_str(t) for t in word.tokens)


_AT = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*$")
_EDGE = re.compile(r"^\s*\(\s*(\d+)\s*:\s*(\d+)\s*\)\s*~\s*"
                   r"\(\s*(\d+)\s*:\s*(\d+)\s*\)\s*$")


def _parse_at(text: str) -> tuple[int, int]:
    m = _AT.match(text)
    if not m:
        raise ParseError(f"expected i:j, got {text!r}", 0)
    return int(m.group(1)), int(m.group(2))


def _parse_edge(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Parse ``(a:i)~(b:j)``: cone ``a`` of piece ``i`` meets cone ``b`` of
    piece ``j``; pieces are numbered from 1 on the command line."""
    m = _EDGE.match(text)
    if not m:
        raise ParseError(f"expected (cone:piece)~(cone:piece), got {text!r}", 0)
    ca, pa, cb, pb = (int(g) for g in m.groups())
    if pa < 1 or pb < 1:
        raise ParseError(f"pieces are numbered from 1 in {text!r}", 0)
    return (pa - 1, ca), (pb - 1, cb)


def _parse_marked(text: str) -> MarkedDataSet:
    d = parse_data_set(text)
    if not isinstance(d, MarkedDataSet):
        raise ValueError(
            f"{format_data_set(d)} has no sign or marks; write it like "
            '"(6_+,0;(1,2),(1,3),(1,6),[3])"')
    return d


def _build_assembly(args) -> Assembly:
    if getattr(args, "file", None):
        if args.file == "-":
            payload = json.load(sys.stdin)
        else:
            with open(args.file) as fh:
                payload = json.load(fh)
        return assembly_from_json(payload)
    pieces = tuple(_parse_marked(p) for p in args.pieces)
    edges = []
    for text in args.edge or ():
        (pa, ca), (pb, cb) = _parse_edge(text)
        edges.append(build_edge(pieces, (pa, ca), (pb, cb)))
    self_edges = []
    for text in args.self_edge or ():
        (pa, ca), (pb, cb) = _parse_edge(text)
        if pa != pb:
            raise ValueError(f"self edge {text!r} must stay on one piece")
        if ca == cb:
            raise ValueError(f"self edge {text!r} repeats a cone")
        self_edges.append((pa, min(ca, cb), max(ca, cb)))
    return Assembly(pieces, tuple(edges), tuple(self_edges))


# --- subcommand handlers ------------------------------------------------------


def _cmd_validate(args) -> int:
    report = validate(parse_data_set(args.data_set))
    if _wants_json(args):
        _print_json(validation_report_to_json(report))
    elif report.valid:
        print("valid")
    else:
        for ident, detail in report.violations:
            print(f"({ident}) {detail}")
    return 0 if report.valid else 1


def _cmd_genus(args) -> int:
    g = genus(parse_data_set(args.data_set))
    if _wants_json(args):
        _print_json({"genus": g})
    else:
        print(g)
    return 0


def _cmd_classify(args) -> int:
    ac = classify(parse_data_set(args.data_set))
    if _wants_json(args):
        _print_json({"label": ac.label, "kind": ac.kind,
                     "irreducible": ac.irreducible})
    else:
        print(ac.label)
    return 0


def _cmd_polygon(args) -> int:
    d = parse_data_set(args.data_set)
    pres = polygon_realization(d)
    report = verify_realization(pres, d)
    svg_path = getattr(args, "svg", None)
    if svg_path:
        draw_polygon_svg(pres, svg_path)
    if _wants_json(args):
        payload = {
            "sides": pres.sides,
            "pairing": list(pres.pairing),
            "rotation_step": pres.rotation_step,
            "degree": pres.degree,
            "outside_theorem": pres.outside_theorem,
            "verification": {
                "euler_genus": report.euler_genus,
                "rh_genus": report.rh_genus,
                "involution_ok": report.involution_ok,
                "equivariance_ok": report.equivariance_ok,
                "ok": report.ok,
            },
        }
        if svg_path:
            payload["svg"] = svg_path
        _print_json(payload)
    else:
        print(f"sides: {pres.sides}")
        pairs = sorted({tuple(sorted((i + 1, j)))
                        for i, j in enumerate(pres.pairing)})
        print("pairing: " + " ".join(f"{i}~{j}" for i, j in pairs))
        print(f"rotation step: {pres.rotation_step}")
        print(f"genus: {report.euler_genus} (expected {report.rh_genus})")
        if pres.outside_theorem:
            print("note: genus below 2, outside the guaranteed range")
        print(f"verified: {'yes' if report.ok else 'NO'}")
        if svg_path:
            print(f"svg written to {svg_path}")
    return 0 if report.ok else 1


def _cmd_glue(args) -> int:
    d1 = parse_data_set(args.first)
    d2 = parse_data_set(args.second)
    if args.at is None:
        pairs = compatible_pairs(d1, d2)
        if _wants_json(args):
            _print_json({"compatible": [list(p) for p in pairs]})
        else:
            print(" ".join(f"{i}:{j}" for i, j in pairs) if pairs
                  else "no compatible cone pairs")
        return 0
    i, j = _parse_at(args.at)
    glued = canonicalize(glue(d1, d2, i, j))[0]
    if _wants_json(args):
        _print_json(data_set_to_json(glued))
    else:
        print(format_data_set(glued))
    return 0


def _cmd_self_glue(args) -> int:
    r, s = _parse_at(args.at)
    glued = canonicalize(self_glue(parse_data_set(args.data_set), r, s))[0]
    if _wants_json(args):
        _print_json(data_set_to_json(glued))
    else:
        print(format_data_set(glued))
    return 0


def _boundary_json(result) -> list[dict]:
    return [{"piece": e.piece, "mark": e.mark, "consumed": e.consumed,
             "output_index": e.output_index}
            for e in result.ledger.entries]


def _cmd_assemble(args) -> int:
    result = assemble(_build_assembly(args))
    if _wants_json(args):
        _print_json({
            "data_set": data_set_to_json(result.data_set),
            "genus": genus(result.data_set),
            "word": word_to_json(result.word),
            "boundary": _boundary_json(result),
            "mixed_signs": result.ledger.mixed_signs,
        })
        return 0
    print(format_data_set(result.data_set))
    print(f"genus: {genus(result.data_set)}")
    print(f"word: {_word_str(result.word)}")
    for e in result.ledger.entries:
        where = "glued" if e.consumed else f"kept as output {e.output_index}"
        print(f"piece {e.piece + 1} mark {e.mark}: {where}")
    if result.ledger.mixed_signs:
        print("note: pieces carry mixed signs")
    return 0


def _print_descriptor(d) -> None:
    print(f"page genus: {d.page_genus}")
    for o in d.boundary_orbits:
        circles = "1 circle" if o.orbit_size == 1 else f"{o.orbit_size} circles"
        tail = "invariant" if o.invariant else \
            f"per period {_frac(o.per_period_slope)}"
        print(f"orbit {o.mark}: {circles}, slope {_frac(o.full_period_slope)}"
              f" ({tail})")
    print(f"word: {_word_str(d.monodromy)}")
    print(f"positive word: {'yes' if d.positive_word else 'no'}")


def _cmd_page(args) -> int:
    d = page_descriptor(_parse_marked(args.data_set))
    if _wants_json(args):
        _print_json(descriptor_to_json(d))
    else:
        _print_descriptor(d)
    return 0


def _cmd_veering(args) -> int:
    v = veering(page_descriptor(_parse_marked(args.data_set)))
    if _wants_json(args):
        _print_json({"veering": v.value})
    else:
        print(v.value)
    return 0


def _cmd_surgery(args) -> int:
    desc = surgery_description(page_descriptor(_parse_marked(args.data_set)))
    if _wants_json(args):
        _print_json(surgery_to_json(desc))
        return 0
    for e in desc.entries:
        if e.kind == "none":
            print(f"orbit {e.orbit}: no surgery")
            continue
        line = (f"orbit {e.orbit}: {e.kind} surgery, "
                f"topological {_frac(e.topological)}, "
                f"contact {_frac(e.contact)}")
        if e.legendrian_realizable:
            line += " (legendrian)"
        print(line)
    return 0


def _cmd_resolve(args) -> int:
    resolved = integral_resolution(page_descriptor(_parse_marked(args.data_set)))
    if _wants_json(args):
        _print_json(descriptor_to_json(resolved))
    else:
        _print_descriptor(resolved)
    return 0


def _verdict_headline(v) -> str:
    if v.verdict == "Unknown":
        return "Unknown"
    if v.certificate == "left-veering-resolution" and v.notes:
        return f"{v.verdict} ({v.notes[0]})"
    return f"{v.verdict} ({v.certificate})"


def _cmd_fill(args) -> int:
    assembly_mode = bool(args.file or args.edge or args.self_edge
                         or len(args.pieces) > 1)
    if assembly_mode:
        verdict = classify_assembly(_build_assembly(args))
    else:
        if not args.pieces:
            raise ValueError("fill needs a marked data set or an assembly")
        verdict = classify_marked(_parse_marked(args.pieces[0]))
    if _wants_json(args):
        _print_json(verdict_to_json(verdict))
        return 0
    headline = _verdict_headline(verdict)
    print(headline)
    for name, held in verdict.hypotheses:
        print(f"  - {name}: {'yes' if held else 'no'}")
    for note in verdict.notes:
        if note not in headline:
            print(f"  note: {note}")
    return 0


def _cmd_profile(args) -> int:
    if args.search:
        pp = search_profiles(args.p, args.q, candidates=args.candidates,
                             tolerance=args.tolerance)
        if pp is None:
            if _wants_json(args):
                _print_json({"found": False})
            else:
                print("no verified profile found")
            return 1
        report = verify_profile(pp, args.tolerance)
    else:
        pp = build_profile(args.p, args.q, args.K, args.H,
                           peak=args.peak, samples=args.samples)
        report = verify_profile(pp, args.tolerance)
    if args.csv:
        write_profile_csv(pp, args.csv)
    if _wants_json(args):
        payload = {
            "p": pp.p, "q": pp.q, "K": pp.K, "H": pp.H,
            "samples": len(pp.grid),
            "contact_ok": report.contact_ok,
            "symplectic_ok": report.symplectic_ok,
            "ok": report.ok,
            "first_violation": list(report.first_violation)
            if report.first_violation else None,
            "inconclusive": len(report.inconclusive),
        }
        if args.search:
            payload["found"] = True
        if args.csv:
            payload["csv"] = args.csv
        _print_json(payload)
        return 0 if report.ok else 1
    print(f"profile p={pp.p} q={pp.q} K={pp.K} H={pp.H} "
          f"samples={len(pp.grid)}")
    for name, ok in (("contact", report.contact_ok),
                     ("symplectic", report.symplectic_ok)):
        print(f"{name}: {'ok' if ok else 'FAILED'}")
    if report.first_violation:
        r, cond, value = report.first_violation
        print(f"first violation: {cond} at r={r:.6g} (value {value:.6g})")
    if report.inconclusive:
        print(f"inconclusive samples: {len(report.inconclusive)}")
    if args.csv:
        print(f"csv written to {args.csv}")
    print("verified" if report.ok else "not verified")
    return 0 if report.ok else 1


def _cmd_enumerate(args) -> int:
    fn = enumerate_oracle if args.oracle else enumerate_data_sets
    found = fn(args.degree, args.genus)
    if _wants_json(args):
        _print_json({"degree": args.degree, "genus": args.genus,
                     "count": len(found),
                     "data_sets": [format_data_set(d) for d in found]})
    else:
        for d in found:
            print(format_data_set(d))
    return 0


def _cmd_census(args) -> int:
    degrees = None
    if args.degrees:
        degrees = tuple(int(x) for x in args.degrees.split(","))
    query = CensusQuery(genus=args.genus, max_genus=args.max_genus,
                        degrees=degrees, action_class=args.action_class)
    records = census(query, workers=args.workers, oracle=args.oracle)
    lines = [json.dumps(record_to_json(r), separators=(",", ":"))
             for r in records]
    if args.output:
        with open(args.output, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))
        print(f"{len(records)} records written to {args.output}")
    else:
        for line in lines:
            print(line)
    return 0


# --- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perisurf",
        description="combinatorics of periodic surface maps via data sets")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, **kwargs):
        p = sub.add_parser(name, help=help_text, **kwargs)
        p.add_argument("--json", action="store_true",
                       help="emit JSON (also via PERISURF_FORMAT=json)")
        p.set_defaults(func=handler)
        return p

    p = add("validate", _cmd_validate,
            "check the admissibility conditions (exit 1 when invalid)")
    p.add_argument("data_set")

    p = add("genus", _cmd_genus, "genus of the surface the data set lives on")
    p.add_argument("data_set")

    p = add("classify", _cmd_classify,
            "action class: rotational, type1[-irreducible] or type2")
    p.add_argument("data_set")

    p = add("polygon", _cmd_polygon,
            "polygon side pairing realizing an irreducible data set")
    p.add_argument("data_set")
    p.add_argument("--svg", metavar="PATH", help="draw the pairing to a file")

    p = add("glue", _cmd_glue,
            "glue two data sets (omit --at to list compatible cone pairs)")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--at", metavar="I:J",
                   help="cone of the first set : cone of the second")

    p = add("self-glue", _cmd_self_glue,
            "glue two compatible cones of one data set")
    p.add_argument("data_set")
    p.add_argument("--at", metavar="R:S", required=True)

    for name, handler, help_text in (
            ("assemble", _cmd_assemble,
             "glue marked pieces along edges into one marked data set"),
            ("fill", _cmd_fill,
             "fillability verdict for a marked data set or an assembly")):
        p = add(name, handler, help_text)
        p.add_argument("pieces", nargs="*",
                       help='marked pieces like "(6_+,0;(1,2),(1,3),(1,6),[3])"')
        p.add_argument("--edge", action="append", metavar="(A:I)~(B:J)",
                       help="cone A of piece I meets cone B of piece J "
                            "(pieces numbered from 1)")
        p.add_argument("--self-edge", action="append", dest="self_edge",
                       metavar="(A:I)~(B:I)", help="edge within one piece")
        p.add_argument("--file", metavar="PATH",
                       help="read the assembly as JSON ('-' for stdin)")

    for name, handler, help_text in (
            ("page", _cmd_page, "open book page carried by a marked data set"),
            ("veering", _cmd_veering, "veering direction of the monodromy"),
            ("surgery", _cmd_surgery, "surgery description of the binding"),
            ("resolve", _cmd_resolve,
             "resolve -1/p boundary rotations into integral twists")):
        p = add(name, handler, help_text)
        p.add_argument("data_set")

    p = add("profile", _cmd_profile,
            "build and verify a filling profile for slope q/p "
            "(exit 1 when verification fails)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--K", type=int, default=None,
                   help="collar offset (default: smallest workable)")
    p.add_argument("--H", type=float, default=None,
                   help="binding height (default: clears the collar)")
    p.add_argument("--peak", type=float, default=1.0,
                   help="crest scale of the middle arc")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--csv", metavar="PATH", help="dump r,f0,g0 samples")
    p.add_argument("--search", action="store_true",
                   help="scan (K,H,peak) shapes instead of building one")
    p.add_argument("--candidates", type=int, default=1000,
                   help="search budget with --search")

    p = add("enumerate", _cmd_enumerate,
            "all valid data sets of one degree and genus")
    p.add_argument("degree", type=int)
    p.add_argument("genus", type=int)
    p.add_argument("--oracle", action="store_true",
                   help="use the brute-force enumerator")

    p = add("census", _cmd_census,
            "census of data sets as JSON lines")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--genus", type=int)
    group.add_argument("--max-genus", type=int, dest="max_genus")
    p.add_argument("--degrees", metavar="N,N,...",
                   help="restrict to these degrees")
    p.add_argument("--class", dest="action_class",
                   choices=("rotational", "type1", "type1-irreducible", "type2"),
                   help="keep one action class")
    p.add_argument("--workers", type=int, default=None,
                   help="process pool size (default: all cores)")
    p.add_argument("--oracle", action="store_true",
                   help="use the brute-force enumerator")
    p.add_argument("--output", metavar="PATH",
                   help="write JSON lines to a file instead of stdout")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
