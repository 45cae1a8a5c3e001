"""Batch front door.

Exit codes: 0 success, 1 domain failure (invalid input, failed
validation), 2 usage error. Output is deterministic for fixed inputs;
pass ``--format records`` where a machine-readable form exists.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .closure import closure_report, format_grid, format_records
from .document import from_xml, validate
from .matching import corpus_query, sign_function_classes
from .registry import ManifestError, load_manifest
from .render import RenderError, render_svg
from .sketch import SketchError, parse_sketch_text
from .store import Store
from .symbols import is_user_ref


def _load_registry(path: str):
    try:
        return load_manifest(path)
    except (OSError, ManifestError) as exc:
        raise SystemExit(f"error: cannot load manifest {path}: {exc}")


def _open_store(path: str | None, registry):
    return Store(path, registry) if path else None


def cmd_validate(args) -> int:
    registry = _load_registry(args.manifest)
    store = _open_store(args.store, registry)
    try:
        doc = from_xml(Path(args.sign).read_bytes())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    diagnostics = validate(doc, registry, store, args.role, args.session)
    for d in diagnostics:
        print(f"{d.code}: {d.message}")
    return 1 if diagnostics else 0


def cmd_closure(args) -> int:
    registry = _load_registry(args.manifest)
    report = closure_report(registry)
    if args.format == "records":
        text = format_records(report)
        if text:
            print(text)
    else:
        print(format_grid(report))
        records = format_records(report)
        if records:
            print(records)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    registry = _load_registry(args.manifest)
    store = Store(args.store, registry)
    counts: dict[str, int] = {}
    sign_hits: dict[str, set[str]] = {}
    signs_with_user = 0
    for sign_id, doc in store.signs():
        if any(is_user_ref(g.ref) for g in doc.glyphs):
            signs_with_user += 1
        for cls in sign_function_classes(doc, registry, store):
            sign_hits.setdefault(cls, set()).add(sign_id)
        for g in doc.glyphs:
            from .matching import glyph_function_classes
            for cls in glyph_function_classes(g.ref, registry, store):
                counts[cls] = counts.get(cls, 0) + 1
    print("class\tglyphs\tsigns")
    for cls in sorted(counts):
        print(f"{cls}\t{counts[cls]}\t{len(sign_hits.get(cls, ()))}")
    print(f"signs with user glyphs: {signs_with_user}")
    print(f"signs total: {len(store.sign_ids())}")
    return 0


def cmd_render(args) -> int:
    registry = _load_registry(args.manifest)
    store = _open_store(args.store, registry)
    try:
        doc = from_xml(Path(args.sign).read_bytes())
        svg = render_svg(doc, registry, store, scale=args.scale)
    except (OSError, ValueError, RenderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(args.output).write_text(svg, encoding="utf-8")
    return 0


def cmd_recognize(args) -> int:
    from .matching import build_index

    registry = _load_registry(args.manifest)
    try:
        sketch = parse_sketch_text(Path(args.sketch).read_text(encoding="utf-8"))
    except (OSError, SketchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    index = build_index(registry)
    if len(index) == 0:
        print("error: registry has no glyphs to match against",
              file=sys.stderr)
        return 1
    for ref, distance in index.match(sketch, args.k):
        print(f"{ref}\t{distance:.6f}")
    return 0


def cmd_query(args) -> int:
    registry = _load_registry(args.manifest)
    store = Store(args.store, registry)
    for sign_id in corpus_query(store, args.function_class):
        print(sign_id)
    return 0


def cmd_serve(args) -> int:  # pragma: no cover - runs a server
    from .service import serve

    serve(args.manifest, args.store, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signbench",
        description="SignWriting composition workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_manifest(p):
        p.add_argument("--manifest", required=True,
                       help="glyph catalog manifest (tsv)")

    p = sub.add_parser("validate", help="check a sign file")
    p.add_argument("sign", help="sign XML file")
    add_manifest(p)
    p.add_argument("--store", help="store directory (resolves user glyphs)")
    p.add_argument("--role", choices=["user", "researcher"],
                   default="researcher")
    p.add_argument("--session", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("closure", help="movement-lattice completion report")
    add_manifest(p)
    p.add_argument("--format", choices=["grid", "records"], default="grid")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("stats", help="glyph-frequency table over a store")
    add_manifest(p)
    p.add_argument("--store", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="render a sign file to SVG")
    p.add_argument("sign")
    add_manifest(p)
    p.add_argument("--store")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scale", type=int, default=1)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("recognize",
                       help="rank catalog glyphs against a sketch file")
    p.add_argument("sketch", help="one stroke per line: x,y x,y ...")
    add_manifest(p)
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("query", help="signs containing a function class")
    add_manifest(p)
    p.add_argument("--store", required=True)
    p.add_argument("function_class")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("serve", help="run the HTTP service")
    add_manifest(p)
    p.add_argument("--store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except Exception as exc:  # domain failures exit 1, not a traceback
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
