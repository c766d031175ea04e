"""Command-line entry point.

Exit codes: 0 on success, 1 on specification errors (lexing, parsing,
name binding, validation), 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagnostics import diagnostic_json, format_diagnostic
from .pipeline import compile_spec
from .render import render_dot

__all__ = ["main"]


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="protogen",
        description=("Generate type-safe fluent-API class definitions "
                     "from a method-chain specification."))
    parser.add_argument("spec", help="specification file (UTF-8 text)")
    parser.add_argument("-o", "--out", metavar="DIR",
                        help="output directory for generated sources")
    parser.add_argument("--package", metavar="NAME", default=None,
                        help="package name for generated files")
    parser.add_argument("--emit-dot", metavar="PATH", default=None,
                        help="write the annotated automata as a DOT file")
    parser.add_argument("--check-only", action="store_true",
                        help="validate the specification, write no sources")
    parser.add_argument("--json-diagnostics", action="store_true",
                        help="print diagnostics as a JSON list on stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    if not args.check_only and args.out is None:
        parser.print_usage(sys.stderr)
        print("protogen: error: --out is required unless --check-only is given",
              file=sys.stderr)
        return 2

    spec_path = Path(args.spec)
    try:
        text = spec_path.read_text(encoding="utf-8")
    except OSError as err:
        print(f"protogen: error: cannot read {args.spec}: {err}", file=sys.stderr)
        return 2

    result = compile_spec(text, package=args.package,
                          want_files=not args.check_only)

    if args.json_diagnostics:
        print(json.dumps(
            [diagnostic_json(d, str(spec_path)) for d in result.diagnostics],
            indent=2))
    else:
        for diag in result.diagnostics:
            print(format_diagnostic(diag, str(spec_path)), file=sys.stderr)

    if args.emit_dot and result.annotated:
        dot = "".join(render_dot(ann, name=cls)
                      for cls, ann in result.annotated.items())
        try:
            Path(args.emit_dot).write_text(dot, encoding="utf-8", newline="\n")
        except OSError as err:
            print(f"protogen: error: cannot write {args.emit_dot}: {err}",
                  file=sys.stderr)
            return 2

    if not result.ok:
        return 1
    if args.check_only:
        return 0

    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for rendered in result.files:
            target = out_dir / rendered.relative_path
            target.parent.mkdir(parents=True, exist_ok=True)
            # Rendered output is byte-exact: UTF-8 with LF line endings.
            target.write_text(rendered.contents, encoding="utf-8", newline="\n")
    except OSError as err:
        print(f"protogen: error: cannot write output: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
