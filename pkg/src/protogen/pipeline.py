"""End-to-end compilation pipeline: text in, rendered files out."""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import canonicalize_signatures, chain_automaton, determinize, merge
from .binding import AnnotatedDFA, analyze
from .diagnostics import Diagnostic, Severity, has_errors
from .lexer import LexError, tokenize
from .model import ApiModel, build_api_model, plan_bodies
from .parser import ParseError, parse_spec
from .render import RenderedFile, render
from .resolver import DuplicateClassName, DuplicateTypeParam, resolve
from .spec_ast import Span, SpecModel
from .validation import validate

__all__ = ["CompileResult", "compile_spec"]


@dataclass
class CompileResult:
    spec: SpecModel | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    annotated: dict[str, AnnotatedDFA] = field(default_factory=dict)
    model: ApiModel | None = None
    files: list[RenderedFile] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not has_errors(self.diagnostics)


def compile_spec(text: str, package: str | None = None,
                 layout: str = "flat", want_files: bool = True) -> CompileResult:
    """Run the full pipeline on specification source text.

    Diagnostics are collected rather than raised; files are rendered only
    when no error-severity diagnostic was produced and ``want_files``.
    """
    result = CompileResult()
    try:
        spec = resolve(parse_spec(tokenize(text)))
    except LexError as err:
        result.diagnostics.append(Diagnostic(
            code="LEX_ERROR", severity=Severity.ERROR, message=err.message,
            span=Span(err.line, err.col, err.line, err.col + 1)))
        return result
    except ParseError as err:
        result.diagnostics.append(Diagnostic(
            code="PARSE_ERROR", severity=Severity.ERROR, message=err.message,
            span=Span(err.line, err.col, err.line, err.col + 1)))
        return result
    except DuplicateClassName as err:
        result.diagnostics.append(Diagnostic(
            code="DUPLICATE_CLASS", severity=Severity.ERROR,
            message=err.message, span=err.span))
        return result
    except DuplicateTypeParam as err:
        result.diagnostics.append(Diagnostic(
            code="DUPLICATE_TYPE_PARAM", severity=Severity.ERROR,
            message=err.message, span=err.span))
        return result

    spec, warnings = canonicalize_signatures(spec)
    result.spec = spec
    result.diagnostics.extend(warnings)

    for cls in spec.classes:
        nfa = merge([chain_automaton(chain) for chain in cls.chains]) \
            if cls.chains else None
        if nfa is None:
            continue
        annotated = analyze(determinize(nfa), cls)
        result.annotated[cls.name] = annotated
        result.diagnostics.extend(validate(annotated, cls))

    if result.ok and want_files:
        model = plan_bodies(build_api_model(spec, result.annotated), spec)
        result.model = model
        result.files = render(model, package=package, layout=layout)
    return result
