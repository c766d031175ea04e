"""Checks that an annotated DFA can be encoded into valid class definitions.

A state with two type-consuming transitions would need two same-signature
methods with different return types; a state mixing type- and
method-consuming transitions would need chaining off a foreign type.
Both have no valid encoding and are rejected. A merged first transition
whose contributing chains disagree on ``static`` is likewise rejected.
"""

from __future__ import annotations

from .automata import MethodSymbol, TypeSymbol, first_sigs, symbols_equal
from .binding import AnnotatedDFA
from .diagnostics import Diagnostic, Severity
from .spec_ast import ClassDecl

__all__ = ["validate"]


def validate(annotated: AnnotatedDFA, cls: ClassDecl) -> list[Diagnostic]:
    """Return diagnostics for ``cls``; an empty list means encodable."""
    diagnostics: list[Diagnostic] = []
    dfa = annotated.dfa
    for state in dfa.states:
        type_edges = [sym for sym, _ in dfa.edges[state]
                      if isinstance(sym, TypeSymbol)]
        method_edges = [sym for sym, _ in dfa.edges[state]
                        if isinstance(sym, MethodSymbol)]
        if len(type_edges) >= 2:
            types = ", ".join(sym.ref.text() for sym in type_edges)
            diagnostics.append(Diagnostic(
                code="MULTI_TYPE_EDGES",
                severity=Severity.ERROR,
                message=(f"state {state} of class {cls.name!r} consumes "
                         f"multiple types ({types}); same-signature methods "
                         f"cannot return different types"),
                span=type_edges[0].ref.span,
                state=state,
            ))
        if type_edges and method_edges:
            diagnostics.append(Diagnostic(
                code="MIXED_EDGES",
                severity=Severity.ERROR,
                message=(f"state {state} of class {cls.name!r} consumes both "
                         f"a type ({type_edges[0].ref.text()}) and methods "
                         f"({', '.join(m.sig.name for m in method_edges)}); "
                         f"methods cannot be chained on the consumed type"),
                span=type_edges[0].ref.span,
                state=state,
            ))
    diagnostics.extend(_check_static_conflicts(annotated, cls))
    return diagnostics


def _check_static_conflicts(annotated: AnnotatedDFA,
                            cls: ClassDecl) -> list[Diagnostic]:
    diagnostics = []
    dfa = annotated.dfa
    for sym, _dst in dfa.edges[dfa.initial]:
        if not isinstance(sym, MethodSymbol):
            continue
        contributing = [
            chain for chain in cls.chains
            if any(symbols_equal(MethodSymbol(sig), sym)
                   for sig in first_sigs(chain.expr))
        ]
        staticness = {chain.is_static for chain in contributing}
        if len(staticness) > 1:
            conflicting = next(c for c in contributing if not c.is_static)
            diagnostics.append(Diagnostic(
                code="STATIC_CONFLICT",
                severity=Severity.ERROR,
                message=(f"chains of class {cls.name!r} starting with "
                         f"{sym.sig.text()} disagree on 'static'"),
                span=conflicting.span,
                state=dfa.initial,
            ))
    return diagnostics
