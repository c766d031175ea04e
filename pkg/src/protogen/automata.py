"""Chain automata and their determinization.

Each chain declaration yields an NFA accepting the chain's method
sequences followed by one transition consuming the chain's return type.
The automata of one class are merged by fusing initial and accepting
states, then converted to a minimal DFA by double reversal (reverse,
subset-construct, reverse, subset-construct).

Transition labels are symbols: either a method signature or a type
reference. Two method symbols are equal when their signatures match
(parameter names ignored); two type symbols are equal when their
references are structurally equal; a method never equals a type.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Union

from .diagnostics import Diagnostic, Severity
from .spec_ast import (
    Alt,
    ChainDecl,
    ChainExpr,
    ClassDecl,
    MethodElem,
    MethodSig,
    Repeat,
    Seq,
    SpecModel,
    TypeParamDecl,
    TypeRef,
)

__all__ = [
    "MethodSymbol",
    "TypeSymbol",
    "Symbol",
    "symbols_equal",
    "NFA",
    "DFA",
    "chain_automaton",
    "merge",
    "determinize",
    "canonicalize_signatures",
    "first_sigs",
    "last_sigs",
    "nullable",
]


class MethodSymbol:
    """Transition label consuming a method invocation."""

    __slots__ = ("sig",)

    def __init__(self, sig: MethodSig) -> None:
        self.sig = sig

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MethodSymbol):
            return NotImplemented
        return self.sig.signature_key() == other.sig.signature_key()

    def __hash__(self) -> int:
        return hash(self.sig.signature_key())

    def __repr__(self) -> str:
        return f"MethodSymbol({self.sig.text()})"

    def text(self) -> str:
        return self.sig.text()


class TypeSymbol:
    """Transition label consuming a return type."""

    __slots__ = ("ref",)

    def __init__(self, ref: TypeRef) -> None:
        self.ref = ref

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TypeSymbol):
            return NotImplemented
        return self.ref == other.ref

    def __hash__(self) -> int:
        return hash(self.ref)

    def __repr__(self) -> str:
        return f"TypeSymbol({self.ref.text()})"

    def text(self) -> str:
        return self.ref.text()


Symbol = Union[MethodSymbol, TypeSymbol]


def symbols_equal(a: Symbol, b: Symbol) -> bool:
    """Equality used for determinization.

    True when both consume methods with the same signature, or both
    consume structurally equal types; false otherwise (including the
    mixed case). Parameter names never participate.
    """
    if isinstance(a, MethodSymbol) and isinstance(b, MethodSymbol):
        return a.sig.signature_key() == b.sig.signature_key()
    if isinstance(a, TypeSymbol) and isinstance(b, TypeSymbol):
        return a.ref == b.ref
    return False


@dataclass
class NFA:
    """States are 0..num_states-1; a transition label of None is epsilon."""

    num_states: int
    initial: int
    accepting: frozenset[int]
    transitions: tuple[tuple[int, Symbol | None, int], ...]

    @property
    def states(self) -> range:
        return range(self.num_states)


@dataclass
class DFA:
    """Deterministic automaton; per-state edge lists preserve symbol order.

    No state carries two equal-symbol outgoing edges and there are no
    epsilon transitions. Missing edges reject.
    """

    num_states: int
    initial: int
    accepting: frozenset[int]
    edges: list[list[tuple[Symbol, int]]]

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def transitions(self) -> list[tuple[int, Symbol, int]]:
        return [(src, sym, dst)
                for src in self.states
                for sym, dst in self.edges[src]]

    def copy(self) -> "DFA":
        return DFA(self.num_states, self.initial, self.accepting,
                   [list(row) for row in self.edges])

    def accepts(self, word: Iterable[Symbol]) -> bool:
        state = self.initial
        for sym in word:
            for edge_sym, dst in self.edges[state]:
                if symbols_equal(edge_sym, sym):
                    state = dst
                    break
            else:
                return False
        return state in self.accepting


# --- construction -----------------------------------------------------------


class _NfaBuilder:
    def __init__(self) -> None:
        self.count = 0
        self.transitions: list[tuple[int, Symbol | None, int]] = []

    def fresh(self) -> int:
        self.count += 1
        return self.count - 1

    def edge(self, src: int, sym: Symbol | None, dst: int) -> None:
        self.transitions.append((src, sym, dst))

    def build(self, expr: ChainExpr) -> tuple[int, int]:
        """Thompson construction; returns (start, end) states."""
        if isinstance(expr, MethodElem):
            s, e = self.fresh(), self.fresh()
            self.edge(s, MethodSymbol(expr.sig), e)
            return s, e
        if isinstance(expr, Seq):
            first_s, prev_e = self.build(expr.items[0])
            for item in expr.items[1:]:
                s, e = self.build(item)
                self.edge(prev_e, None, s)
                prev_e = e
            return first_s, prev_e
        if isinstance(expr, Alt):
            s, e = self.fresh(), self.fresh()
            for option in expr.options:
                os, oe = self.build(option)
                self.edge(s, None, os)
                self.edge(oe, None, e)
            return s, e
        assert isinstance(expr, Repeat)
        s, e = self.fresh(), self.fresh()
        inner_s, inner_e = self.build(expr.item)
        self.edge(s, None, inner_s)
        self.edge(inner_e, None, e)
        if expr.op in ("?", "*"):
            self.edge(s, None, e)
        if expr.op in ("*", "+"):
            self.edge(inner_e, None, inner_s)
        return s, e


def chain_automaton(chain: ChainDecl) -> NFA:
    """NFA accepting ``w . returnType`` for every method word w of the chain."""
    builder = _NfaBuilder()
    start, end = builder.build(chain.expr)
    accept = builder.fresh()
    builder.edge(end, TypeSymbol(chain.return_type), accept)
    return NFA(num_states=builder.count, initial=start,
               accepting=frozenset({accept}),
               transitions=tuple(builder.transitions))


def merge(automata: list[NFA]) -> NFA:
    """Union of chain automata by fusing all initial and accepting states."""
    if not automata:
        raise ValueError("merge requires at least one automaton")
    initial, accept = 0, 1
    count = 2
    transitions: list[tuple[int, Symbol | None, int]] = []
    for nfa in automata:
        remap: dict[int, int] = {}
        for q in nfa.states:
            if q == nfa.initial:
                remap[q] = initial
            elif q in nfa.accepting:
                remap[q] = accept
            else:
                remap[q] = count
                count += 1
        for src, sym, dst in nfa.transitions:
            transitions.append((remap[src], sym, remap[dst]))
    return NFA(num_states=count, initial=initial,
               accepting=frozenset({accept}), transitions=tuple(transitions))


# --- determinization --------------------------------------------------------


@dataclass
class _Raw:
    """Automaton in adjacency form over interned symbol indices."""

    num_states: int
    starts: frozenset[int]
    accepting: frozenset[int]
    # per state: list of (symbol index or -1 for epsilon, target)
    adj: list[list[tuple[int, int]]]


def _intern(nfa: NFA) -> tuple[list[Symbol], _Raw]:
    """Collect the alphabet in first-appearance order and index transitions."""
    alphabet: list[Symbol] = []
    adj: list[list[tuple[int, int]]] = [[] for _ in nfa.states]
    for src, sym, dst in nfa.transitions:
        if sym is None:
            idx = -1
        else:
            for i, known in enumerate(alphabet):
                if symbols_equal(known, sym):
                    idx = i
                    break
            else:
                alphabet.append(sym)
                idx = len(alphabet) - 1
        adj[src].append((idx, dst))
    return alphabet, _Raw(nfa.num_states, frozenset({nfa.initial}),
                          nfa.accepting, adj)


def _reverse(raw: _Raw) -> _Raw:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(raw.num_states)]
    for src in range(raw.num_states):
        for idx, dst in raw.adj[src]:
            adj[dst].append((idx, src))
    return _Raw(raw.num_states, raw.accepting, raw.starts, adj)


def _closure(raw: _Raw, states: Iterable[int]) -> frozenset[int]:
    seen = set(states)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for idx, dst in raw.adj[q]:
            if idx == -1 and dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return frozenset(seen)


def _subset(raw: _Raw, num_symbols: int) -> _Raw:
    """Reachable-subset construction; the empty sink is never materialized."""
    start = _closure(raw, raw.starts)
    subsets: dict[frozenset[int], int] = {start: 0}
    order = [start]
    adj: list[list[tuple[int, int]]] = [[]]
    work = deque([start])
    while work:
        current = work.popleft()
        src_id = subsets[current]
        for idx in range(num_symbols):
            targets = {dst for q in current for i, dst in raw.adj[q] if i == idx}
            if not targets:
                continue
            closed = _closure(raw, targets)
            if closed not in subsets:
                subsets[closed] = len(order)
                order.append(closed)
                adj.append([])
                work.append(closed)
            adj[src_id].append((idx, subsets[closed]))
    accepting = frozenset(
        subsets[s] for s in order if s & raw.accepting)
    return _Raw(len(order), frozenset({0}), accepting, adj)


def determinize(nfa: NFA) -> DFA:
    """Minimal DFA with the same language, via double reversal.

    The output numbering is canonical: breadth-first from the initial
    state with out-edges ordered by each symbol's first appearance in the
    input NFA (which follows specification order for chain automata).
    """
    alphabet, raw = _intern(nfa)
    pass1 = _subset(_reverse(raw), len(alphabet))
    pass2 = _subset(_reverse(pass1), len(alphabet))
    return _renumber(pass2, alphabet)


def _renumber(raw: _Raw, alphabet: list[Symbol]) -> DFA:
    (old_initial,) = raw.starts
    ordered_adj = [sorted(row) for row in raw.adj]
    numbering = {old_initial: 0}
    bfs = deque([old_initial])
    order = [old_initial]
    while bfs:
        q = bfs.popleft()
        for _idx, dst in ordered_adj[q]:
            if dst not in numbering:
                numbering[dst] = len(numbering)
                order.append(dst)
                bfs.append(dst)
    edges: list[list[tuple[Symbol, int]]] = [[] for _ in order]
    for q in order:
        edges[numbering[q]] = [(alphabet[idx], numbering[dst])
                               for idx, dst in ordered_adj[q]]
    accepting = frozenset(numbering[q] for q in raw.accepting if q in numbering)
    return DFA(num_states=len(order), initial=0, accepting=accepting,
               edges=edges)


# --- signature canonicalization ---------------------------------------------


def canonicalize_signatures(spec: SpecModel) -> tuple[SpecModel, list[Diagnostic]]:
    """Unify equal-signature method occurrences within each class.

    Signature-equal occurrences merge into single DFA transitions, so
    their parameter names (and inline action) must agree; where they
    differ, the earliest declaration in document order wins and a
    PARAM_NAME_MISMATCH warning is emitted for name disagreements.
    """
    warnings: list[Diagnostic] = []
    classes = []
    for cls in spec.classes:
        canonical: dict[tuple, MethodSig] = {}
        warned: set[tuple] = set()

        def canon(sig: MethodSig) -> MethodSig:
            key = sig.signature_key()
            if key not in canonical:
                canonical[key] = sig
                return sig
            kept = canonical[key]
            kept_names = [p.name for p in kept.params]
            new_names = [p.name for p in sig.params]
            if kept_names != new_names and key not in warned:
                warned.add(key)
                warnings.append(Diagnostic(
                    code="PARAM_NAME_MISMATCH",
                    severity=Severity.WARNING,
                    message=(f"method {sig.name!r} is declared with parameter "
                             f"names {new_names} but earlier with {kept_names}; "
                             f"the earlier names are used"),
                    span=sig.span,
                ))
            return kept

        def rewrite(expr: ChainExpr) -> ChainExpr:
            if isinstance(expr, MethodElem):
                return MethodElem(sig=canon(expr.sig))
            if isinstance(expr, Seq):
                return Seq(items=tuple(rewrite(i) for i in expr.items))
            if isinstance(expr, Alt):
                return Alt(options=tuple(rewrite(o) for o in expr.options))
            assert isinstance(expr, Repeat)
            return Repeat(item=rewrite(expr.item), op=expr.op)

        members = tuple(
            replace(m, expr=rewrite(m.expr)) if isinstance(m, ChainDecl) else m
            for m in cls.members)
        classes.append(replace(cls, members=members))
    return SpecModel(classes=tuple(classes)), warnings


# --- regex symbol analysis ---------------------------------------------------


def nullable(expr: ChainExpr) -> bool:
    """Whether the expression matches the empty method sequence."""
    if isinstance(expr, MethodElem):
        return False
    if isinstance(expr, Seq):
        return all(nullable(i) for i in expr.items)
    if isinstance(expr, Alt):
        return any(nullable(o) for o in expr.options)
    assert isinstance(expr, Repeat)
    return expr.op in ("?", "*") or nullable(expr.item)


def first_sigs(expr: ChainExpr) -> list[MethodSig]:
    """Method signatures that can start a match, deduplicated in order."""
    return _dedup(_first(expr))


def last_sigs(expr: ChainExpr) -> list[MethodSig]:
    """Method signatures that can end a match, deduplicated in order."""
    return _dedup(_last(expr))


def _first(expr: ChainExpr) -> list[MethodSig]:
    if isinstance(expr, MethodElem):
        return [expr.sig]
    if isinstance(expr, Seq):
        out: list[MethodSig] = []
        for item in expr.items:
            out.extend(_first(item))
            if not nullable(item):
                break
        return out
    if isinstance(expr, Alt):
        return [s for o in expr.options for s in _first(o)]
    assert isinstance(expr, Repeat)
    return _first(expr.item)


def _last(expr: ChainExpr) -> list[MethodSig]:
    if isinstance(expr, MethodElem):
        return [expr.sig]
    if isinstance(expr, Seq):
        out: list[MethodSig] = []
        for item in reversed(expr.items):
            out.extend(_last(item))
            if not nullable(item):
                break
        return out
    if isinstance(expr, Alt):
        return [s for o in expr.options for s in _last(o)]
    assert isinstance(expr, Repeat)
    return _last(expr.item)


def _dedup(sigs: list[MethodSig]) -> list[MethodSig]:
    seen: set[tuple] = set()
    out = []
    for sig in sigs:
        key = sig.signature_key()
        if key not in seen:
            seen.add(key)
            out.append(sig)
    return out
