"""Binding-time annotation of DFA states.

Each state is assigned the set of type parameters already bound when the
state is reached. The analysis walks transitions with a FIFO queue; when
a transition would require an already-annotated target to carry a
different set, the target is cloned (outgoing transitions copied) and the
transition is redirected to the clone. Clones are keyed by their origin
state and assigned set and reused, which keeps the state count bounded by
|states| * 2^|type parameters| and terminates on self-loops.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automata import DFA, MethodSymbol, Symbol, TypeSymbol
from .spec_ast import ClassDecl, Resolution, TypeRef

__all__ = ["AnnotatedDFA", "param_set", "clone_state", "analyze"]


@dataclass
class AnnotatedDFA:
    """A DFA plus per-state bound-parameter sets.

    ``clone_origin`` maps every cloned state to the original state it was
    copied from (collapsed through chains of clones).
    """

    dfa: DFA
    bound: dict[int, frozenset[str]]
    clone_origin: dict[int, int] = field(default_factory=dict)

    def bound_set(self, state: int) -> frozenset[str]:
        return self.bound[state]


def param_set(sym: Symbol) -> frozenset[str]:
    """Type-parameter names appearing anywhere in a method's parameters.

    Collects through nested type arguments and array element types; the
    method name itself contributes nothing. Only defined for method
    symbols.
    """
    if not isinstance(sym, MethodSymbol):
        raise ValueError("param_set is defined for method symbols only")
    names: set[str] = set()
    for param in sym.sig.params:
        _collect_param_names(param.type, names)
    return frozenset(names)


def _collect_param_names(ref: TypeRef, names: set[str]) -> None:
    if ref.resolution is Resolution.TYPE_PARAM:
        names.add(ref.name)
    for arg in ref.args:
        _collect_param_names(arg, names)


def clone_state(q: int, dfa: DFA) -> int:
    """Append a fresh state whose outgoing transitions copy those of ``q``.

    The clone is accepting iff ``q`` is and has no incoming transitions.
    Mutates ``dfa`` and returns the new state id.
    """
    new_id = dfa.num_states
    dfa.num_states += 1
    dfa.edges.append(list(dfa.edges[q]))
    if q in dfa.accepting:
        dfa.accepting = dfa.accepting | {new_id}
    return new_id


def analyze(dfa: DFA, cls: ClassDecl) -> AnnotatedDFA:
    """Annotate (a working copy of) ``dfa`` for class ``cls``.

    The initial state receives the names of the class-head parameters.
    Type-consuming transitions are skipped by the main loop; the states
    they target receive the source state's set afterwards (those sets are
    never read by the encoder).
    """
    d = dfa.copy()
    bound: dict[int, frozenset[str]] = {}
    clone_origin: dict[int, int] = {}
    clones_of: dict[int, list[int]] = {}

    def origin_of(q: int) -> int:
        return clone_origin.get(q, q)

    queue: deque[tuple[int, int]] = deque()

    def enqueue_edges(q: int) -> None:
        for i in range(len(d.edges[q])):
            queue.append((q, i))

    bound[d.initial] = frozenset(p.name for p in cls.head_params)
    enqueue_edges(d.initial)

    while queue:
        qi, edge_idx = queue.popleft()
        sym, qj = d.edges[qi][edge_idx]
        if not isinstance(sym, MethodSymbol):
            continue
        needed = bound[qi] | param_set(sym)
        if qj not in bound:
            bound[qj] = needed
            enqueue_edges(qj)
        elif bound[qj] != needed:
            if not param_set(sym):
                # Referencing-only transition: overwrite in place, without
                # revisiting the target's outgoing transitions.
                bound[qj] = needed
            else:
                root = origin_of(qj)
                reuse = None
                for candidate in [root, *clones_of.get(root, [])]:
                    if bound.get(candidate) == needed:
                        reuse = candidate
                        break
                if reuse is None:
                    clone = clone_state(qj, d)
                    clone_origin[clone] = root
                    clones_of.setdefault(root, []).append(clone)
                    bound[clone] = needed
                    d.edges[qi][edge_idx] = (sym, clone)
                    enqueue_edges(clone)
                else:
                    d.edges[qi][edge_idx] = (sym, reuse)

    # States reachable only through type-consuming transitions (the accept
    # state) inherit the consuming state's set.
    changed = True
    while changed:
        changed = False
        for src in range(d.num_states):
            if src not in bound:
                continue
            for sym, dst in d.edges[src]:
                if isinstance(sym, TypeSymbol) and dst not in bound:
                    bound[dst] = bound[src]
                    changed = True

    return AnnotatedDFA(dfa=d, bound=bound, clone_origin=clone_origin)
