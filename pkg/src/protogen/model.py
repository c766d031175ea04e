"""Language-neutral model of the generated API.

States that consume no type and are not accepting become classes; the
initial state keeps the declared class name, the rest are numbered
``StateN`` in breadth-first order. Method transitions become methods
whose return type is either the type consumed at the target state or the
target's class. Method chains additionally build a tree of method- and
object-nodes consumed by handwritten evaluators through a generated
visitor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .automata import MethodSymbol, TypeSymbol, first_sigs, last_sigs
from .binding import AnnotatedDFA
from .diagnostics import Severity
from .spec_ast import (
    ClassDecl,
    MethodSig,
    Param,
    Resolution,
    SpecModel,
    TypeRef,
)
from .validation import validate

__all__ = [
    "InternalError",
    "JTypeParam",
    "GeneratedRef",
    "MethodDef",
    "ClassDef",
    "MethodNodeDef",
    "ObjectNodeDef",
    "NodeDef",
    "VisitorDef",
    "StepPlan",
    "TerminalPlan",
    "BodyPlan",
    "ApiModel",
    "build_api_model",
    "build_tree_model",
    "plan_bodies",
]


class InternalError(Exception):
    """The encoder was invoked on input that validation rejects."""


@dataclass(frozen=True)
class JTypeParam:
    """A generated type-parameter declaration with upper bounds."""

    name: str
    bounds: tuple[TypeRef, ...] = ()

    def text(self) -> str:
        if not self.bounds:
            return self.name
        return f"{self.name} extends " + " & ".join(b.text() for b in self.bounds)


@dataclass(frozen=True)
class GeneratedRef:
    """Reference to a generated state class, e.g. ``State2<K, V>``."""

    class_name: str
    args: tuple[str, ...] = ()

    def text(self) -> str:
        if not self.args:
            return self.class_name
        return self.class_name + "<" + ", ".join(self.args) + ">"


ReturnType = Union[TypeRef, GeneratedRef]


@dataclass
class StepPlan:
    """Append a method node and move to the next state object."""

    node: "MethodNodeDef"
    node_args: tuple[TypeRef, ...]
    next_ref: GeneratedRef
    action: str | None = None


@dataclass
class TerminalPlan:
    """Assemble the object node and finish the chain.

    ``result`` is ``evaluator`` (return the evaluator's value),
    ``construct`` (return a new instance of the generated class for the
    consumed type) or ``null`` (external consumed type without an
    evaluator).
    """

    node: "MethodNodeDef"
    node_args: tuple[TypeRef, ...]
    object_node: "ObjectNodeDef"
    object_args: tuple[TypeRef, ...]
    result: str
    consumed: TypeRef | None = None
    evaluator: str | None = None
    action: str | None = None


BodyPlan = Union[StepPlan, TerminalPlan]


@dataclass
class MethodDef:
    name: str
    sig: MethodSig
    is_static: bool
    type_params: tuple[JTypeParam, ...]
    params: tuple[Param, ...]
    return_type: ReturnType
    body: BodyPlan | None = None

    def signature_text(self) -> str:
        head = "static " if self.is_static else ""
        if self.type_params:
            head += "<" + ", ".join(t.text() for t in self.type_params) + "> "
        ret = self.return_type.text()
        params = ", ".join(p.text() for p in self.params)
        return f"{head}{ret} {self.name}({params})"


@dataclass
class ClassDef:
    name: str
    spec_class: str
    origin_state: int
    type_params: tuple[JTypeParam, ...]
    methods: list[MethodDef] = field(default_factory=list)
    is_entry: bool = False
    has_node_ctor: bool = False


@dataclass
class MethodNodeDef:
    """Tree node recording one method invocation; fields are its arguments."""

    name: str
    signature: MethodSig
    type_params: tuple[JTypeParam, ...]
    fields: tuple[Param, ...]


@dataclass
class ObjectNodeDef:
    """Tree node recording the construction of one consumed type."""

    name: str
    head: str
    type_params: tuple[JTypeParam, ...]


NodeDef = Union[MethodNodeDef, ObjectNodeDef]


@dataclass
class VisitorDef:
    name: str
    type_params: tuple[JTypeParam, ...]


@dataclass
class ApiModel:
    class_defs: list[ClassDef]
    node_defs: list[NodeDef]
    visitor: VisitorDef

    def to_json(self) -> dict:
        """Canonical serialization with stable field order."""
        return {
            "classes": [_class_json(c) for c in self.class_defs],
            "nodes": [_node_json(n) for n in self.node_defs],
            "visitor": {
                "name": self.visitor.name,
                "typeParams": [t.text() for t in self.visitor.type_params],
            },
        }


def _class_json(c: ClassDef) -> dict:
    return {
        "name": c.name,
        "specClass": c.spec_class,
        "originState": c.origin_state,
        "typeParams": [t.text() for t in c.type_params],
        "entry": c.is_entry,
        "methods": [_method_json(m) for m in c.methods],
    }


def _method_json(m: MethodDef) -> dict:
    out = {
        "name": m.name,
        "static": m.is_static,
        "typeParams": [t.text() for t in m.type_params],
        "params": [p.text() for p in m.params],
        "returns": m.return_type.text(),
    }
    if isinstance(m.body, StepPlan):
        out["body"] = {
            "kind": "step",
            "node": m.body.node.name,
            "next": m.body.next_ref.text(),
            "action": m.body.action,
        }
    elif isinstance(m.body, TerminalPlan):
        out["body"] = {
            "kind": "terminal",
            "node": m.body.node.name,
            "object": m.body.object_node.name,
            "result": m.body.result,
            "evaluator": m.body.evaluator,
            "action": m.body.action,
        }
    else:
        out["body"] = None
    return out


def _node_json(n: NodeDef) -> dict:
    if isinstance(n, MethodNodeDef):
        return {
            "kind": "method",
            "name": n.name,
            "typeParams": [t.text() for t in n.type_params],
            "fields": [p.text() for p in n.fields],
        }
    return {
        "kind": "object",
        "name": n.name,
        "typeParams": [t.text() for t in n.type_params],
    }


# --- tree model ---------------------------------------------------------------


def build_tree_model(spec: SpecModel) -> tuple[list[NodeDef], VisitorDef]:
    """One method node per distinct signature, one object node per distinct
    consumed type head, plus the visitor covering them all."""
    method_nodes: list[MethodNodeDef] = []
    by_signature: dict[tuple, MethodNodeDef] = {}
    # Node and visitor names may not collide with the declared classes.
    taken_names: set[str] = {cls.name for cls in spec.classes}

    def node_name(base: str) -> str:
        if base not in taken_names:
            taken_names.add(base)
            return base
        n = 2
        while f"{base}_{n}" in taken_names:
            n += 1
        taken_names.add(f"{base}_{n}")
        return f"{base}_{n}"

    for cls in spec.classes:
        for chain in cls.chains:
            for sig in chain.method_sigs():
                key = sig.signature_key()
                if key in by_signature:
                    continue
                fields = tuple(
                    Param(type=_array_of(p.type) if p.vararg else p.type,
                          name=p.name)
                    for p in sig.params)
                node = MethodNodeDef(
                    name=node_name(f"Method_{sig.name}"),
                    signature=sig,
                    type_params=_params_in_refs(
                        [f.type for f in fields], cls),
                    fields=fields,
                )
                by_signature[key] = node
                method_nodes.append(node)

    object_nodes: list[ObjectNodeDef] = []
    by_head: dict[str, ObjectNodeDef] = {}
    external_occurrences: dict[str, list[tuple[TypeRef, ClassDecl]]] = {}
    for cls in spec.classes:
        for chain in cls.chains:
            ref = chain.return_type
            head = ref.simple_name
            if ref.resolution is not Resolution.DECLARED_CLASS:
                external_occurrences.setdefault(head, []).append((ref, cls))
            if head in by_head:
                continue
            if ref.resolution is Resolution.DECLARED_CLASS:
                target = spec.class_named(ref.name)
                assert target is not None
                params = tuple(JTypeParam(p.name, p.bounds)
                               for p in target.head_params)
            else:
                params = ()  # filled below from all occurrences
            node = ObjectNodeDef(name=node_name(f"Object_{head}"),
                                 head=head, type_params=params)
            by_head[head] = node
            object_nodes.append(node)
    for head, occurrences in external_occurrences.items():
        node = by_head[head]
        if node.type_params:
            continue  # declared-class node, shape already fixed
        seen: list[JTypeParam] = []
        names: set[str] = set()
        for ref, cls in occurrences:
            for name in _ordered_param_names([ref], cls):
                if name not in names:
                    names.add(name)
                    decl = cls.param_decl(name)
                    bounds = decl.bounds if decl else ()
                    seen.append(JTypeParam(name, bounds))
        node.type_params = tuple(seen)

    node_defs: list[NodeDef] = [*method_nodes, *object_nodes]
    visitor_params: list[JTypeParam] = []
    visitor_names: set[str] = set()
    for node in node_defs:
        for tp in node.type_params:
            if tp.name not in visitor_names:
                visitor_names.add(tp.name)
                visitor_params.append(tp)
    visitor = VisitorDef(name=node_name("Visitor"),
                         type_params=tuple(visitor_params))
    return node_defs, visitor


def _array_of(ref: TypeRef) -> TypeRef:
    return TypeRef(name=ref.name, args=ref.args,
                   array_dims=ref.array_dims + 1,
                   resolution=ref.resolution, span=ref.span)


def _ordered_param_names(refs: list[TypeRef], cls: ClassDecl) -> list[str]:
    """Type-parameter names occurring in ``refs``, in class declaration order."""
    found: set[str] = set()

    def walk(ref: TypeRef) -> None:
        if ref.resolution is Resolution.TYPE_PARAM:
            found.add(ref.name)
        for arg in ref.args:
            walk(arg)

    for ref in refs:
        walk(ref)
    return [p.name for p in cls.type_params if p.name in found]


def _params_in_refs(refs: list[TypeRef], cls: ClassDecl) -> tuple[JTypeParam, ...]:
    out = []
    for name in _ordered_param_names(refs, cls):
        decl = cls.param_decl(name)
        bounds = decl.bounds if decl else ()
        out.append(JTypeParam(name, bounds))
    return tuple(out)


# --- class model --------------------------------------------------------------


def build_api_model(spec: SpecModel,
                    annotated: dict[str, AnnotatedDFA]) -> ApiModel:
    """Encode every class's annotated DFA; requires validation to pass."""
    node_defs, visitor = build_tree_model(spec)
    consumed_classes = {
        chain.return_type.name
        for cls in spec.classes
        for chain in cls.chains
        if chain.return_type.resolution is Resolution.DECLARED_CLASS
        and chain.return_type.array_dims == 0
    }
    class_defs: list[ClassDef] = []
    taken = {cls.name for cls in spec.classes}
    taken.update(n.name for n in node_defs)
    taken.add(visitor.name)

    for cls in spec.classes:
        ann = annotated.get(cls.name)
        if ann is None:
            # A class without chains still yields an (empty) entry class so
            # references to it stay meaningful.
            class_defs.append(ClassDef(
                name=cls.name, spec_class=cls.name, origin_state=0,
                type_params=tuple(JTypeParam(p.name, p.bounds)
                                  for p in cls.head_params),
                is_entry=True,
                has_node_ctor=cls.name in consumed_classes))
            continue
        if any(d.severity is Severity.ERROR for d in validate(ann, cls)):
            raise InternalError(
                f"class {cls.name!r} failed validation; cannot encode")
        class_defs.extend(_encode_class(cls, ann, taken, consumed_classes))

    model = ApiModel(class_defs=class_defs, node_defs=node_defs,
                     visitor=visitor)
    _check_overloads(model)
    _check_unique_names(model)
    return model


def _encode_class(cls: ClassDecl, ann: AnnotatedDFA, taken: set[str],
                  consumed_classes: set[str]) -> list[ClassDef]:
    dfa = ann.dfa
    order = _bfs_order(dfa)
    type_edge: dict[int, TypeRef | None] = {}
    for q in dfa.states:
        type_edge[q] = next(
            (sym.ref for sym, _ in dfa.edges[q] if isinstance(sym, TypeSymbol)),
            None)

    encodable = [q for q in order
                 if q not in dfa.accepting and type_edge[q] is None]
    name_of: dict[int, str] = {}
    counter = 1
    for q in encodable:
        if q == dfa.initial:
            name_of[q] = cls.name
            continue
        while f"State{counter}" in taken:
            counter += 1
        name_of[q] = f"State{counter}"
        taken.add(name_of[q])
        counter += 1

    static_first = _static_first_map(cls)
    defs: list[ClassDef] = []
    for q in encodable:
        cdef = ClassDef(
            name=name_of[q],
            spec_class=cls.name,
            origin_state=q,
            type_params=_ordered_bound_params(ann.bound[q], cls),
            is_entry=q == dfa.initial,
            has_node_ctor=(q == dfa.initial and cls.name in consumed_classes),
        )
        for sym, dst in dfa.edges[q]:
            assert isinstance(sym, MethodSymbol)
            declared = _ordered_bound_params(
                ann.bound[dst] - ann.bound[q], cls)
            consumed = type_edge[dst]
            if consumed is not None:
                ret: ReturnType = consumed
            else:
                if dst not in name_of:
                    raise InternalError(
                        f"method transition into unencodable state {dst}")
                ret = GeneratedRef(
                    class_name=name_of[dst],
                    args=tuple(p.name
                               for p in _ordered_bound_params(ann.bound[dst], cls)))
            is_static = (q == dfa.initial
                         and static_first.get(_sym_key(sym), False))
            cdef.methods.append(MethodDef(
                name=sym.sig.name,
                sig=sym.sig,
                is_static=is_static,
                type_params=declared,
                params=sym.sig.params,
                return_type=ret,
            ))
        defs.append(cdef)
    return defs


def _bfs_order(dfa) -> list[int]:
    seen = {dfa.initial}
    order = [dfa.initial]
    work = [dfa.initial]
    while work:
        q = work.pop(0)
        for _sym, dst in dfa.edges[q]:
            if dst not in seen:
                seen.add(dst)
                order.append(dst)
                work.append(dst)
    return order


def _ordered_bound_params(names: frozenset[str],
                          cls: ClassDecl) -> tuple[JTypeParam, ...]:
    return tuple(JTypeParam(p.name, p.bounds)
                 for p in cls.type_params if p.name in names)


def _sym_key(sym: MethodSymbol) -> tuple:
    return sym.sig.signature_key()


def _static_first_map(cls: ClassDecl) -> dict[tuple, bool]:
    out: dict[tuple, bool] = {}
    for chain in cls.chains:
        for sig in first_sigs(chain.expr):
            out.setdefault(sig.signature_key(), chain.is_static)
    return out


def _check_overloads(model: ApiModel) -> None:
    for cdef in model.class_defs:
        seen = set()
        for m in cdef.methods:
            key = (m.name, tuple((p.type, p.vararg) for p in m.params))
            if key in seen:
                raise InternalError(
                    f"duplicate method {m.name!r} in class {cdef.name!r}")
            seen.add(key)


def _check_unique_names(model: ApiModel) -> None:
    names = [c.name for c in model.class_defs]
    names += [n.name for n in model.node_defs]
    names.append(model.visitor.name)
    duplicates = {n for n in names if names.count(n) > 1}
    if duplicates:
        raise InternalError(f"name collision in generated model: {duplicates}")


# --- body planning -------------------------------------------------------------


def plan_bodies(model: ApiModel, spec: SpecModel) -> ApiModel:
    """Attach a body plan to every method definition (in place)."""
    method_nodes = {n.signature.signature_key(): n
                    for n in model.node_defs if isinstance(n, MethodNodeDef)}
    object_nodes = {n.head: n
                    for n in model.node_defs if isinstance(n, ObjectNodeDef)}
    for cdef in model.class_defs:
        cls = spec.class_named(cdef.spec_class)
        assert cls is not None
        for mdef in cdef.methods:
            node = method_nodes[mdef.sig.signature_key()]
            node_args = tuple(TypeRef(name=tp.name)
                              for tp in node.type_params)
            action = mdef.sig.action
            if isinstance(mdef.return_type, GeneratedRef):
                mdef.body = StepPlan(node=node, node_args=node_args,
                                     next_ref=mdef.return_type, action=action)
                continue
            consumed = mdef.return_type
            obj = object_nodes[consumed.simple_name]
            if consumed.resolution is Resolution.DECLARED_CLASS:
                object_args: tuple[TypeRef, ...] = consumed.args
            else:
                # The node's parameters are the union over every class that
                # consumes this head; when some are not in scope here, fall
                # back to a raw instantiation rather than emit broken code.
                scope = {p.name for p in cdef.type_params}
                scope.update(p.name for p in mdef.type_params)
                if all(tp.name in scope for tp in obj.type_params):
                    object_args = tuple(TypeRef(name=tp.name)
                                        for tp in obj.type_params)
                else:
                    object_args = ()
            evaluator = _find_evaluator(cls, mdef.sig, consumed)
            if evaluator is not None:
                result = "evaluator"
            elif (consumed.resolution is Resolution.DECLARED_CLASS
                  and consumed.array_dims == 0):
                result = "construct"
            else:
                result = "null"
            mdef.body = TerminalPlan(
                node=node, node_args=node_args, object_node=obj,
                object_args=object_args, result=result, consumed=consumed,
                evaluator=evaluator, action=action)
    return model


def _find_evaluator(cls: ClassDecl, sig: MethodSig,
                    consumed: TypeRef) -> str | None:
    """Evaluator of the first chain that ends with ``sig`` at ``consumed``."""
    key = sig.signature_key()
    for chain in cls.chains:
        if chain.return_type != consumed:
            continue
        if any(s.signature_key() == key for s in last_sigs(chain.expr)):
            return chain.evaluator
    return None
