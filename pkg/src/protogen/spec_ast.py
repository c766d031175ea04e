"""Syntax tree for the fluent-API specification language.

A specification is a sequence of class declarations. Each class declares
type parameters (in the class head or as body statements) and chain
declarations: a return type, a regular expression over method signatures,
and an optional tree-evaluator reference.

All nodes are immutable. Source spans are carried for diagnostics but are
excluded from structural equality, so two parses of the same text compare
equal regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union


@dataclass(frozen=True)
class Span:
    """Half-open source region, 1-based lines and columns."""

    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class Resolution(Enum):
    """What a type reference's head name denotes after name binding."""

    DECLARED_CLASS = "declared-class"
    TYPE_PARAM = "type-param"
    EXTERNAL = "external"


@dataclass(frozen=True)
class TypeRef:
    """A possibly-generic, possibly-array type reference like ``Map<K, V>[]``.

    ``resolution`` is None until the resolver has run.
    """

    name: str
    args: tuple[TypeRef, ...] = ()
    array_dims: int = 0
    resolution: Resolution | None = None
    span: Span | None = field(default=None, compare=False)

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    def text(self) -> str:
        out = self.name
        if self.args:
            out += "<" + ", ".join(a.text() for a in self.args) + ">"
        out += "[]" * self.array_dims
        return out


@dataclass(frozen=True)
class Param:
    """One method parameter. ``vararg`` marks a trailing ``...`` parameter."""

    type: TypeRef
    name: str
    vararg: bool = False

    def text(self) -> str:
        dots = "..." if self.vararg else ""
        return f"{self.type.text()}{dots} {self.name}"


@dataclass(frozen=True)
class MethodSig:
    """A method symbol: name, ordered parameters, optional inline action."""

    name: str
    params: tuple[Param, ...] = ()
    action: str | None = None
    span: Span | None = field(default=None, compare=False)

    def signature_key(self) -> tuple:
        """Identity used for signature equality: parameter names and the
        action do not participate, matching Java overload resolution."""
        return (self.name, tuple((p.type, p.vararg) for p in self.params))

    def text(self) -> str:
        return f"{self.name}(" + ", ".join(p.text() for p in self.params) + ")"


# --- chain expressions ------------------------------------------------------


@dataclass(frozen=True)
class MethodElem:
    sig: MethodSig


@dataclass(frozen=True)
class Seq:
    items: tuple["ChainExpr", ...]


@dataclass(frozen=True)
class Alt:
    options: tuple["ChainExpr", ...]


@dataclass(frozen=True)
class Repeat:
    item: "ChainExpr"
    op: str  # one of "?", "*", "+"


ChainExpr = Union[MethodElem, Seq, Alt, Repeat]


def iter_method_sigs(expr: ChainExpr) -> Iterator[MethodSig]:
    """Yield every method leaf of ``expr`` in left-to-right source order."""
    if isinstance(expr, MethodElem):
        yield expr.sig
    elif isinstance(expr, Seq):
        for item in expr.items:
            yield from iter_method_sigs(item)
    elif isinstance(expr, Alt):
        for option in expr.options:
            yield from iter_method_sigs(option)
    else:
        yield from iter_method_sigs(expr.item)


def expr_text(expr: ChainExpr) -> str:
    """Render a chain expression back to specification syntax."""
    if isinstance(expr, MethodElem):
        out = expr.sig.text()
        if expr.sig.action is not None:
            out += f" {{ {expr.sig.action}; }}"
        return out
    if isinstance(expr, Seq):
        # Directly nested sequences and alternations keep their parentheses
        # so that re-parsing reproduces the tree shape.
        return " ".join(_grouped(i, (Alt, Seq)) for i in expr.items)
    if isinstance(expr, Alt):
        return " | ".join(_grouped(o, (Alt,)) for o in expr.options)
    inner = _grouped(expr.item, (Alt, Seq, Repeat))
    return inner + expr.op


def _grouped(expr: ChainExpr, paren_types: tuple[type, ...]) -> str:
    text = expr_text(expr)
    return f"({text})" if isinstance(expr, paren_types) else text


# --- declarations -----------------------------------------------------------


@dataclass(frozen=True)
class TypeParamDecl:
    """A type parameter with optional upper bounds (``extends`` only)."""

    name: str
    bounds: tuple[TypeRef, ...] = ()
    span: Span | None = field(default=None, compare=False)

    def text(self) -> str:
        if not self.bounds:
            return self.name
        return f"{self.name} extends " + ", ".join(b.text() for b in self.bounds)


@dataclass(frozen=True)
class ChainDecl:
    """One chain declaration: regex of methods plus the consumed return type."""

    return_type: TypeRef
    expr: ChainExpr
    is_static: bool = False
    evaluator: str | None = None
    span: Span | None = field(default=None, compare=False)

    def method_sigs(self) -> list[MethodSig]:
        return list(iter_method_sigs(self.expr))

    def text(self) -> str:
        head = "static " if self.is_static else ""
        tail = f" return {self.evaluator}" if self.evaluator else ""
        return f"{head}{self.return_type.text()} {expr_text(self.expr)}{tail};"


Member = Union[ChainDecl, TypeParamDecl]


@dataclass(frozen=True)
class ClassDecl:
    """A class declaration; ``members`` preserves body statement order."""

    name: str
    head_params: tuple[TypeParamDecl, ...] = ()
    members: tuple[Member, ...] = ()
    span: Span | None = field(default=None, compare=False)

    @property
    def body_params(self) -> tuple[TypeParamDecl, ...]:
        return tuple(m for m in self.members if isinstance(m, TypeParamDecl))

    @property
    def chains(self) -> tuple[ChainDecl, ...]:
        return tuple(m for m in self.members if isinstance(m, ChainDecl))

    @property
    def type_params(self) -> tuple[TypeParamDecl, ...]:
        """All type parameters in declaration order: head first, then body."""
        return self.head_params + self.body_params

    def param_decl(self, name: str) -> TypeParamDecl | None:
        for decl in self.type_params:
            if decl.name == name:
                return decl
        return None


@dataclass(frozen=True)
class SpecModel:
    classes: tuple[ClassDecl, ...] = ()

    def class_named(self, name: str) -> ClassDecl | None:
        for cls in self.classes:
            if cls.name == name:
                return cls
        return None


def format_spec(spec: SpecModel) -> str:
    """Pretty-print a model back to specification syntax.

    Re-parsing the result yields a structurally equal model.
    """
    blocks = []
    for cls in spec.classes:
        head = f"class {cls.name}"
        if cls.head_params:
            head += "<" + ", ".join(p.text() for p in cls.head_params) + ">"
        lines = [head + " {"]
        for member in cls.members:
            if isinstance(member, TypeParamDecl):
                lines.append(f"    {member.text()};")
            else:
                lines.append(f"    {member.text()}")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
