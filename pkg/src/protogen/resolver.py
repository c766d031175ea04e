"""Name binding for parsed specifications.

Every type reference is classified: a name matching a type parameter in
the enclosing class's scope resolves to that parameter; a name matching a
declared class resolves to that class; anything else (including dotted
names) is external and is emitted verbatim by the code generator.
"""

from __future__ import annotations

from dataclasses import replace

from .spec_ast import (
    Alt,
    ChainDecl,
    ChainExpr,
    ClassDecl,
    MethodElem,
    MethodSig,
    Repeat,
    Resolution,
    Seq,
    Span,
    SpecModel,
    TypeParamDecl,
    TypeRef,
)

__all__ = ["ResolveError", "DuplicateClassName", "DuplicateTypeParam", "resolve"]


class ResolveError(Exception):
    def __init__(self, message: str, span: Span | None) -> None:
        pos = f"{span.line}:{span.col}: " if span else ""
        super().__init__(pos + message)
        self.message = message
        self.span = span


class DuplicateClassName(ResolveError):
    pass


class DuplicateTypeParam(ResolveError):
    pass


def resolve(spec: SpecModel) -> SpecModel:
    """Return a copy of ``spec`` with every TypeRef's resolution filled in.

    Raises DuplicateClassName or DuplicateTypeParam on name clashes; a
    duplicate type-parameter declaration is an error even when the two
    declarations are identical.
    """
    class_names: set[str] = set()
    for cls in spec.classes:
        if cls.name in class_names:
            raise DuplicateClassName(
                f"duplicate class name {cls.name!r}", cls.span)
        class_names.add(cls.name)
    return SpecModel(classes=tuple(
        _resolve_class(cls, class_names) for cls in spec.classes))


def _resolve_class(cls: ClassDecl, class_names: set[str]) -> ClassDecl:
    param_names: set[str] = set()
    for decl in cls.type_params:
        if decl.name in param_names:
            raise DuplicateTypeParam(
                f"duplicate type parameter {decl.name!r} in class {cls.name!r}",
                decl.span)
        param_names.add(decl.name)

    def res_ref(ref: TypeRef) -> TypeRef:
        if "." not in ref.name and ref.name in param_names:
            resolution = Resolution.TYPE_PARAM
        elif "." not in ref.name and ref.name in class_names:
            resolution = Resolution.DECLARED_CLASS
        else:
            resolution = Resolution.EXTERNAL
        return replace(ref, resolution=resolution,
                       args=tuple(res_ref(a) for a in ref.args))

    def res_param_decl(decl: TypeParamDecl) -> TypeParamDecl:
        return replace(decl, bounds=tuple(res_ref(b) for b in decl.bounds))

    def res_sig(sig: MethodSig) -> MethodSig:
        return replace(sig, params=tuple(
            replace(p, type=res_ref(p.type)) for p in sig.params))

    def res_expr(expr: ChainExpr) -> ChainExpr:
        if isinstance(expr, MethodElem):
            return MethodElem(sig=res_sig(expr.sig))
        if isinstance(expr, Seq):
            return Seq(items=tuple(res_expr(i) for i in expr.items))
        if isinstance(expr, Alt):
            return Alt(options=tuple(res_expr(o) for o in expr.options))
        return Repeat(item=res_expr(expr.item), op=expr.op)

    def res_member(member):
        if isinstance(member, TypeParamDecl):
            return res_param_decl(member)
        assert isinstance(member, ChainDecl)
        return replace(member, return_type=res_ref(member.return_type),
                       expr=res_expr(member.expr))

    return replace(
        cls,
        head_params=tuple(res_param_decl(p) for p in cls.head_params),
        members=tuple(res_member(m) for m in cls.members),
    )
