"""Rendering of the API model into Java source files and DOT graphs.

Output is byte-deterministic: 4-space indent, LF line endings, one blank
line between members, methods in DFA edge order. Generated constructors
and the node-list fields are package-private; chain methods carry no
access modifier, matching the package-private classes they live in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binding import AnnotatedDFA
from .model import (
    ApiModel,
    ClassDef,
    GeneratedRef,
    JTypeParam,
    MethodDef,
    MethodNodeDef,
    NodeDef,
    ObjectNodeDef,
    StepPlan,
    TerminalPlan,
)

__all__ = ["RenderedFile", "render", "render_dot"]

_LIST = "java.util.List<Object>"
_ARRAY_LIST = "java.util.ArrayList<Object>"


@dataclass(frozen=True)
class RenderedFile:
    relative_path: str
    contents: str


def render(model: ApiModel, package: str | None = None,
           layout: str = "flat") -> list[RenderedFile]:
    """Render every class, node and the visitor to one file each.

    ``layout`` is ``flat`` (all files in the output root) or
    ``package-dirs`` (files under the package's directory path).
    """
    if layout not in ("flat", "package-dirs"):
        raise ValueError(f"unknown layout {layout!r}")
    prefix = ""
    if layout == "package-dirs" and package:
        prefix = package.replace(".", "/") + "/"
    files = []
    for cdef in model.class_defs:
        files.append(RenderedFile(prefix + _class_file_name(cdef),
                                  _render_class(cdef, package)))
    for node in model.node_defs:
        files.append(RenderedFile(prefix + f"{node.name}.java",
                                  _render_node(node, package)))
    files.append(RenderedFile(prefix + f"{model.visitor.name}.java",
                              _render_visitor(model, package)))
    return files


def _class_file_name(cdef: ClassDef) -> str:
    if cdef.is_entry:
        return f"{cdef.name}.java"
    return f"{cdef.spec_class}{cdef.name}.java"


def _file(package: str | None, body_lines: list[str]) -> str:
    lines = []
    if package:
        lines.append(f"package {package};")
        lines.append("")
    lines.extend(body_lines)
    return "\n".join(lines) + "\n"


def _type_params_text(params: tuple[JTypeParam, ...]) -> str:
    if not params:
        return ""
    return "<" + ", ".join(p.text() for p in params) + ">"


def _render_class(cdef: ClassDef, package: str | None) -> str:
    lines = [f"class {cdef.name}{_type_params_text(cdef.type_params)} {{"]
    lines.append(f"    final {_LIST} chainNodes;")
    lines.append("")
    if cdef.is_entry:
        lines.append(f"    {cdef.name}() {{")
        lines.append(f"        this.chainNodes = new {_ARRAY_LIST}();")
        lines.append("    }")
        lines.append("")
    lines.append(f"    {cdef.name}({_LIST} chainNodes) {{")
    lines.append("        this.chainNodes = chainNodes;")
    lines.append("    }")
    if cdef.has_node_ctor:
        lines.append("")
        lines.append(f"    {cdef.name}(Object node) {{")
        lines.append(f"        this.chainNodes = new {_ARRAY_LIST}();")
        lines.append("        this.chainNodes.add(node);")
        lines.append("    }")
    for method in cdef.methods:
        lines.append("")
        lines.extend(_render_method(method))
    lines.append("}")
    return _file(package, lines)


def _render_method(m: MethodDef) -> list[str]:
    lines = [f"    {m.signature_text()} {{"]
    body = m.body
    if body is None:
        lines.append("        throw new UnsupportedOperationException();")
        lines.append("    }")
        return lines
    node_var = _var_name(body.node.name)
    node_args = _args_text(body.node_args)
    # The node's field names may come from another class's declaration of
    # the same signature; the values passed are this method's parameters.
    ctor_args = ", ".join(p.name for p in m.params)
    lines.append(f"        {body.node.name}{node_args} {node_var} = "
                 f"new {body.node.name}{node_args}({ctor_args});")
    if m.is_static:
        lines.append(f"        {_LIST} nodes = new {_ARRAY_LIST}();")
    else:
        lines.append(f"        {_LIST} nodes = "
                     f"new {_ARRAY_LIST}(this.chainNodes);")
    lines.append(f"        nodes.add({node_var});")
    if isinstance(body, StepPlan):
        if body.action:
            lines.append(f"        {body.action}({node_var});")
        lines.append(f"        return new {body.next_ref.text()}(nodes);")
    else:
        assert isinstance(body, TerminalPlan)
        obj_var = _var_name(body.object_node.name)
        obj_args = _args_text(body.object_args)
        lines.append(f"        {body.object_node.name}{obj_args} {obj_var} = "
                     f"new {body.object_node.name}{obj_args}(nodes);")
        if body.action:
            lines.append(f"        {body.action}({obj_var});")
        if body.result == "evaluator":
            lines.append(f"        return {body.evaluator}({obj_var});")
        elif body.result == "construct":
            assert body.consumed is not None
            lines.append(f"        return new {body.consumed.text()}({obj_var});")
        else:
            lines.append("        return null;")
    lines.append("    }")
    return lines


def _args_text(args: tuple) -> str:
    if not args:
        return ""
    return "<" + ", ".join(a.text() for a in args) + ">"


def _var_name(node_name: str) -> str:
    prefix, _, rest = node_name.partition("_")
    return f"{prefix.lower()}_{rest[:1].lower()}{rest[1:]}"


def _render_node(node: NodeDef, package: str | None) -> str:
    params = _type_params_text(node.type_params)
    lines = [f"class {node.name}{params} {{"]
    if isinstance(node, MethodNodeDef):
        for f in node.fields:
            lines.append(f"    final {f.type.text()} {f.name};")
        if node.fields:
            lines.append("")
        ctor_params = ", ".join(f"{f.type.text()} {f.name}" for f in node.fields)
        lines.append(f"    {node.name}({ctor_params}) {{")
        for f in node.fields:
            lines.append(f"        this.{f.name} = {f.name};")
        lines.append("    }")
    else:
        assert isinstance(node, ObjectNodeDef)
        lines.append(f"    final {_LIST} children;")
        lines.append("")
        lines.append(f"    {node.name}({_LIST} children) {{")
        lines.append("        this.children = children;")
        lines.append("    }")
    lines.append("}")
    return _file(package, lines)


def _render_visitor(model: ApiModel, package: str | None) -> str:
    visitor = model.visitor
    method_nodes = [n for n in model.node_defs if isinstance(n, MethodNodeDef)]
    object_nodes = [n for n in model.node_defs if isinstance(n, ObjectNodeDef)]
    members: list[list[str]] = []
    for node in method_nodes:
        members.append([f"    void visit{node.name}({_hook_param(node)} node) {{",
                        "    }"])
    for node in object_nodes:
        members.append([f"    void visit{node.name}({_hook_param(node)} node) {{",
                        "        visitChildren(node);",
                        "    }"])
    for node in object_nodes:
        members.append([f"    void visit({_hook_param(node)} node) {{",
                        f"        visit{node.name}(node);",
                        "    }"])
    dispatched: list[NodeDef] = [*method_nodes, *object_nodes]
    needs_suppress = any(n.type_params for n in dispatched)
    for node in object_nodes:
        block = []
        if needs_suppress:
            block.append('    @SuppressWarnings("unchecked")')
        block.append(f"    void visitChildren({_hook_param(node)} node) {{")
        block.append("        for (Object child : node.children) {")
        for target in dispatched:
            cast = _hook_param(target)
            block.append(f"            if (child instanceof {target.name}) {{")
            block.append(f"                visit{target.name}(({cast}) child);")
            block.append("            }")
        block.append("        }")
        block.append("    }")
        members.append(block)
    lines = [f"class {visitor.name}{_type_params_text(visitor.type_params)} {{"]
    for i, block in enumerate(members):
        if i > 0:
            lines.append("")
        lines.extend(block)
    lines.append("}")
    return _file(package, lines)


def _hook_param(node: NodeDef) -> str:
    return node.name + _type_params_text(
        tuple(JTypeParam(t.name) for t in node.type_params))


# --- DOT export ----------------------------------------------------------------


def render_dot(annotated: AnnotatedDFA, name: str = "chain_dfa") -> str:
    """Graphviz digraph of an annotated DFA.

    State labels carry the bound-parameter set; accepting states are
    double-circled; edges are labeled with the signature or type text.
    """
    dfa = annotated.dfa
    lines = [f"digraph {_dot_quote(name)} {{", "    rankdir=LR;"]
    for q in dfa.states:
        bound = annotated.bound.get(q)
        if bound is None:
            label = str(q)
        elif bound:
            label = f"{q}\\n{{{', '.join(sorted(bound))}}}"
        else:
            label = f"{q}\\n∅"
        shape = "doublecircle" if q in dfa.accepting else "circle"
        lines.append(f'    {q} [shape={shape}, label="{label}"];')
    for src, sym, dst in dfa.transitions:
        lines.append(f"    {src} -> {dst} [label={_dot_quote(sym.text())}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'
