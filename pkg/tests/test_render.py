import re

import pytest

from protogen.automata import canonicalize_signatures, chain_automaton, determinize, merge
from protogen.binding import analyze
from protogen.parser import parse_text
from protogen.pipeline import compile_spec
from protogen.render import render, render_dot
from protogen.resolver import resolve

from conftest import ACCEPTED_SPECS, fixture_text
from javacheck import assert_java_shape, referenced_type_names

EXPECTED_CLASS_LISTING = """\
class OurAPI {
    static State1 newMap() { ... }
}
class State1 {
    <K, V> State2<K, V> put(K key, V value) { ... }
    <K, V> Map<K, V> build() { ... }
}
class State2<K, V> {
    State2<K, V> put(K key, V value) { ... }
    Map<K, V> build() { ... }
}
"""


def files_for(name, package=None):
    result = compile_spec(fixture_text(name), package=package)
    assert result.ok, result.diagnostics
    return {f.relative_path: f.contents for f in result.files}


def _signatures(java_text):
    """Class headers and method signature lines, whitespace-normalized."""
    out = set()
    for raw in java_text.splitlines():
        line = " ".join(raw.split())
        if line.startswith("class "):
            out.add(line.rstrip("{").strip())
        m = re.match(r"^(static |<)", line) if raw.startswith("    ") else None
        if raw.startswith("    ") and line.endswith("{") and "=" not in line:
            sig = line.rstrip("{").strip()
            if "(" in sig and not sig.startswith(("this", "new")):
                out.add(sig)
    return out


def test_map_builder_matches_expected_class_listing():
    files = files_for("ourapi")
    rendered = set()
    for path in ("OurAPI.java", "OurAPIState1.java", "OurAPIState2.java"):
        rendered |= _signatures(files[path])
    expected = set()
    for raw in EXPECTED_CLASS_LISTING.splitlines():
        line = " ".join(raw.split())
        if line.startswith("class "):
            expected.add(line.rstrip("{").strip())
        elif line.endswith("{ ... }"):
            expected.add(line[: -len("{ ... }")].strip())
    # constructors and the node-list plumbing are extra; every expected
    # signature must be rendered verbatim
    assert expected <= rendered
    # and no chain methods beyond the expected five exist
    expected_methods = {s for s in expected if "(" in s}
    rendered_methods = {
        s for s in rendered
        if "(" in s and not re.match(r"^(OurAPI|State\d+)\(", s)}
    assert rendered_methods == expected_methods


def test_rendering_is_deterministic():
    assert files_for("matrix") == files_for("matrix")


def test_render_idempotent_on_same_model():
    result = compile_spec(fixture_text("matrix"))
    first = render(result.model)
    second = render(result.model)
    assert first == second


def test_package_option_adds_declaration():
    files = files_for("ourapi", package="ourapi.gen")
    assert files["OurAPI.java"].startswith("package ourapi.gen;\n\n")
    no_pkg = files_for("ourapi")
    assert "package" not in no_pkg["OurAPI.java"]


def test_package_dirs_layout():
    result = compile_spec(fixture_text("ourapi"), package="a.b", layout="package-dirs")
    paths = [f.relative_path for f in result.files]
    assert all(p.startswith("a/b/") for p in paths)


def test_unknown_layout_rejected():
    result = compile_spec(fixture_text("ourapi"))
    with pytest.raises(ValueError):
        render(result.model, layout="jar")


def test_assertion_body_statement_order():
    files = files_for("assertions")
    body = files["PredicateAssert.java"]
    starts = body[body.index("PredicateAssert startsWith"):]
    starts = starts[:starts.index("}\n")]
    construction = starts.index("Object_PredicateAssert object_predicateAssert =")
    action = starts.index("Action.startsWith(object_predicateAssert);")
    ret = starts.index("return new PredicateAssert(object_predicateAssert);")
    assert construction < action < ret


def test_evaluator_body_matches_snippet():
    files = files_for("ourapi_eval")
    state1 = files["OurAPIState1.java"]
    assert "Object_Map<K, V> object_map = new Object_Map<K, V>(nodes);" in state1
    assert "return Evaluator.buildMap(object_map);" in state1


def test_varargs_render_with_ellipsis():
    result = compile_spec("class A { T m(K... keys); K; }")
    files = {f.relative_path: f.contents for f in result.files}
    assert "T m(K... keys)" in files["A.java"]
    assert "final K[] keys;" in files["Method_m.java"]


def test_multiple_bounds_join_with_ampersand():
    result = compile_spec("class A { K extends Base, Marker; T m(K k); }")
    files = {f.relative_path: f.contents for f in result.files}
    assert "<K extends Base & Marker>" in files["A.java"]


def test_every_emitted_file_passes_java_shape_check():
    for name in ACCEPTED_SPECS:
        for path, text in files_for(name).items():
            assert_java_shape(text)


def test_no_orphan_type_references():
    for name in ACCEPTED_SPECS:
        result = compile_spec(fixture_text(name))
        spec = result.spec
        emitted = {c.name for c in result.model.class_defs}
        emitted.update(n.name for n in result.model.node_defs)
        emitted.add(result.model.visitor.name)
        allowed = set(emitted) | {"Object", "String", "SuppressWarnings"}
        for cls in spec.classes:
            for chain in cls.chains:
                allowed.update(_external_names(chain.return_type))
                if chain.evaluator:
                    allowed.add(chain.evaluator.split(".")[0])
                for sig in chain.method_sigs():
                    if sig.action:
                        allowed.add(sig.action.split(".")[0])
                    for p in sig.params:
                        allowed.update(_external_names(p.type))
            for decl in cls.type_params:
                for bound in decl.bounds:
                    allowed.update(_external_names(bound))
        for path, text in files_for(name).items():
            stripped = text.replace("java.util.List", "").replace(
                "java.util.ArrayList", "")
            refs = referenced_type_names(stripped)
            assert refs <= allowed, (name, path, refs - allowed)


def _external_names(ref):
    yield ref.simple_name
    for a in ref.args:
        yield from _external_names(a)


# --- DOT export -----------------------------------------------------------------


def annotated_for(name, class_index=0):
    spec, _ = canonicalize_signatures(resolve(parse_text(fixture_text(name))))
    cls = spec.classes[class_index]
    return analyze(determinize(merge(
        [chain_automaton(c) for c in cls.chains])), cls), cls


def test_dot_shows_bound_sets_and_double_circles():
    ann, cls = annotated_for("ourapi")
    dot = render_dot(ann, name=cls.name)
    assert dot.startswith('digraph "OurAPI" {')
    assert dot.count("\\n\u2205") == 2  # initial and first put-state
    assert dot.count("{K, V}") == 3  # clone, pre-accept and accept
    assert dot.count("doublecircle") == 1
    assert '[label="put(K key, V value)"]' in dot
    assert '[label="Map<K, V>"]' in dot
    # 5 nodes: 4 method-path states plus the accept state
    assert len(re.findall(r'^\s+\d+ \[shape=', dot, re.M)) == 5


def test_node_construction_uses_local_parameter_names():
    # Equal signatures in different classes share one node; each method must
    # pass its own parameters, not the node's field names.
    result = compile_spec(
        "class A { Out begin(K item); K; } class B { Out2 begin(K it); K; }")
    assert result.ok
    files = {f.relative_path: f.contents for f in result.files}
    assert "new Method_begin<K>(item);" in files["A.java"]
    assert "new Method_begin<K>(it);" in files["B.java"]
    assert "item" not in files["B.java"]


def test_visitor_hooks_cover_every_node():
    for name in ACCEPTED_SPECS:
        result = compile_spec(fixture_text(name))
        visitor_text = next(f.contents for f in result.files
                            if f.relative_path == "Visitor.java")
        for node in result.model.node_defs:
            hook = f"void visit{node.name}("
            assert hook in visitor_text, (name, node.name)
            body = visitor_text.split(hook, 1)[1]
            body = body[:body.index("\n    }")]
            from protogen.model import ObjectNodeDef
            if isinstance(node, ObjectNodeDef):
                assert "visitChildren(node);" in body
            else:
                assert body.endswith("node) {")  # no-op default


def test_dot_single_state_automaton():
    from protogen.automata import DFA
    from protogen.binding import AnnotatedDFA
    ann = AnnotatedDFA(
        dfa=DFA(num_states=1, initial=0, accepting=frozenset(), edges=[[]]),
        bound={0: frozenset()})
    dot = render_dot(ann)
    assert len(re.findall(r'^\s+\d+ \[shape=', dot, re.M)) == 1
    assert "->" not in dot


def test_dot_three_state_line():
    result = compile_spec("class A { T a(); }")
    ann = result.annotated["A"]
    dot = render_dot(ann)
    assert len(re.findall(r'^\s+\d+ \[shape=', dot, re.M)) == 3
    assert dot.count("->") == 2


def test_dot_renders_invalid_shapes_too():
    ann, cls = annotated_for("singleton")
    dot = render_dot(ann, name=cls.name)
    assert '[label="List<E>"]' in dot
    assert '[label="Set<E>"]' in dot
    # both type edges leave the same state
    sources = re.findall(r"(\d+) -> \d+ \[label=\"(?:List|Set)<E>\"\]", dot)
    assert len(set(sources)) == 1


def test_dot_escapes_quotes():
    from protogen.render import _dot_quote
    assert _dot_quote('a"b') == '"a\\"b"'
