import json

import pytest

from protogen.model import (
    GeneratedRef,
    InternalError,
    MethodNodeDef,
    ObjectNodeDef,
    StepPlan,
    TerminalPlan,
    build_api_model,
    build_tree_model,
    plan_bodies,
)
from protogen.pipeline import compile_spec
from protogen.spec_ast import TypeRef

from conftest import ACCEPTED_SPECS, fixture_text


def model_for(name):
    result = compile_spec(fixture_text(name))
    assert result.ok, result.diagnostics
    return result


def signature_set(model, class_name):
    (cdef,) = [c for c in model.class_defs if c.name == class_name]
    return {m.signature_text() for m in cdef.methods}


EXPECTED_SIGNATURES = {
    "OurAPI": {"static State1 newMap()"},
    "State1": {"<K, V> State2<K, V> put(K key, V value)",
               "<K, V> Map<K, V> build()"},
    "State2": {"State2<K, V> put(K key, V value)",
               "Map<K, V> build()"},
}


def test_map_builder_encodes_to_expected_signature_set():
    model = model_for("ourapi").model
    assert [c.name for c in model.class_defs] == ["OurAPI", "State1", "State2"]
    for class_name, expected in EXPECTED_SIGNATURES.items():
        assert signature_set(model, class_name) == expected
    (state2,) = [c for c in model.class_defs if c.name == "State2"]
    assert [p.text() for p in state2.type_params] == ["K", "V"]
    (our_api,) = [c for c in model.class_defs if c.name == "OurAPI"]
    assert our_api.type_params == ()
    assert sum(len(c.methods) for c in model.class_defs) == 5


def test_class_and_state_defs_originate_from_encodable_states():
    from protogen.automata import TypeSymbol

    for name in ACCEPTED_SPECS:
        result = model_for(name)
        for cdef in result.model.class_defs:
            ann = result.annotated.get(cdef.spec_class)
            if ann is None:
                continue
            state = cdef.origin_state
            assert state not in ann.dfa.accepting
            assert all(not isinstance(sym, TypeSymbol)
                       for sym, _ in ann.dfa.edges[state])


def test_matrix_mult_signature():
    model = model_for("matrix").model
    int_mat = signature_set(model, "IntMat")
    assert "<NEW_COL extends Size> IntMat<ROW, NEW_COL> mult(IntMat<COL, NEW_COL> m)" \
        in int_mat
    assert "<NEW_COL extends Size> FltMat<ROW, NEW_COL> mult(FltMat<COL, NEW_COL> m)" \
        in int_mat
    assert "IntMat<ROW, COL> plus(IntMat<ROW, COL> m)" in int_mat
    assert "int[][] toArray()" in int_mat
    (int_mat_def,) = [c for c in model.class_defs if c.name == "IntMat"]
    assert [p.text() for p in int_mat_def.type_params] == [
        "ROW extends Size", "COL extends Size"]


def test_matrix_builder_row_col_chain():
    model = model_for("matrix").model
    builder = signature_set(model, "MatrixBuilder")
    assert builder == {"static State1 randInt()", "static State2 randFlt()"}
    state1 = signature_set(model, "State1")
    assert state1 == {"<ROW extends Size> State3<ROW> row(ROW row)"}
    state3 = signature_set(model, "State3")
    assert state3 == {"<COL extends Size> IntMat<ROW, COL> col(COL col)"}


def test_single_chain_class_has_no_state_classes():
    result = compile_spec("class A { T a(); }")
    assert result.ok
    assert [c.name for c in result.model.class_defs] == ["A"]
    assert signature_set(result.model, "A") == {"T a()"}


def test_static_flag_reaches_only_first_transitions():
    model = model_for("ourapi").model
    methods = {(c.name, m.name): m.is_static
               for c in model.class_defs for m in c.methods}
    assert methods[("OurAPI", "newMap")]
    assert not methods[("State1", "put")]
    assert not methods[("State2", "build")]


def test_encoding_rejects_invalid_input_defensively():
    from protogen.automata import canonicalize_signatures, chain_automaton, determinize, merge
    from protogen.binding import analyze
    from protogen.parser import parse_text
    from protogen.resolver import resolve

    spec, _ = canonicalize_signatures(
        resolve(parse_text(fixture_text("singleton"))))
    cls = spec.classes[0]
    ann = analyze(determinize(merge(
        [chain_automaton(c) for c in cls.chains])), cls)
    with pytest.raises(InternalError):
        build_api_model(spec, {cls.name: ann})


# --- tree model ------------------------------------------------------------------


def test_map_builder_nodes_and_visitor():
    result = model_for("ourapi")
    nodes = result.model.node_defs
    names = [n.name for n in nodes]
    assert names == ["Method_newMap", "Method_put", "Method_build", "Object_Map"]
    put = nodes[1]
    assert [(f.type.text(), f.name) for f in put.fields] == [
        ("K", "key"), ("V", "value")]
    assert [p.text() for p in put.type_params] == ["K", "V"]
    obj = nodes[3]
    assert isinstance(obj, ObjectNodeDef)
    assert [p.text() for p in obj.type_params] == ["K", "V"]
    assert [p.text() for p in result.model.visitor.type_params] == ["K", "V"]


def test_no_arg_method_node_has_no_fields():
    result = compile_spec("class A { T a(); }")
    node = result.model.node_defs[0]
    assert isinstance(node, MethodNodeDef)
    assert node.fields == ()
    assert node.type_params == ()


def test_assertions_nodes():
    model = model_for("assertions").model
    names = [n.name for n in model.node_defs]
    assert names == ["Method_assertThat", "Method_startsWith",
                     "Method_endsWith", "Object_PredicateAssert"]
    assert model.node_defs[0].fields[0].type.text() == "String"
    assert model.node_defs[3].type_params == ()


def test_method_node_shared_across_classes_with_same_signature():
    model = model_for("itemize").model
    begins = [n for n in model.node_defs if n.name.startswith("Method_begin")]
    assert len(begins) == 1


def test_overloads_get_distinct_node_names():
    model = model_for("matrix").model
    names = [n.name for n in model.node_defs]
    assert "Method_plus" in names and "Method_plus_2" in names
    assert "Method_mult" in names and "Method_mult_2" in names
    assert "Object_IntMat" in names and "Object_int" in names


def test_object_node_mirrors_declared_class_parameters():
    model = model_for("itemize").model
    (nested,) = [n for n in model.node_defs if n.name == "Object_Nested"]
    assert [p.text() for p in nested.type_params] == ["X", "ITEM"]
    (x_node,) = [n for n in model.node_defs if n.name == "Object_X"]
    assert [p.text() for p in x_node.type_params] == ["X"]


def test_every_signature_has_exactly_one_method_node():
    for name in ACCEPTED_SPECS:
        result = model_for(name)
        keys = set()
        for cls in result.spec.classes:
            for chain in cls.chains:
                for sig in chain.method_sigs():
                    keys.add(sig.signature_key())
        nodes = [n for n in result.model.node_defs
                 if isinstance(n, MethodNodeDef)]
        assert len(nodes) == len(keys), name


# --- body plans -------------------------------------------------------------------


def test_map_builder_terminal_plan_uses_evaluator():
    model = model_for("ourapi_eval").model
    (state1,) = [c for c in model.class_defs if c.name == "State1"]
    build = next(m for m in state1.methods if m.name == "build")
    plan = build.body
    assert isinstance(plan, TerminalPlan)
    assert plan.object_node.name == "Object_Map"
    assert [a.text() for a in plan.object_args] == ["K", "V"]
    assert plan.result == "evaluator"
    assert plan.evaluator == "Evaluator.buildMap"
    assert plan.action is None


def test_map_builder_without_evaluator_returns_null():
    model = model_for("ourapi").model
    (state1,) = [c for c in model.class_defs if c.name == "State1"]
    build = next(m for m in state1.methods if m.name == "build")
    assert build.body.result == "null"


def test_step_plan_appends_node_and_moves_on():
    model = model_for("ourapi").model
    (state1,) = [c for c in model.class_defs if c.name == "State1"]
    put = next(m for m in state1.methods if m.name == "put")
    plan = put.body
    assert isinstance(plan, StepPlan)
    assert plan.node.name == "Method_put"
    assert plan.next_ref == GeneratedRef(class_name="State2", args=("K", "V"))


def test_assertions_plan_has_action_and_constructs_generated_class():
    model = model_for("assertions").model
    (predicate,) = [c for c in model.class_defs if c.name == "PredicateAssert"]
    starts = next(m for m in predicate.methods if m.name == "startsWith")
    plan = starts.body
    assert isinstance(plan, TerminalPlan)
    assert plan.action == "Action.startsWith"
    assert plan.result == "construct"
    assert plan.consumed.text() == "PredicateAssert"


def test_matrix_plus_constructs_generated_matrix():
    model = model_for("matrix").model
    (int_mat,) = [c for c in model.class_defs if c.name == "IntMat"]
    plus = next(m for m in int_mat.methods if m.name == "plus")
    plan = plus.body
    assert isinstance(plan, TerminalPlan)
    assert plan.result == "construct"
    assert plan.consumed.text() == "IntMat<ROW, COL>"
    to_array = next(m for m in int_mat.methods if m.name == "toArray")
    assert to_array.body.result == "evaluator"
    assert to_array.body.evaluator == "Evaluator.toIntArray"


def test_terminal_plans_reference_existing_object_nodes():
    for name in ACCEPTED_SPECS:
        model = model_for(name).model
        object_nodes = {n.name for n in model.node_defs
                        if isinstance(n, ObjectNodeDef)}
        for cdef in model.class_defs:
            for m in cdef.methods:
                if isinstance(m.body, TerminalPlan):
                    assert m.body.object_node.name in object_nodes


def test_type_parameter_closure_on_accepted_fixtures():
    for name in ACCEPTED_SPECS:
        model = model_for(name).model
        for cdef in model.class_defs:
            class_scope = {p.name for p in cdef.type_params}
            for m in cdef.methods:
                scope = class_scope | {p.name for p in m.type_params}
                used: set[str] = set()
                for p in m.params:
                    _collect_param_names(p.type, used)
                if isinstance(m.return_type, TypeRef):
                    _collect_param_names(m.return_type, used)
                else:
                    used.update(m.return_type.args)
                assert used <= scope, (name, cdef.name, m.name)


def _collect_param_names(ref, out):
    from protogen.spec_ast import Resolution
    if ref.resolution is Resolution.TYPE_PARAM:
        out.add(ref.name)
    for a in ref.args:
        _collect_param_names(a, out)


def test_overload_well_formedness_asserted():
    for name in ACCEPTED_SPECS:
        model = model_for(name).model
        for cdef in model.class_defs:
            seen = set()
            for m in cdef.methods:
                key = (m.name, tuple(p.type.text() for p in m.params))
                assert key not in seen
                seen.add(key)


def test_shared_external_head_with_foreign_params_falls_back_to_raw():
    result = compile_spec(
        "class A { Map<K, V> m(K k, V v); K; V; } "
        "class B { Map<X, Y> n(X x, Y y); X; Y; }")
    assert result.ok
    (obj,) = [n for n in result.model.node_defs
              if isinstance(n, ObjectNodeDef)]
    assert [p.name for p in obj.type_params] == ["K", "V", "X", "Y"]
    for cdef in result.model.class_defs:
        for m in cdef.methods:
            if isinstance(m.body, TerminalPlan):
                # the 4-parameter node cannot be instantiated in either
                # class's scope, so both plans go raw
                assert m.body.object_args == ()


def test_names_stay_unique_under_adversarial_class_names():
    result = compile_spec(
        "class Method_put { T put(K k); K; } class Visitor { U go(); } "
        "class State1 { W w(); }")
    assert result.ok
    names = [c.name for c in result.model.class_defs]
    names += [n.name for n in result.model.node_defs]
    names.append(result.model.visitor.name)
    assert len(names) == len(set(names))
    assert "Method_put_2" in names  # the node yielded to the declared class
    assert result.model.visitor.name == "Visitor_2"


def test_json_serialization_is_canonical_and_stable():
    first = json.dumps(model_for("matrix").model.to_json(), indent=2)
    second = json.dumps(model_for("matrix").model.to_json(), indent=2)
    assert first == second
    data = json.loads(first)
    assert list(data) == ["classes", "nodes", "visitor"]
    assert data["classes"][0]["name"] == "MatrixBuilder"
    assert data["classes"][0]["methods"][0]["body"]["kind"] == "step"
