"""protogen: generate type-safe generic fluent APIs in Java.

A specification declares classes whose chain declarations give a regular
expression of method signatures plus the type a completed chain
instantiates. The generator builds one automaton per class, annotates
each state with the type parameters bound on reaching it, and encodes
the result into Java classes whose method-level type parameters bind
types exactly once per chain.
"""

from .automata import (
    DFA,
    NFA,
    MethodSymbol,
    TypeSymbol,
    canonicalize_signatures,
    chain_automaton,
    determinize,
    merge,
    symbols_equal,
)
from .binding import AnnotatedDFA, analyze, clone_state, param_set
from .diagnostics import Diagnostic, Severity
from .lexer import LexError, Token, TokenType, tokenize
from .model import ApiModel, build_api_model, build_tree_model, plan_bodies
from .parser import ParseError, parse_spec, parse_text
from .pipeline import CompileResult, compile_spec
from .render import RenderedFile, render, render_dot
from .resolver import DuplicateClassName, DuplicateTypeParam, resolve
from .spec_ast import (
    ChainDecl,
    ClassDecl,
    MethodSig,
    Param,
    Resolution,
    SpecModel,
    TypeParamDecl,
    TypeRef,
    format_spec,
)
from .validation import validate

__version__ = "0.1.0"

__all__ = [
    "AnnotatedDFA",
    "ApiModel",
    "ChainDecl",
    "ClassDecl",
    "CompileResult",
    "DFA",
    "Diagnostic",
    "DuplicateClassName",
    "DuplicateTypeParam",
    "LexError",
    "MethodSig",
    "MethodSymbol",
    "NFA",
    "Param",
    "ParseError",
    "RenderedFile",
    "Resolution",
    "Severity",
    "SpecModel",
    "Token",
    "TokenType",
    "TypeParamDecl",
    "TypeRef",
    "TypeSymbol",
    "analyze",
    "build_api_model",
    "build_tree_model",
    "canonicalize_signatures",
    "chain_automaton",
    "clone_state",
    "compile_spec",
    "determinize",
    "format_spec",
    "merge",
    "param_set",
    "parse_spec",
    "parse_text",
    "plan_bodies",
    "render",
    "render_dot",
    "resolve",
    "symbols_equal",
    "tokenize",
    "validate",
]
