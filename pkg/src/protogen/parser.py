"""Recursive-descent parser for the fluent-API specification language.

Grammar (statements are terminated by ``;``):

    spec                -> class+
    class               -> "class" NAME type-param-list? class-body
    type-param-list     -> "<" type-param ("," type-param)* ">"
    class-body          -> "{" chain-or-type-param* "}"
    chain-or-type-param -> (chain | type-param) ";"
    type-param          -> NAME type-param-bound?
    type-param-bound    -> "extends" type-ref-list
    type-ref-list       -> type-ref ("," type-ref)*
    chain               -> "static"? type-ref chain-expr tree-eval?
    chain-expr          -> chain-term ("|" chain-term)*
    chain-term          -> chain-fact+
    chain-fact          -> chain-elem ("?" | "*" | "+")?
    chain-elem          -> method | "(" chain-expr ")"
    method              -> NAME "(" method-param-list? ")" method-action?
    method-param-list   -> method-param ("," method-param)*
    method-param        -> type-ref "..."? NAME
    method-action       -> "{" qual-name ";" "}"
    type-ref            -> qual-name ("<" type-ref-list ">")? ("[" "]")*
    tree-eval           -> "return" qual-name
    qual-name           -> NAME ("." NAME)*

A body statement is a type-parameter declaration when it consists of a
bare name optionally followed by ``extends`` bounds; anything else is a
chain declaration starting with its return type.
"""

from __future__ import annotations

from .lexer import Token, TokenType, tokenize
from .spec_ast import (
    Alt,
    ChainDecl,
    ChainExpr,
    ClassDecl,
    Member,
    MethodElem,
    MethodSig,
    Param,
    Repeat,
    Seq,
    Span,
    SpecModel,
    TypeParamDecl,
    TypeRef,
)

__all__ = ["ParseError", "parse_spec", "parse_text"]

_EOF = Token(TokenType.EOF, "", 0, 0)


class ParseError(Exception):
    """A token sequence that deviates from the specification grammar."""

    def __init__(self, message: str, line: int, col: int,
                 expected: tuple[str, ...] = ()) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


def parse_spec(tokens: list[Token]) -> SpecModel:
    """Parse a token sequence into an unresolved SpecModel."""
    return _Parser(tokens).parse()


def parse_text(text: str) -> SpecModel:
    """Tokenize and parse specification source text."""
    return parse_spec(tokenize(text))


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    # -- token helpers ------------------------------------------------------

    def _current(self) -> Token:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        if self._tokens:
            last = self._tokens[-1]
            return Token(TokenType.EOF, "", last.line, last.col + len(last.value))
        return Token(TokenType.EOF, "", 1, 1)

    def _check(self, *types: TokenType) -> bool:
        return self._current().type in types

    def _advance(self) -> Token:
        tok = self._current()
        if tok.type is not TokenType.EOF:
            self._pos += 1
        return tok

    def _expect(self, *types: TokenType) -> Token:
        tok = self._current()
        if tok.type not in types:
            expected = tuple(t.value for t in types)
            shown = " or ".join(repr(e) for e in expected)
            got = repr(tok.value) if tok.value else "end of input"
            raise ParseError(f"expected {shown}, got {got}",
                             tok.line, tok.col, expected)
        return self._advance()

    def _error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        tok = self._current()
        return ParseError(message, tok.line, tok.col, expected)

    def _span_from(self, start: Token) -> Span:
        prev = self._tokens[self._pos - 1] if self._pos > 0 else start
        return Span(start.line, start.col, prev.line, prev.col + len(prev.value))

    # -- grammar ------------------------------------------------------------

    def parse(self) -> SpecModel:
        classes = [self._parse_class()]
        while not self._check(TokenType.EOF):
            classes.append(self._parse_class())
        return SpecModel(classes=tuple(classes))

    def _parse_class(self) -> ClassDecl:
        start = self._expect(TokenType.KW_CLASS)
        name = self._expect(TokenType.NAME).value
        head_params: tuple[TypeParamDecl, ...] = ()
        if self._check(TokenType.LANGLE):
            head_params = self._parse_type_param_list()
        self._expect(TokenType.LBRACE)
        members: list[Member] = []
        while not self._check(TokenType.RBRACE):
            members.append(self._parse_member())
            # The terminator is optional when the statement already ends
            # with an action block's closing brace.
            ended_with_brace = (self._pos > 0 and
                                self._tokens[self._pos - 1].type is TokenType.RBRACE)
            if self._check(TokenType.SEMI):
                self._advance()
            elif not ended_with_brace:
                self._expect(TokenType.SEMI)
        self._expect(TokenType.RBRACE)
        return ClassDecl(name=name, head_params=head_params,
                         members=tuple(members), span=self._span_from(start))

    def _parse_type_param_list(self) -> tuple[TypeParamDecl, ...]:
        self._expect(TokenType.LANGLE)
        params = [self._parse_type_param(in_head_list=True)]
        while self._check(TokenType.COMMA):
            self._advance()
            params.append(self._parse_type_param(in_head_list=True))
        self._expect(TokenType.RANGLE)
        return tuple(params)

    def _parse_type_param(self, in_head_list: bool = False) -> TypeParamDecl:
        start = self._expect(TokenType.NAME)
        bounds: tuple[TypeRef, ...] = ()
        if self._check(TokenType.KW_EXTENDS):
            self._advance()
            refs = [self._parse_type_ref()]
            # Inside a head list a comma is ambiguous: it may extend this
            # parameter's bound list or introduce the next parameter. A bare
            # name followed by ',', '>' or 'extends' must be a new parameter.
            while self._check(TokenType.COMMA):
                if in_head_list and self._comma_starts_new_param():
                    break
                self._advance()
                refs.append(self._parse_type_ref())
            bounds = tuple(refs)
        return TypeParamDecl(name=start.value, bounds=bounds,
                             span=self._span_from(start))

    def _comma_starts_new_param(self) -> bool:
        after = self._peek(1)
        if after.type is not TokenType.NAME:
            return False
        return self._peek(2).type in (
            TokenType.COMMA, TokenType.RANGLE, TokenType.KW_EXTENDS)

    def _peek(self, offset: int) -> Token:
        pos = self._pos + offset
        if pos < len(self._tokens):
            return self._tokens[pos]
        return _EOF

    def _parse_member(self) -> Member:
        start = self._current()
        if self._check(TokenType.KW_STATIC):
            self._advance()
            return self._parse_chain(is_static=True, start=start)
        if not self._check(TokenType.NAME):
            raise self._error(
                f"expected chain or type-parameter declaration, got {start.value!r}",
                ("static", "name"))
        ref = self._parse_type_ref()
        is_bare_name = not ref.args and ref.array_dims == 0 and "." not in ref.name
        if is_bare_name and self._check(TokenType.SEMI, TokenType.KW_EXTENDS):
            bounds: tuple[TypeRef, ...] = ()
            if self._check(TokenType.KW_EXTENDS):
                self._advance()
                bounds = self._parse_type_ref_list()
            return TypeParamDecl(name=ref.name, bounds=bounds,
                                 span=self._span_from(start))
        return self._parse_chain(is_static=False, start=start, return_type=ref)

    def _parse_chain(self, is_static: bool, start: Token,
                     return_type: TypeRef | None = None) -> ChainDecl:
        if return_type is None:
            return_type = self._parse_type_ref()
        expr = self._parse_chain_expr()
        evaluator = None
        if self._check(TokenType.KW_RETURN):
            self._advance()
            evaluator = self._parse_qual_name()
        return ChainDecl(return_type=return_type, expr=expr, is_static=is_static,
                         evaluator=evaluator, span=self._span_from(start))

    def _parse_chain_expr(self) -> ChainExpr:
        options = [self._parse_chain_term()]
        while self._check(TokenType.PIPE):
            self._advance()
            options.append(self._parse_chain_term())
        if len(options) == 1:
            return options[0]
        return Alt(options=tuple(options))

    def _parse_chain_term(self) -> ChainExpr:
        facts = [self._parse_chain_fact()]
        while self._continues_term():
            facts.append(self._parse_chain_fact())
        if len(facts) == 1:
            return facts[0]
        return Seq(items=tuple(facts))

    def _continues_term(self) -> bool:
        # A further chain element is a group or a method call; requiring the
        # '(' after a name keeps a following statement (which starts with a
        # return type) from being swallowed when its predecessor ended with
        # an action block instead of ';'.
        if self._check(TokenType.LPAREN):
            return True
        return (self._check(TokenType.NAME)
                and self._peek(1).type is TokenType.LPAREN)

    def _parse_chain_fact(self) -> ChainExpr:
        elem = self._parse_chain_elem()
        if self._check(TokenType.QUESTION, TokenType.STAR, TokenType.PLUS):
            op = self._advance().value
            return Repeat(item=elem, op=op)
        return elem

    def _parse_chain_elem(self) -> ChainExpr:
        if self._check(TokenType.LPAREN):
            self._advance()
            expr = self._parse_chain_expr()
            self._expect(TokenType.RPAREN)
            return expr
        return MethodElem(sig=self._parse_method())

    def _parse_method(self) -> MethodSig:
        start = self._expect(TokenType.NAME)
        self._expect(TokenType.LPAREN)
        params: list[Param] = []
        if not self._check(TokenType.RPAREN):
            params.append(self._parse_method_param())
            while self._check(TokenType.COMMA):
                self._advance()
                params.append(self._parse_method_param())
        for param in params[:-1]:
            if param.vararg:
                raise self._error(
                    f"only the last parameter of {start.value!r} may be vararg")
        self._expect(TokenType.RPAREN)
        action = None
        if self._check(TokenType.LBRACE):
            self._advance()
            action = self._parse_qual_name()
            self._expect(TokenType.SEMI)
            self._expect(TokenType.RBRACE)
        return MethodSig(name=start.value, params=tuple(params), action=action,
                         span=self._span_from(start))

    def _parse_method_param(self) -> Param:
        ref = self._parse_type_ref()
        vararg = False
        if self._check(TokenType.ELLIPSIS):
            self._advance()
            vararg = True
        name = self._expect(TokenType.NAME).value
        return Param(type=ref, name=name, vararg=vararg)

    def _parse_type_ref(self) -> TypeRef:
        start = self._current()
        name = self._parse_qual_name()
        args: tuple[TypeRef, ...] = ()
        if self._check(TokenType.LANGLE):
            self._advance()
            args = self._parse_type_ref_list()
            self._expect(TokenType.RANGLE)
        dims = 0
        while self._check(TokenType.LBRACKET):
            self._advance()
            self._expect(TokenType.RBRACKET)
            dims += 1
        return TypeRef(name=name, args=args, array_dims=dims,
                       span=self._span_from(start))

    def _parse_type_ref_list(self) -> tuple[TypeRef, ...]:
        refs = [self._parse_type_ref()]
        while self._check(TokenType.COMMA):
            self._advance()
            refs.append(self._parse_type_ref())
        return tuple(refs)

    def _parse_qual_name(self) -> str:
        parts = [self._expect(TokenType.NAME).value]
        while self._check(TokenType.DOT):
            self._advance()
            parts.append(self._expect(TokenType.NAME).value)
        return ".".join(parts)
