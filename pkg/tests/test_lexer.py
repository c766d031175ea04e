import pytest

from protogen.lexer import LexError, TokenType, tokenize

from conftest import ALL_SPECS, fixture_text


def types(text):
    return [t.type for t in tokenize(text)]


def values(text):
    return [t.value for t in tokenize(text)]


def test_class_header():
    assert types("class OurAPI {") == [
        TokenType.KW_CLASS, TokenType.NAME, TokenType.LBRACE]
    assert values("class OurAPI {") == ["class", "OurAPI", "{"]


def test_empty_input_yields_no_tokens():
    assert tokenize("") == []


def test_put_chain_element():
    assert types("put(K key, V value)*") == [
        TokenType.NAME, TokenType.LPAREN, TokenType.NAME, TokenType.NAME,
        TokenType.COMMA, TokenType.NAME, TokenType.NAME, TokenType.RPAREN,
        TokenType.STAR]
    assert values("put(K key, V value)*") == [
        "put", "(", "K", "key", ",", "V", "value", ")", "*"]


def test_keywords_are_reserved():
    assert types("class static extends return") == [
        TokenType.KW_CLASS, TokenType.KW_STATIC, TokenType.KW_EXTENDS,
        TokenType.KW_RETURN]


def test_names_may_contain_digits_and_underscores():
    toks = tokenize("Size128 NEW_COL x9_y")
    assert [t.type for t in toks] == [TokenType.NAME] * 3
    assert [t.value for t in toks] == ["Size128", "NEW_COL", "x9_y"]


def test_ellipsis_vs_dot():
    assert types("a...b.c") == [
        TokenType.NAME, TokenType.ELLIPSIS, TokenType.NAME, TokenType.DOT,
        TokenType.NAME]


def test_array_brackets():
    assert types("int[][]") == [
        TokenType.NAME, TokenType.LBRACKET, TokenType.RBRACKET,
        TokenType.LBRACKET, TokenType.RBRACKET]


def test_line_comments_are_stripped():
    toks = tokenize("K; V; // Define type parameters for this class\n}")
    assert [t.value for t in toks] == ["K", ";", "V", ";", "}"]


def test_comment_at_end_of_input_without_newline():
    assert tokenize("// nothing here") == []


def test_positions_are_one_based():
    toks = tokenize("class A {\n  K;\n}")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (1, 7)
    k = toks[3]
    assert (k.value, k.line, k.col) == ("K", 2, 3)


@pytest.mark.parametrize("bad,line,col", [
    ("class @ {", 1, 7),
    ("a\n  #x", 2, 3),
    ('m("str")', 1, 3),
])
def test_lex_error_position(bad, line, col):
    with pytest.raises(LexError) as err:
        tokenize(bad)
    assert (err.value.line, err.value.col) == (line, col)


@pytest.mark.parametrize("name", ALL_SPECS)
def test_all_fixture_specs_tokenize(name):
    toks = tokenize(fixture_text(name))
    assert toks
    assert all(t.type is not TokenType.EOF for t in toks)
