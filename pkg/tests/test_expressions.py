import pytest

from mirigs.errors import ParseError
from mirigs.expressions import Add, Const, Gen, Mul, max_generator, parse_expression


def test_precedence():
    e = parse_expression("a+b*c")
    assert e == Add(Gen(0), Mul(Gen(1), Gen(2)))


def test_parentheses():
    e = parse_expression("(a+b)*c")
    assert e == Mul(Add(Gen(0), Gen(1)), Gen(2))


def test_left_fold():
    assert parse_expression("a+b+c") == Add(Add(Gen(0), Gen(1)), Gen(2))
    assert parse_expression("a*b*c") == Mul(Mul(Gen(0), Gen(1)), Gen(2))


def test_numbers_and_whitespace():
    assert parse_expression("  12 +  a ") == Add(Const(12), Gen(0))
    assert parse_expression("1+1+1+1") == Add(Add(Add(Const(1), Const(1)), Const(1)), Const(1))


def test_max_generator():
    assert max_generator(parse_expression("2")) == -1
    assert max_generator(parse_expression("a*(b+c)")) == 2


@pytest.mark.parametrize(
    "text,offset",
    [("a+", 2), ("", 0), ("a b", 2), ("(a", 2), ("a+*b", 2), ("A", 0)],
)
def test_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.offset == offset
