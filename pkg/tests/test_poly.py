import pytest
from hypothesis import given, settings, strategies as st

from conftest import polynomials, ring_and_polys
from plusclosure.poly import GREVLEX, LEX, MonomialOrder, ParseError, Ring, VariableSet, format_poly, parse_poly


@pytest.fixture
def R7():
    return Ring("x,y,z", 7)


def test_add_sub(R7):
    x, y, _ = R7.gens
    assert (x + y) + (-y) == x
    assert x - x == R7.zero()


def test_mul_by_zero(R7):
    f = R7("x^2*y + 3*z")
    assert f * R7.zero() == R7.zero()
    assert (f * 0).is_zero()


def test_freshmans_dream_char_2():
    R = Ring("x,y", 2)
    x, y = R.gens
    assert (x + y) ** 2 == x**2 + y**2


def test_frobenius_power_basic(R7):
    x, y, _ = R7.gens
    assert (x + y).frobenius_power(7) == x**7 + y**7
    assert (2 * x).frobenius_power(7) == R7("2*x^7")
    assert (x + 3).frobenius_power(1) == x + 3


def test_frobenius_power_rejects_non_power(R7):
    with pytest.raises(ValueError):
        R7("x").frobenius_power(14)


@settings(max_examples=250, deadline=None)
@given(st.data())
def test_frobenius_power_equals_repeated_squaring(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    R = Ring("x,y,z", p)
    f = data.draw(polynomials(R, max_degree=2, max_terms=4))
    e = data.draw(st.integers(0, 3 if p == 2 else 2))
    q = p**e
    assert f.frobenius_power(q) == f**q


def test_derivative_examples():
    p = 5
    q = 25
    R = Ring("U,x,a", p)
    U, x, a = R.gens
    eq = U**q + U * x**q - a
    assert eq.derivative("U") == x**q
    assert R.constant(3).derivative("x").is_zero()
    assert (x**p).derivative("x").is_zero()


@given(ring_and_polys(count=2))
def test_leibniz(data):
    ring, f, g = data
    v = ring.vars[0]
    assert (f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v)


def test_parse_examples(R7):
    f = R7.parse("x^2*y + 3*z")
    assert len(f) == 2
    assert f.coeff((2, 1, 0)) == 1 and f.coeff((0, 0, 1)) == 3
    assert R7.parse("x - x").is_zero()
    cubic = R7.parse("X^3+Y^3+Z^3".lower())
    assert cubic == R7.gen("x") ** 3 + R7.gen("y") ** 3 + R7.gen("z") ** 3
    upper = parse_poly("X^3+Y^3+Z^3", VariableSet(["X", "Y", "Z"]), 7)
    assert len(upper) == 3


def test_parse_leading_minus_and_reduction(R7):
    assert R7.parse("-x") == R7.parse("6*x")
    assert R7.parse("10*y") == R7.parse("3*y")
    assert R7.parse("  x *  y ^ 2  ") == R7.gen("x") * R7.gen("y") ** 2
    assert R7.parse("2*3*x*x") == R7.parse("6*x^2")


@pytest.mark.parametrize(
    "text, line, column",
    [("x + + y", 1, 5), ("x^", 1, 3), ("x + w", 1, 5), ("x $ y", 1, 3), ("x +\n  (y)", 2, 3), ("", 1, 1)],
)
def test_parse_errors_carry_position(R7, text, line, column):
    with pytest.raises(ParseError) as info:
        R7.parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_parse_unknown_variable_message(R7):
    with pytest.raises(ParseError, match="unknown variable 'w'"):
        R7.parse("w")


def test_parse_exponent_overflow(R7):
    with pytest.raises(ParseError, match="overflow"):
        R7.parse("x^4294967296")
    with pytest.raises(ParseError, match="overflow"):
        R7.parse("x^4294967295*x")


def test_mul_exponent_overflow(R7):
    big = R7.parse("x^4294967295")
    with pytest.raises(OverflowError):
        big * R7.gen("x")


@given(ring_and_polys(count=1, primes=(2, 3, 5, 7, 101)))
def test_parse_format_roundtrip(data):
    ring, f = data
    assert ring.parse(format_poly(f)) == f
    assert ring.parse(format_poly(f, LEX)) == f


def test_format_examples(R7):
    assert format_poly(R7.parse("x^2*y + 3*z - 1")) == "x^2*y + 3*z - 1"
    assert format_poly(R7.zero()) == "0"
    assert format_poly(R7.parse("6")) == "-1"


def test_variable_set_validation():
    with pytest.raises(ValueError):
        VariableSet(["x", "x"])
    with pytest.raises(ValueError):
        VariableSet(["1x"])
    assert VariableSet("a, b,c") == ("a", "b", "c")


def test_grevlex_examples():
    key = GREVLEX.key
    # x > y > z; degree first
    assert key((1, 0, 0)) > key((0, 1, 0)) > key((0, 0, 1))
    assert key((0, 0, 2)) > key((1, 0, 0))
    # x*z^2 < y^3 in grevlex (same degree, smaller z power wins)
    assert key((0, 3, 0)) > key((1, 0, 2))
    # x^2 z vs x y^2: the latter has no z, so it is larger
    assert key((1, 2, 0)) > key((2, 0, 1))
    assert LEX.key((1, 0, 2)) > LEX.key((0, 3, 0))


monos = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
orders = st.sampled_from([GREVLEX, LEX, MonomialOrder.block(1), MonomialOrder.block(2)])


def _tuple_order(order, a, b):
    """Reference comparison from textbook definitions, independent of integer keys."""
    if order.kind == "lex":
        return (a > b) - (a < b)
    if order.kind == "grevlex":
        return _grevlex_cmp(a, b)
    k = order.k
    c = _grevlex_cmp(a[:k], b[:k])
    return c if c else _grevlex_cmp(a[k:], b[k:])


def _grevlex_cmp(a, b):
    if sum(a) != sum(b):
        return 1 if sum(a) > sum(b) else -1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return 1 if x < y else -1
    return 0


@given(orders, monos, monos, monos)
def test_order_properties(order, a, b, c):
    key = order.key
    cmp = (key(a) > key(b)) - (key(a) < key(b))
    assert cmp == _tuple_order(order, a, b)
    if key(a) < key(b) and key(b) < key(c):
        assert key(a) < key(c)
    if a != b:
        assert key(a) != key(b)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    if key(a) < key(b):
        assert key(ac) < key(bc)
    assert key((0, 0, 0, 0)) <= key(a)
    assert order.exps_from_key(key(a), 4) == a


def test_divexact_and_divmod(R7):
    x, y, z = R7.gens
    f = (x + y) * (x**2 - z)
    assert f.divexact(x + y) == x**2 - z
    with pytest.raises(ArithmeticError):
        (x**2 + 1).divexact(x + y)


def test_substitute(R7):
    S = Ring("u,v", 7)
    u, v = S.gens
    f = R7.parse("x*y + z^2")
    assert f.substitute({"x": u, "y": v, "z": u + v}, S) == u * v + (u + v) ** 2


def test_ring_mismatch():
    with pytest.raises(ValueError):
        Ring("x", 5).gen("x") + Ring("x", 7).gen("x")
    with pytest.raises(ValueError):
        Ring("x", 5).gen("x") * Ring("x,y", 5).gen("x")
