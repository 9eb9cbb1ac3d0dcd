from fractions import Fraction

from hypothesis import given, strategies as st

from feyncat.linear import FreeModuleElement, bilinear, tensor

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=5)
elements = st.dictionaries(st.sampled_from("abcd"), coefficients, max_size=4).map(FreeModuleElement)


@given(elements, elements, elements)
def test_addition_is_an_abelian_group(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x - x).is_zero()
    assert x + FreeModuleElement() == x


@given(elements, coefficients, coefficients)
def test_scalars_distribute(x, a, b):
    assert (a + b) * x == a * x + b * x
    assert a * (b * x) == (a * b) * x


def test_zero_terms_are_dropped():
    x = FreeModuleElement([("a", 1), ("a", -1), ("b", 0)])
    assert x.is_zero() and len(x) == 0 and repr(x) == "0"


def test_coefficients_are_exact():
    x = FreeModuleElement({"a": Fraction(1, 3)})
    assert (3 * x).coefficient("a") == 1
    assert x.coefficient("z") == 0


@given(elements, elements)
def test_tensor_is_bilinear(x, y):
    assert tensor(x + y, y) == tensor(x, y) + tensor(y, y)
    assert tensor(2 * x, y) == 2 * tensor(x, y)


@given(elements, elements)
def test_bilinear_extension_of_concatenation(x, y):
    concat = lambda a, b: FreeModuleElement.basis(a + b)
    out = bilinear(x, y, concat)
    assert out == tensor(x, y).map_keys(lambda p: p[0] + p[1])


def test_map_is_linear_extension():
    x = FreeModuleElement({"a": 2, "b": 1})
    f = lambda k: FreeModuleElement({k + "1": 1, k + "2": -1})
    assert x.map(f) == FreeModuleElement({"a1": 2, "a2": -2, "b1": 1, "b2": -1})


def test_json_uses_exact_strings():
    x = FreeModuleElement({"a": Fraction(-3, 4)})
    assert x.to_json(str) == [{"key": "a", "coefficient": "-3/4"}]


def test_equal_elements_hash_equal():
    assert hash(FreeModuleElement({"a": 1, "b": 2})) == hash(FreeModuleElement([("b", 2), ("a", 1)]))
