import pickle

from astower.core.exceptions import (
    EmbeddingError,
    FieldError,
    FieldMismatchError,
    NotInvertibleError,
    ReducibleModulusError,
)
from astower.core.gf2m import (
    FieldDescriptor,
    FieldElement,
    arith,
    embed_f4,
    field_new,
    is_irreducible,
    solve_artin_schreier,
    trace,
)
from pytest import raises


def test_field_new() -> None:
    """Test default moduli, interning and rejected parameters."""
    F4 = field_new(2)
    F8 = field_new(3)
    assert F4.modulus == 0b111
    assert F8.modulus == 0b1011
    assert field_new(4).modulus == 0b10011
    assert field_new(3) is F8
    assert FieldDescriptor(3, 0b1011) is F8
    assert field_new(3, 0b1101) is not F8
    assert repr(F8) == "GF(2^3)"
    assert F8.order == 8
    assert pickle.loads(pickle.dumps(F8)) is F8

    raises(FieldError, lambda: field_new(0))
    raises(FieldError, lambda: field_new(33))
    raises(ReducibleModulusError, lambda: field_new(4, 0b10001))
    raises(ReducibleModulusError, lambda: field_new(3, 0b111))
    raises(ReducibleModulusError, lambda: FieldDescriptor(4, 0b10001))
    raises(ReducibleModulusError, lambda: FieldDescriptor(3, 0b10011))
    assert isinstance(ReducibleModulusError(), ValueError)


def test_is_irreducible() -> None:
    """Test the irreducibility scan on small polynomials."""
    irreducible = [p for p in range(2, 64) if is_irreducible(p)]
    # 3 irreducible quartics and 6 quintics over F_2
    assert irreducible[:5] == [0b10, 0b11, 0b111, 0b1011, 0b1101]
    assert len([p for p in irreducible if p.bit_length() == 5]) == 3
    assert len([p for p in irreducible if p.bit_length() == 6]) == 6
    assert is_irreducible(1) is False


def test_generator() -> None:
    """Test that the fixed generator is primitive."""
    for m in range(1, 13):
        F = field_new(m)
        assert F.gen.order() == F.order - 1
    assert field_new(3).gen == FieldElement(field_new(3), 0b10)
    assert field_new(1).gen == field_new(1).one


def test_FieldElement_arithmetic() -> None:
    """Test operators on GF(2^3) elements."""
    F8 = field_new(3)
    a = F8.gen
    one, zero = F8.one, F8.zero

    assert a + a == zero
    assert a - one == a + one
    assert -a == a
    assert a**3 == a + one
    assert a**7 == one
    assert a**0 == one
    assert a**-1 == a**6
    assert 1 / a == a**2 + one
    assert a / a == one
    assert (a * a).frobenius() == a**4
    assert a.wp() == a**2 + a
    assert a.inverse() * a == one
    assert int(a) == 0b10
    assert bool(zero) is False
    assert str(a**3) == "a + 1"
    assert str(zero) == "0"
    assert repr(a) == "FieldElement(GF(2^3), 0b10)"
    assert len(set(F8.elements())) == 8

    raises(NotInvertibleError, lambda: zero.inverse())
    raises(ZeroDivisionError, lambda: a / zero)
    raises(NotInvertibleError, lambda: zero.order())
    raises(FieldError, lambda: F8(8))


def test_FieldElement_mismatch() -> None:
    """Test that elements of different fields do not mix."""
    a = field_new(3).gen
    b = field_new(4).gen
    raises(FieldMismatchError, lambda: a + b)
    raises(FieldMismatchError, lambda: a * b)
    raises(TypeError, lambda: a * b)
    raises(TypeError, lambda: a + 1)  # type:ignore
    raises(TypeError, lambda: a * 2)  # type:ignore
    raises(TypeError, lambda: a / 2)  # type:ignore
    raises(TypeError, lambda: 2 / a)
    raises(TypeError, lambda: a**1.5)  # type:ignore
    assert (a == 2) is False
    assert (a == b) is False


def test_arith() -> None:
    """Test the arith dispatcher."""
    F4 = field_new(2)
    rho = F4.gen
    assert arith("add", rho, rho, rho) == rho
    assert arith("mul", rho, rho) == rho + F4.one
    assert arith("inv", rho) == rho**2
    assert arith("pow", rho, 3) == F4.one
    raises(ValueError, lambda: arith("sub", rho, rho))
    raises(TypeError, lambda: arith("add", rho, 1))
    raises(TypeError, lambda: arith("pow", rho, rho))
    raises(FieldMismatchError, lambda: arith("mul", rho, field_new(3).gen))


def test_large_field() -> None:
    """Test arithmetic without log tables in GF(2^20)."""
    F = field_new(20)
    x = F(0x5A5A5)
    assert x * x.inverse() == F.one
    assert x ** (F.order - 1) == F.one
    assert trace(x) in (0, 1)


def test_trace() -> None:
    """Test the absolute trace, half of every field has trace zero."""
    for m in range(1, 9):
        F = field_new(m)
        traces = [trace(x) for x in F.elements()]
        assert set(traces) == {0, 1}
        assert traces.count(0) == F.order // 2
        assert trace(F.one) == m % 2


def test_solve_artin_schreier() -> None:
    """Test roots of y^2 + y = c in odd and even degree."""
    for m in range(1, 11):
        F = field_new(m)
        for c in F.elements():
            roots = solve_artin_schreier(c)
            if trace(c):
                assert roots is None
            else:
                assert roots is not None
                y0, y1 = roots
                assert y0.wp() == c and y1.wp() == c
                assert y0 + y1 == F.one
                assert int(y0) < int(y1)


def test_half_trace() -> None:
    """Test that the half-trace solves y^2 + y = c in odd degree only."""
    F8 = field_new(3)
    for c in range(8):
        if not F8.trace_int(c):
            y = F8.half_trace_int(c)
            assert F8.square_int(y) ^ y == c
    raises(FieldError, lambda: field_new(4).half_trace_int(1))


def test_embed_f4() -> None:
    """Test the embedding of F_4 into even degree fields."""
    F4 = field_new(2)
    rho = F4.gen
    for m in (2, 4, 6, 8):
        F = field_new(m)
        image = embed_f4(rho, F)
        assert image * image + image == F.one
        assert embed_f4(rho**2, F) == image + F.one
        assert embed_f4(F4.one, F) == F.one
        assert embed_f4(F4.zero, F) == F.zero
        for x in F4.elements():
            for y in F4.elements():
                assert embed_f4(x * y, F) == embed_f4(x, F) * embed_f4(y, F)
    raises(EmbeddingError, lambda: embed_f4(rho, field_new(3)))
    raises(EmbeddingError, lambda: embed_f4(field_new(3).gen, field_new(4)))
