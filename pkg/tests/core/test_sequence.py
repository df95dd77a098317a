from astower.core.exceptions import SequenceError
from astower.core.gf2m import field_new
from astower.core.sequence import A0Class, IndexSequence, Symbol, f4_name
from pytest import raises


def test_Symbol() -> None:
    """Test the alphabet and the successor table."""
    assert Symbol.INF.successors() == (Symbol.INF,)
    assert Symbol.ZERO.successors() == (Symbol.INF,)
    assert Symbol.ONE.successors() == (Symbol.RHO, Symbol.RHO2)
    assert Symbol.RHO.successors() == (Symbol.ZERO, Symbol.ONE)
    assert Symbol.RHO2.successors() == (Symbol.ZERO, Symbol.ONE)
    assert str(Symbol.RHO2) == "rho2"
    assert Symbol.RHO.is_rho and not Symbol.ONE.is_rho
    assert not Symbol.INF.is_finite

    F4 = field_new(2)
    assert Symbol.RHO.f4_value() == F4.gen
    assert Symbol.RHO2.f4_value() == F4.gen**2
    assert Symbol.ONE.f4_bits() == 1
    raises(SequenceError, lambda: Symbol.INF.f4_bits())
    assert [f4_name(x) for x in F4.elements()] == ["0", "1", "rho", "rho2"]


def test_IndexSequence_validation() -> None:
    """Test that the successor table is enforced."""
    seq = IndexSequence.parse("1,rho,0,inf")
    assert seq.entries == (Symbol.ONE, Symbol.RHO, Symbol.ZERO, Symbol.INF)
    assert str(seq) == "(1,rho,0,inf)"
    assert IndexSequence.parse("(1, rho2, 1)") == IndexSequence.of(["1", "rho2", "1"])
    assert len(seq) == 4 and seq.level == 3
    assert seq[2] is Symbol.ZERO
    assert list(seq) == list(seq.entries)

    raises(SequenceError, lambda: IndexSequence.parse("1,0"))
    raises(SequenceError, lambda: IndexSequence.parse("0,1"))
    raises(SequenceError, lambda: IndexSequence.parse("inf,0"))
    raises(SequenceError, lambda: IndexSequence.parse("1,x"))
    raises(SequenceError, lambda: IndexSequence(()))
    raises(ValueError, lambda: IndexSequence.parse("rho,rho"))


def test_IndexSequence_extend() -> None:
    """Test successors, tails and prefixes."""
    seq = IndexSequence.parse("1,rho")
    assert [str(s) for s in seq.successors()] == ["(1,rho,0)", "(1,rho,1)"]
    assert [str(s) for s in IndexSequence.parse("inf").successors()] == ["(inf,inf)"]
    zero = IndexSequence.parse("rho,0")
    assert str(zero.with_tail(3)) == "(rho,0,inf,inf,inf)"
    assert zero.with_tail(3).split_tail() == (zero, 3)
    inf = IndexSequence.parse("inf")
    assert IndexSequence.parse("inf,inf").split_tail() == (inf, 1)
    assert seq.prefix(1) == IndexSequence.parse("1")
    assert seq.f4_values() == [1, 2]
    raises(SequenceError, lambda: zero.with_tail(1).f4_values())


def test_IndexSequence_classes() -> None:
    """Test alternation classes and zero sequences."""
    assert IndexSequence.parse("1,rho,1").alternation_class() is A0Class.ONE
    assert IndexSequence.parse("rho2,1,rho").alternation_class() is A0Class.RHO
    assert IndexSequence.parse("0,inf").a0_class() is A0Class.SPECIAL
    raises(SequenceError, lambda: IndexSequence.parse("0,inf").alternation_class())
    raises(SequenceError, lambda: IndexSequence.parse("1,rho,0").alternation_class())
    assert IndexSequence.parse("1,rho,0").alternation_class(2) is A0Class.ONE

    assert A0Class.ONE.parity == 0
    assert A0Class.RHO.parity == 1
    raises(SequenceError, lambda: A0Class.SPECIAL.parity)

    assert IndexSequence.parse("rho,0").is_zero_sequence()
    assert IndexSequence.parse("1,rho2,0").is_zero_sequence()
    assert not IndexSequence.parse("0").is_zero_sequence()
    assert not IndexSequence.parse("0,inf").is_zero_sequence()
    assert not IndexSequence.parse("1,rho,1").is_zero_sequence()
    assert not IndexSequence.parse("rho,0,inf").is_zero_sequence()


def test_IndexSequence_is_defined_over() -> None:
    """Test that sequences with rho need F_4 inside the field."""
    with_rho = IndexSequence.parse("rho,0,inf")
    without_rho = IndexSequence.parse("0,inf,inf")
    for k in (1, 3, 5):
        assert not with_rho.is_defined_over(field_new(k))
        assert without_rho.is_defined_over(field_new(k))
    for k in (2, 4):
        assert with_rho.is_defined_over(field_new(k))
