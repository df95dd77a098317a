from astower.core.laurent import classify_chain_symbolic
from astower.core.sequence import IndexSequence
from astower.tower.exceptions import EnumerationRangeError
from astower.tower.rami import (
    A0Class,
    GenusMethod,
    Ramification,
    class_multiplicity,
    classify_closed,
    count_ramified,
    genus,
    genus_table,
    ledger,
    n_closed,
    special_sequences,
    zero_class,
    zero_sequences,
)
from pytest import raises


def test_zero_sequences() -> None:
    """Test the index sequences of the zeros of x_i."""
    assert [str(s) for s in zero_sequences(1)] == ["(rho,0)", "(rho2,0)"]
    assert [str(s) for s in zero_sequences(3)] == [
        "(rho,1,rho,0)",
        "(rho,1,rho2,0)",
        "(rho2,1,rho,0)",
        "(rho2,1,rho2,0)",
    ]
    for i in range(1, 9):
        sequences = zero_sequences(i)
        assert len(sequences) == 1 << ((i + 1) // 2)
        assert len(set(sequences)) == len(sequences)
        for seq in sequences:
            assert seq.is_zero_sequence()
            assert seq.alternation_class(i) is zero_class(i)
    assert zero_class(4) is A0Class.ONE
    assert zero_class(5) is A0Class.RHO
    raises(EnumerationRangeError, lambda: zero_sequences(0))
    raises(ValueError, lambda: zero_sequences(-3))


def test_special_sequences() -> None:
    """Test the two chains that ramify at every step."""
    assert [str(s) for s in special_sequences(0)] == ["(0)", "(inf)"]
    assert [str(s) for s in special_sequences(2)] == ["(0,inf,inf)", "(inf,inf,inf)"]
    raises(EnumerationRangeError, lambda: special_sequences(-1))


def test_classify_closed() -> None:
    """Test the closed pattern against the symbolic classification."""
    R, U = Ramification.TOTALLY_RAMIFIED, Ramification.UNRAMIFIED
    closed = [classify_closed(4, t, A0Class.ONE) for t in range(7)]
    assert closed == [R, U, R, U, R, R, R]
    closed = [classify_closed(5, t, A0Class.RHO) for t in range(7)]
    assert closed == [R, U, R, U, R, R, R]
    assert [classify_closed(1, t, A0Class.RHO) for t in range(3)] == [R, R, R]
    assert [classify_closed(2, t, A0Class.RHO) for t in range(3)] == [U, R, R]
    assert classify_closed(0, 3, A0Class.SPECIAL) is R

    for i in range(1, 9):
        for seq in zero_sequences(i):
            for step in classify_chain_symbolic(seq, i):
                assert step.kind is classify_closed(i, step.t_step, zero_class(i))

    raises(EnumerationRangeError, lambda: classify_closed(2, -1, A0Class.ONE))
    raises(EnumerationRangeError, lambda: classify_closed(0, 1, A0Class.ONE))


def test_class_multiplicity() -> None:
    """Test that unramified steps double the number of points."""
    assert class_multiplicity(2, 0, A0Class.ONE) == 1
    assert class_multiplicity(2, 1, A0Class.ONE) == 1
    assert class_multiplicity(2, 2, A0Class.ONE) == 2
    assert class_multiplicity(2, 5, A0Class.ONE) == 2
    assert class_multiplicity(6, 6, A0Class.ONE) == 1 << 3
    assert class_multiplicity(0, 9, A0Class.SPECIAL) == 1


def test_ledger() -> None:
    """Test the boundary classes of C_2."""
    entries = ledger(2)
    assert [(str(e.sequence), e.origin_i, e.tail_j, e.mult) for e in entries] == [
        ("(rho,0,inf)", 1, 1, 1),
        ("(rho2,0,inf)", 1, 1, 1),
        ("(1,rho,0)", 2, 0, 1),
        ("(1,rho2,0)", 2, 0, 1),
        ("(0,inf,inf)", 0, 2, 1),
        ("(inf,inf,inf)", 0, 2, 1),
    ]
    assert all(e.level == 2 for e in entries)
    assert [e.next_step().value for e in entries[:4]] == [
        "totally_ramified",
        "totally_ramified",
        "totally_ramified",
        "totally_ramified",
    ]
    assert [str(e.sequence) for e in ledger(0)] == ["(0)", "(inf)"]

    # Every step above C_4 sends a class to a class of C_5.
    for e in ledger(4):
        if e.a0_class is A0Class.SPECIAL:
            continue
        factor = 1 if e.next_step() is Ramification.TOTALLY_RAMIFIED else 2
        mult = class_multiplicity(e.origin_i, e.tail_j + 1, e.a0_class)
        assert mult == factor * e.mult


def test_count_ramified() -> None:
    """Test n_i from the ledger against the closed form."""
    assert [count_ramified(i) for i in range(6)] == [2, 4, 6, 8, 12, 24]
    for i in range(31):
        assert count_ramified(i) == n_closed(i)
    raises(EnumerationRangeError, lambda: count_ramified(-1))
    raises(EnumerationRangeError, lambda: n_closed(-1))


def test_genus() -> None:
    """Test the genus by the Hurwitz sum and the closed form."""
    assert [genus(i) for i in range(6)] == [0, 1, 5, 15, 37, 85]
    assert genus(10) == genus(10, GenusMethod.CLOSED) == 3777
    for i in range(51):
        assert genus(i) == genus(i, GenusMethod.CLOSED)
    raises(EnumerationRangeError, lambda: genus(-1))
    raises(ValueError, lambda: genus(3, "closed"))  # type:ignore


def test_genus_table() -> None:
    """Test the recurrence g_{i+1} = 2 g_i - 1 + n_i."""
    assert genus_table(3) == [(0, 0, 0), (1, 1, 1), (2, 5, 5), (3, 15, 15)]
    assert all(h == c for _, h, c in genus_table(50))
    assert genus_table(50)[-1][1] == genus(50)


def test_index_sequences_of_ledger() -> None:
    """Test that ledger sequences parse back to themselves."""
    for e in ledger(3):
        assert IndexSequence.parse(str(e.sequence)) == e.sequence
        assert e.sequence.split_tail()[1] == e.tail_j or e.a0_class is A0Class.SPECIAL
