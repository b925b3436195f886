import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphrec.core import Alphabet, factors_of
from morphrec.fixtures import ex34, ex51, ex75, fibonacci, thue_morse
from morphrec.languages import (Membership, full_language_contains, language_of_morphism,
                                level_language, member, saturate_levels)
from morphrec.morphisms import Morphism, MorphismSequence, constant_sequence, telescope


def test_fibonacci_language():
    fs = language_of_morphism(fibonacci(), 2, horizon=4)
    assert fs.strings() == ["a", "aa", "ab", "b", "ba"]
    assert fs.saturated
    assert not language_of_morphism(fibonacci(), 2, horizon=3).saturated
    assert member(fs, fibonacci().domain.word("bb")) is Membership.NOT_SEEN
    with pytest.raises(ValueError):
        member(fs, fibonacci().domain.word("abaab"))


def test_thue_morse_language():
    fs = language_of_morphism(thue_morse(), 2, horizon=3)
    assert fs.strings() == ["a", "aa", "ab", "b", "ba", "bb"]
    assert fs.saturated
    assert member(fs, (0, 1)) is Membership.IN


def test_ex34_language():
    fs = language_of_morphism(ex34(), 2)
    # c itself is a word of the language (zero iterations); bb never occurs
    assert fs.strings() == ["a", "aa", "ab", "b", "ba", "c"]
    assert fs.certified_complete
    assert member(fs, (1, 1)) is Membership.NOT_SEEN


def test_ex51_levels():
    seq = ex51()
    assert level_language(seq, 0, 3, 5).strings() == ["a", "aa", "aaa"]
    l1 = level_language(seq, 1, 3, 5).strings()
    assert "aba" in l1 and "bab" in l1 and "aab" not in l1


def test_horizon_equals_level():
    seq = ex51()
    fs = level_language(seq, 2, 4, horizon=2)
    assert fs.strings() == ["a", "b", "c"]


def test_constant_sequence_levels_match_morphism():
    seq = constant_sequence(fibonacci())
    for n in range(3):
        assert level_language(seq, n, 2).strings() == ["a", "aa", "ab", "b", "ba"]


def test_ex75_top_level():
    seq = ex75(1)
    fs = level_language(seq, 2, 3)
    A = seq.alphabet(2)
    expected = set()
    for i in range(3):
        expected |= {A.render(z)
                     for z in factors_of((0,) * 4 + (i,) + (0,) * 4, 3)}
    assert set(fs.strings()) == expected


def test_one_letter_level():
    fs = level_language(ex75(2), 0, 4)
    assert fs.strings() == ["a_0", "a_0 a_0", "a_0 a_0 a_0", "a_0 a_0 a_0 a_0"]


def test_saturate_levels():
    sats = saturate_levels(ex51(), 3)
    assert [fs.level for fs in sats] == [0, 1, 2]
    assert all(fs.certified_complete for fs in sats)
    # a 1-step cap is too small for level 1
    assert saturate_levels(ex51(), 3, cap=1)[1].truncated


def test_full_language_contains():
    fs = language_of_morphism(fibonacci(), 3)
    assert full_language_contains(None, (1, 1, 1))
    assert full_language_contains(fs, (0, 1, 0, 0, 1))
    assert not full_language_contains(fs, (0, 1, 1, 0))


def test_bad_arguments():
    with pytest.raises(ValueError):
        language_of_morphism(fibonacci(), 0)
    with pytest.raises(ValueError):
        language_of_morphism(ex51()[0], 2)
    with pytest.raises(ValueError):
        level_language(ex51(), 3, 2, horizon=2)


# -- against explicit expansion -----------------------------------------------

def brute_level(seq, n, max_len, horizon):
    words = set()
    for m in range(n, horizon + 1):
        t = telescope(seq, n, m)
        for im in t.images:
            words |= factors_of(im, max_len)
    words |= {(s,) for s in range(len(seq.alphabet(n)))}
    return words


AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


@st.composite
def sequences(draw):
    def endo(alphabet, cod):
        return Morphism(alphabet, cod, tuple(
            tuple(draw(st.lists(st.integers(0, len(cod) - 1), min_size=0, max_size=3)))
            for _ in alphabet))
    cyc = endo(ABC, ABC)
    pre = ()
    if draw(st.booleans()):
        pre = (endo(ABC, AB),)
    return MorphismSequence(pre, (cyc,))


@settings(max_examples=150, deadline=None)
@given(sequences(), st.integers(1, 4), st.integers(0, 4))
def test_level_language_matches_expansion(seq, max_len, horizon):
    fs = level_language(seq, 0, max_len, horizon)
    assert set(fs.words.words) == brute_level(seq, 0, max_len, horizon)


@settings(max_examples=100, deadline=None)
@given(sequences(), st.integers(1, 3))
def test_saturated_is_final(seq, max_len):
    fs = level_language(seq, 0, max_len, 64)
    if fs.saturated:
        later = level_language(seq, 0, max_len, fs.horizon + 4)
        assert later.words.words == fs.words.words
