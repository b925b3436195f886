"""Built-in morphisms, sequences and shift models for the worked examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import EPP, Alphabet, Word
from .morphisms import Morphism, MorphismSequence, constant_sequence


def fibonacci() -> Morphism:
    return Morphism.from_dict({"a": "ab", "b": "a"}, name="fibonacci")


def thue_morse() -> Morphism:
    return Morphism.from_dict({"a": "ab", "b": "ba"}, name="thue-morse")


def ex34() -> Morphism:
    """a -> aa, b -> ab, c -> ba as an endomorphism of {a, b, c}."""
    return Morphism.from_dict({"a": "aa", "b": "ab", "c": "ba"}, name="ex3.4")


def _a(i: int) -> str:
    return f"a_{i}"


def _sandwich_morphism(n_letters: int, extra: Optional[int], name: str,
                       codomain_size: int) -> Morphism:
    """a_i -> a_0 a_i a_0 for i < n_letters; optionally a_{extra} -> a_{extra-1}."""
    dom_size = n_letters + (1 if extra is not None else 0)
    dom = Alphabet(tuple(_a(i) for i in range(dom_size)))
    cod = Alphabet(tuple(_a(i) for i in range(codomain_size)))
    rules = {_a(i): [_a(0), _a(i), _a(0)] for i in range(n_letters)}
    if extra is not None:
        rules[_a(extra)] = [_a(extra - 1)]
    return Morphism.from_dict(rules, codomain=cod, domain=dom, name=name)


def ex75(K: int = 2) -> MorphismSequence:
    """A_n = {a_0..a_n} for n <= K and {a_0..a_{K+1}} beyond; sigma_n fixes
    a_i -> a_0 a_i a_0 and, for n <= K, sends a_{n+1} -> a_n."""
    if K < 1:
        raise ValueError("K must be >= 1")
    pre = [_sandwich_morphism(n + 1, n + 1, f"σ{n}", n + 1) for n in range(K + 1)]
    tail = _sandwich_morphism(K + 2, None, f"σ{K + 1}", K + 2)
    return MorphismSequence(tuple(pre), (tail,), name=f"ex7.5 K={K}")


def ex76(N: int = 3) -> MorphismSequence:
    """A_n = {a_0..a_{n+1}}, sigma_n: a_i -> a_0 a_i a_0, a_{n+2} -> a_{n+1},
    cut after N levels: from level N on the sandwich endomorphism of A_N repeats."""
    if N < 1:
        raise ValueError("N must be >= 1")
    pre = [_sandwich_morphism(n + 2, n + 2, f"σ{n}", n + 2) for n in range(N)]
    tail = _sandwich_morphism(N + 2, None, f"σ{N}", N + 2)
    return MorphismSequence(tuple(pre), (tail,), name=f"ex7.6 N={N}", truncated=True)


def ex51() -> MorphismSequence:
    s0 = Morphism.from_dict({"a": "a", "b": ""}, codomain="a", domain="ab", name="σ0")
    s1 = Morphism.from_dict({"a": "a", "b": "bb", "c": "ab"}, codomain="ab",
                            domain="abc", name="σ1")
    s2 = Morphism.from_dict({"a": "a", "b": "bb", "c": "cab"}, name="σ2")
    return MorphismSequence((s0, s1), (s2,), name="ex5.1")


def single_letter_point(alphabet: Alphabet, background: str, special: str) -> EPP:
    """``...bb.s bb...`` with ``s`` at index 0."""
    bg = alphabet.word([background])
    return EPP(bg, alphabet.word([special]), bg, 0)


def ex51_models() -> dict:
    from .sadic import ShiftModel
    seq = ex51()
    a0, a1, a2 = seq.alphabet(0), seq.alphabet(1), seq.alphabet(2)
    return {
        0: ShiftModel(0, (EPP.periodic(a0.word("a")),)),
        1: ShiftModel(1, (single_letter_point(a1, "b", "a"),)),
        2: ShiftModel(2, (single_letter_point(a2, "b", "a"),)),
    }


def _sandwich_models(seq: MorphismSequence, levels: int, top: int) -> dict:
    from .sadic import ShiftModel
    models = {}
    for n in range(levels):
        alpha = seq.alphabet(n)
        gens = tuple(single_letter_point(alpha, _a(0), _a(i))
                     for i in range(min(n + top, len(alpha) - 1) + 1))
        models[n] = ShiftModel(n, gens)
    return models


def ex75_models(K: int = 2) -> dict:
    seq = ex75(K)
    return _sandwich_models(seq, seq.period_levels + 1, 0)


def ex76_models(N: int = 3) -> dict:
    seq = ex76(N)
    return _sandwich_models(seq, seq.period_levels + 1, 1)


@dataclass
class Fixture:
    name: str
    description: str
    morphism: Optional[Morphism] = None
    sequence: Optional[MorphismSequence] = None
    models: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    # level -> (max_len, pad) at which the shipped model passes validate_model
    model_checks: dict = field(default_factory=dict)

    def as_sequence(self) -> MorphismSequence:
        if self.sequence is not None:
            return self.sequence
        return constant_sequence(self.morphism)


FIXTURE_NAMES = ("fibonacci", "thue-morse", "ex3.4", "ex5.1", "ex7.5", "ex7.6")


def load_fixture(name: str, params: Optional[dict] = None) -> Fixture:
    params = dict(params or {})
    if name == "fibonacci":
        return Fixture(name, "Fibonacci morphism a -> ab, b -> a", morphism=fibonacci())
    if name == "thue-morse":
        return Fixture(name, "Thue-Morse morphism a -> ab, b -> ba", morphism=thue_morse())
    if name == "ex3.4":
        return Fixture(name, "a -> aa, b -> ab, c -> ba", morphism=ex34())
    if name == "ex5.1":
        return Fixture(name, "non-representable at level 0", sequence=ex51(),
                       models=ex51_models(),
                       model_checks={0: (4, 0), 1: (2, 0), 2: (3, 3)})
    if name == "ex7.5":
        K = int(params.get("K", 2))
        models = ex75_models(K)
        return Fixture(name, f"K={K} levels of non-recognizability", sequence=ex75(K),
                       models=models, params={"K": K},
                       model_checks={n: (4, 0) for n in models})
    if name == "ex7.6":
        N = int(params.get("N", 3))
        models = ex76_models(N)
        return Fixture(name, f"non-recognizable at every level, truncated at N={N}",
                       sequence=ex76(N), models=models, params={"N": N},
                       model_checks={n: (4, 0) for n in models})
    raise KeyError(f"unknown example {name!r}; known: {', '.join(FIXTURE_NAMES)}")


def word(alphabet: Alphabet, text: str) -> Word:
    return alphabet.word(text)
