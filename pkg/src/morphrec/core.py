"""Alphabets, finite words and eventually periodic bi-infinite points.

Letters are arbitrary whitespace-free tokens, so ``a_0``, ``a_1`` work as
well as single characters.  Internally a word is a tuple of letter indices.

An :class:`EPP` denotes the point ``...uuu w vvv...`` where the center ``w``
starts at index ``origin``.  For a purely periodic point ``z^oo`` built with
:meth:`EPP.periodic`, the letter of index 0 is the first letter of ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

Symbols = tuple[int, ...]


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for a in letters:
            if not a or any(c.isspace() for c in a) or "," in a or "=" in a:
                raise ValueError(f"invalid letter token {a!r}")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in {letters}")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(letters)})

    @classmethod
    def of(cls, spec: Union[str, Iterable[str]]) -> "Alphabet":
        """``Alphabet.of("a b c")``, ``Alphabet.of("abc")`` or an iterable of tokens."""
        if isinstance(spec, str):
            tokens = spec.split() if any(c.isspace() for c in spec.strip()) else list(spec.strip())
            return cls(tuple(tokens))
        return cls(tuple(spec))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, letter: str) -> bool:
        return letter in self._index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} not in alphabet {self.letters}") from None

    @property
    def compact(self) -> bool:
        """True when every letter is a single character (words print unspaced)."""
        return all(len(a) == 1 for a in self.letters)

    def word(self, text: Union[str, Sequence[str]] = "") -> "Word":
        """Parse a word: tokens separated by whitespace or commas, or plain
        characters when the alphabet is compact."""
        if isinstance(text, str):
            text = text.strip()
            if text in ("", "ε", "eps"):
                tokens: Sequence[str] = []
            elif any(c.isspace() for c in text) or "," in text:
                tokens = [t for t in text.replace(",", " ").split()]
            elif self.compact or text in self._index:
                tokens = list(text) if self.compact else [text]
            else:
                raise ValueError(f"cannot split {text!r} into letters of {self.letters}")
        else:
            tokens = text
        return Word(self, tuple(self.index(t) for t in tokens))

    def render(self, symbols: Symbols, sep: str | None = None) -> str:
        if sep is None:
            sep = "" if self.compact else " "
        return sep.join(self.letters[s] for s in symbols)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    symbols: Symbols

    def __post_init__(self):
        n = len(self.alphabet)
        for s in self.symbols:
            if not 0 <= s < n:
                raise ValueError(f"letter index {s} out of range for {self.alphabet.letters}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return (self.alphabet.letters[s] for s in self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.symbols[item])
        return self.alphabet.letters[self.symbols[item]]

    def __add__(self, other: "Word") -> "Word":
        _same(self.alphabet, other.alphabet)
        return Word(self.alphabet, self.symbols + other.symbols)

    def __mul__(self, n: int) -> "Word":
        return Word(self.alphabet, self.symbols * n)

    def __str__(self) -> str:
        return self.alphabet.render(self.symbols) if self.symbols else "ε"

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self)


def _same(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch(f"alphabet mismatch: {a.letters} vs {b.letters}")


def primitive_root(symbols: Symbols) -> Symbols:
    """Shortest ``r`` with ``symbols == r^j``."""
    n = len(symbols)
    for d in range(1, n + 1):
        if n % d == 0 and symbols[:d] * (n // d) == symbols:
            return symbols[:d]
    return symbols


@dataclass(frozen=True)
class EPP:
    """Eventually periodic point ``...u u . w . v v...`` with ``w`` at ``origin``."""

    left: Word
    center: Word
    right: Word
    origin: int = 0

    def __post_init__(self):
        if not self.left.symbols or not self.right.symbols:
            raise ValueError("left and right periods must be non-empty")
        _same(self.left.alphabet, self.center.alphabet)
        _same(self.left.alphabet, self.right.alphabet)

    @classmethod
    def periodic(cls, period: Word, origin: int = 0) -> "EPP":
        empty = Word(period.alphabet, ())
        return cls(period, empty, period, origin)

    @property
    def alphabet(self) -> Alphabet:
        return self.left.alphabet

    def at(self, i: int) -> int:
        u, w, v, t = self.left.symbols, self.center.symbols, self.right.symbols, self.origin
        if i < t:
            return u[(i - t) % len(u)]
        if i < t + len(w):
            return w[i - t]
        return v[(i - t - len(w)) % len(v)]

    def letter(self, i: int) -> str:
        return self.alphabet.letters[self.at(i)]

    def window(self, i: int, j: int) -> Symbols:
        return tuple(self.at(k) for k in range(i, j))

    def slice(self, i: int, j: int) -> Word:
        """The factor ``p[i, j)``."""
        return Word(self.alphabet, self.window(i, j))

    def __str__(self) -> str:
        a = self.alphabet
        return (f"oo({a.render(self.left.symbols)}).[{self.origin}]"
                f"{a.render(self.center.symbols)}.({a.render(self.right.symbols)})oo")


def epp_normalize(p: EPP) -> EPP:
    """Primitive tails and a center with no letter absorbable into a tail."""
    u = list(primitive_root(p.left.symbols))
    v = list(primitive_root(p.right.symbols))
    w = list(p.center.symbols)
    t = p.origin
    start = 0
    # the letter right after the left tail continues it iff it equals u's next letter
    while start < len(w) and w[start] == u[0]:
        u = u[1:] + u[:1]
        start += 1
        t += 1
    end = len(w)
    while end > start and w[end - 1] == v[-1]:
        v = v[-1:] + v[:-1]
        end -= 1
    a = p.alphabet
    return EPP(Word(a, tuple(u)), Word(a, tuple(w[start:end])), Word(a, tuple(v)), t)


def equality_radius(p: EPP, q: EPP) -> int:
    return (len(p.center) + len(q.center) + abs(p.origin) + abs(q.origin)
            + 2 * lcm(len(p.left), len(q.left)) + 2 * lcm(len(p.right), len(q.right)))


def epp_equal(p: EPP, q: EPP) -> bool:
    """Equality as functions Z -> A, by comparison on ``[-N, N)``.

    Outside ``[-N, N)`` both points lie in their periodic tails, and one
    common period's worth of agreement inside the window propagates.
    """
    _same(p.alphabet, q.alphabet)
    n = equality_radius(p, q)
    return all(p.at(i) == q.at(i) for i in range(-n, n))


def epp_shift(p: EPP, k: int) -> EPP:
    """``T^k(p)``: the letter at index ``i`` becomes ``p[i + k]``."""
    return EPP(p.left, p.center, p.right, p.origin - k)


def epp_is_periodic(p: EPP) -> bool:
    p = epp_normalize(p)
    return epp_equal(epp_shift(p, len(p.left)), p)


@dataclass(frozen=True)
class FactorBag:
    """Factor-closed set of non-empty words of length at most ``max_len``.

    Words are stored as symbol tuples over ``alphabet``.
    """

    alphabet: Alphabet
    max_len: int
    words: frozenset = frozenset()

    def __contains__(self, z) -> bool:
        if isinstance(z, Word):
            z = z.symbols
        return tuple(z) in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Symbols]:
        a = self.alphabet
        return sorted(self.words, key=lambda z: a.render(z, " ") if not a.compact else a.render(z))

    def strings(self) -> list[str]:
        return sorted(self.alphabet.render(z) for z in self.words)

    def of_length(self, n: int) -> list[Symbols]:
        return sorted(z for z in self.words if len(z) == n)


def factors_of(symbols: Symbols, max_len: int) -> set[Symbols]:
    out = set()
    n = len(symbols)
    for i in range(n):
        for j in range(i + 1, min(n, i + max_len) + 1):
            out.add(symbols[i:j])
    return out


def word_factors(z: Word, max_len: int) -> FactorBag:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return FactorBag(z.alphabet, max_len, frozenset(factors_of(z.symbols, max_len)))


def epp_factors(p: EPP, max_len: int) -> FactorBag:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    lo = p.origin - max_len - len(p.left)
    hi = p.origin + len(p.center) + max_len + len(p.right)
    return FactorBag(p.alphabet, max_len, frozenset(factors_of(p.window(lo, hi), max_len)))
