"""Length-bounded languages of morphisms and of levels of a sequence.

Telescoped images grow exponentially, so words are never expanded.  Each
image ``sigma_[n, m)(a)`` is summarised by its ``max_len - 1`` letter prefix
and suffix (or the whole word when it is that short).  Summaries of level
``m + 1`` are concatenations of level ``m`` summaries, and every factor of
length ``<= max_len`` straddles at most one junction, so the union of the
junction factors is exactly the bounded language.

Saturation is exact: the junction factors produced at step ``m`` depend only
on the boundary summaries and the cycle phase, so once that state repeats the
union can no longer grow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import FactorBag, Symbols, Word, factors_of
from .morphisms import Morphism, MorphismSequence, constant_sequence

DEFAULT_HORIZON = 64
SATURATION_HORIZON = 10_000


class Membership(enum.Enum):
    IN = "IN"
    NOT_SEEN = "NOT_SEEN"


@dataclass(frozen=True)
class FactorSet:
    """Sound under-approximation of a language, restricted to ``max_len``.

    ``saturated`` means it is exactly the language's words of length
    ``<= max_len``.  ``truncated`` records that a computation gave up at its
    horizon cap before saturating.
    """

    level: Optional[int]
    max_len: int
    horizon: int
    words: FactorBag
    saturated: bool = False
    truncated: bool = False

    @property
    def alphabet(self):
        return self.words.alphabet

    def __contains__(self, z) -> bool:
        return z in self.words

    def __len__(self) -> int:
        return len(self.words)

    @property
    def certified_complete(self) -> bool:
        return self.saturated and not self.truncated

    def strings(self) -> list[str]:
        return self.words.strings()


# A boundary summary: (prefix, suffix, is_short).  When is_short the word has
# length < max_len and prefix == suffix == the word itself.
_Summary = tuple[Symbols, Symbols, bool]


def _letter_summary(s: int, keep: int) -> _Summary:
    if keep == 0:
        return ((), (), False)
    return ((s,), (s,), True)


def _concat(x: _Summary, y: _Summary, keep: int, out: set, max_len: int) -> _Summary:
    xp, xs, xshort = x
    yp, ys, yshort = y
    if keep == 0:
        return ((), (), False)
    out.update(factors_of(xs + yp, max_len))
    if xshort and yshort and len(xp) + len(yp) <= keep:
        w = xp + yp
        return (w, w, True)
    pre = (xp + yp)[:keep] if xshort else xp
    suf = (xs + ys)[-keep:] if yshort else ys
    return (pre, suf, False)


_EMPTY: _Summary = ((), (), True)


def _push(states: tuple[_Summary, ...], sigma: Morphism, keep: int, out: set,
          max_len: int) -> tuple[_Summary, ...]:
    result = []
    for im in sigma.images:
        acc = _EMPTY
        for s in im:
            acc = _concat(acc, states[s], keep, out, max_len)
        result.append(acc)
    return tuple(result)


def _level_run(seq: MorphismSequence, n: int, max_len: int, horizon: int):
    """Union of bounded factors of ``sigma_[n, m)(a)`` for ``n <= m <= horizon``.

    Returns ``(words, saturated, last_m)``; stops early once saturated.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    keep = max_len - 1
    alphabet = seq.alphabet(n)
    words: set = {(s,) for s in range(len(alphabet))}
    states = tuple(_letter_summary(s, keep) if keep else ((), (), False)
                   for s in range(len(alphabet)))
    if keep == 0:
        # single letters: images of deeper letters only contain letters of A_n
        return words, True, n
    seen = set()
    m = n
    while True:
        phase = seq.phase(m)
        if phase is not None:
            key = (phase, states)
            if key in seen:
                return words, True, m
            seen.add(key)
        if m >= horizon:
            return words, False, m
        states = _push(states, seq[m], keep, words, max_len)
        m += 1


def level_language(seq: MorphismSequence, n: int, max_len: int,
                   horizon: int = DEFAULT_HORIZON) -> FactorSet:
    """Factors of length ``<= max_len`` of ``sigma_[n, m)(a)``, ``m <= horizon``."""
    if horizon < n:
        raise ValueError("horizon must be >= n")
    words, saturated, _ = _level_run(seq, n, max_len, horizon)
    bag = FactorBag(seq.alphabet(n), max_len, frozenset(words))
    return FactorSet(n, max_len, horizon, bag, saturated=saturated)


def language_of_morphism(sigma: Morphism, max_len: int,
                         horizon: int = DEFAULT_HORIZON) -> FactorSet:
    """Factors of length ``<= max_len`` of ``sigma^k(a)``, ``0 <= k <= horizon``."""
    if not sigma.is_endomorphism:
        raise ValueError("the language of a morphism needs an endomorphism")
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    fs = level_language(constant_sequence(sigma), 0, max_len, horizon)
    return FactorSet(None, fs.max_len, fs.horizon, fs.words, fs.saturated)


def saturate_levels(seq: MorphismSequence, max_len: int,
                    cap: int = SATURATION_HORIZON) -> list[FactorSet]:
    """Exact bounded languages of the levels in the preperiod and one cycle.

    A level that does not saturate within ``cap`` steps is returned with
    ``truncated=True``.
    """
    out = []
    for n in range(seq.period_levels):
        words, saturated, m = _level_run(seq, n, max_len, n + cap)
        bag = FactorBag(seq.alphabet(n), max_len, frozenset(words))
        out.append(FactorSet(n, max_len, m, bag, saturated=saturated,
                             truncated=not saturated))
    return out


def member(fs: FactorSet, z) -> Membership:
    symbols = z.symbols if isinstance(z, Word) else tuple(z)
    if len(symbols) > fs.max_len:
        raise ValueError(f"query of length {len(symbols)} exceeds max_len {fs.max_len}")
    return Membership.IN if symbols in fs.words else Membership.NOT_SEEN


def full_language_contains(fs: Optional[FactorSet], z: Symbols) -> bool:
    """Membership for oracles: None is the full shift; words longer than
    ``max_len`` need every ``max_len``-factor to be IN."""
    if fs is None:
        return True
    if len(z) <= fs.max_len:
        return z in fs.words
    k = fs.max_len
    return all(z[i:i + k] in fs.words for i in range(len(z) - k + 1))
