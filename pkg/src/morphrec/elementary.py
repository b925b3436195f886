"""Elementary morphisms: decompositions through smaller alphabets and the
alphabet-descent chain for sequences.

``sigma: A* -> C*`` is decomposable iff there is a set ``S`` of at most
``Card(A) - 1`` non-empty words with every image in ``S*``; ``S`` becomes the
image set of ``alpha`` and ``beta`` records the factorizations.  A
decomposition through a smaller alphabet pads up to ``Card(A) - 1`` letters
with letters ``alpha`` erases, so searching that one size suffices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Alphabet, Symbols
from .morphisms import (Morphism, MorphismSequence, compose, incidence_matrix,
                        rational_rank, telescope)

DEFAULT_NODE_LIMIT = 10_000_000


class ResourceExhausted(RuntimeError):
    pass


class DecompositionNotFound(RuntimeError):
    def __init__(self, step: int, message: str = ""):
        super().__init__(message or f"no decomposition at chain step {step}")
        self.step = step


@dataclass(frozen=True)
class Decomposition:
    B: Alphabet
    alpha: Morphism
    beta: Morphism

    def replays(self, sigma: Morphism) -> bool:
        return compose(self.alpha, self.beta).images == sigma.images


def _fresh_names(n: int, taken: Sequence[str] = ()) -> tuple[str, ...]:
    out: list[str] = []
    candidates = list("xyzuvw") + [f"x{i}" for i in range(n + len(taken))]
    for c in candidates:
        if len(out) == n:
            break
        if c not in taken:
            out.append(c)
    return tuple(out)


def _search(images: Sequence[Symbols], order: Sequence[int], limit: int,
            node_limit: int) -> Optional[tuple[list[Symbols], dict]]:
    """DFS for a piece set of size <= limit; returns (pieces, factorizations)."""
    pieces: list[Symbols] = []
    index: dict[Symbols, int] = {}
    facts: dict[int, list[int]] = {}
    nodes = 0

    def letter(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        facts[a] = []
        if factor(a, images[a], 0, i):
            return True
        del facts[a]
        return False

    def factor(a: int, im: Symbols, pos: int, i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise ResourceExhausted(f"decomposition search exceeded {node_limit} nodes")
        if pos == len(im):
            return letter(i + 1)
        for end in range(pos + 1, len(im) + 1):
            piece = im[pos:end]
            new = piece not in index
            if new:
                if len(pieces) >= limit:
                    continue
                index[piece] = len(pieces)
                pieces.append(piece)
            facts[a].append(index[piece])
            if factor(a, im, end, i):
                return True
            facts[a].pop()
            if new:
                pieces.pop()
                del index[piece]
        return False

    if letter(0):
        return list(pieces), {a: list(f) for a, f in facts.items()}
    return None


def find_decomposition(sigma: Morphism,
                       node_limit: int = DEFAULT_NODE_LIMIT) -> Optional[Decomposition]:
    """A verified ``sigma = alpha o beta`` through ``Card(A) - 1`` letters, or None."""
    d = len(sigma.domain)
    target = d - 1
    if target < 0:
        return None
    erased = [a for a, im in enumerate(sigma.images) if not im]
    if erased:
        kept = [a for a, im in enumerate(sigma.images) if im]
        names = [sigma.domain.letters[a] for a in kept]
        names += _fresh_names(target - len(kept), names)
        B = Alphabet(tuple(names))
        alpha = Morphism(B, sigma.codomain,
                         tuple(sigma.images[a] for a in kept)
                         + tuple(() for _ in range(target - len(kept))), "α")
        beta_images = []
        for a in range(d):
            beta_images.append((kept.index(a),) if a in kept else ())
        beta = Morphism(sigma.domain, B, tuple(beta_images), "β")
        dec = Decomposition(B, alpha, beta)
        assert dec.replays(sigma)
        return dec
    order = sorted(range(d), key=lambda a: (-len(sigma.images[a]), a))
    res = _search(sigma.images, order, target, node_limit)
    if res is None:
        return None
    pieces, facts = res
    B = Alphabet(_fresh_names(target))
    alpha = Morphism(B, sigma.codomain,
                     tuple(pieces) + tuple(() for _ in range(target - len(pieces))), "α")
    beta = Morphism(sigma.domain, B, tuple(tuple(facts[a]) for a in range(d)), "β")
    dec = Decomposition(B, alpha, beta)
    assert dec.replays(sigma)
    return dec


def is_elementary(sigma: Morphism, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    return find_decomposition(sigma, node_limit) is None


class RankVerdict(enum.Enum):
    ELEMENTARY = "ELEMENTARY"
    INCONCLUSIVE = "INCONCLUSIVE"


def rank_shortcut(sigma: Morphism) -> RankVerdict:
    """Full column rank of the incidence matrix forces elementarity: a
    factorization through B would factor the matrix through Card(B) columns."""
    if rational_rank(incidence_matrix(sigma)) == len(sigma.domain):
        return RankVerdict.ELEMENTARY
    return RankVerdict.INCONCLUSIVE


@dataclass(frozen=True)
class ChainStep:
    level: int
    composed: Morphism
    decomposition: Decomposition


@dataclass(frozen=True)
class DescentChain:
    m: int
    top: Alphabet
    steps: tuple[ChainStep, ...]

    @property
    def sizes(self) -> list[int]:
        return [len(self.top)] + [len(s.decomposition.B) for s in self.steps]

    @property
    def levels(self) -> list[int]:
        return [s.level for s in self.steps]


def build_descent_chain(seq: MorphismSequence, flagged: Sequence[int], m: int,
                        node_limit: int = DEFAULT_NODE_LIMIT) -> DescentChain:
    """For flagged levels ``n_1 > ... > n_K`` below ``m``, decompose
    ``sigma_[n_k, n_{k-1}) o alpha_{k-1} = alpha_k o beta_k`` step by step,
    starting from ``alpha_0 = id`` on ``A_m`` and ``n_0 = m``.

    The flags are taken as given; a missing decomposition raises
    :class:`DecompositionNotFound`.
    """
    levels = sorted(set(flagged), reverse=True)
    if levels and levels[0] >= m:
        raise ValueError("every flagged level must be below m")
    if levels and levels[-1] < 0:
        raise ValueError("levels must be non-negative")
    top = seq.alphabet(m)
    alpha = Morphism.identity(top)
    prev = m
    steps = []
    for k, n_k in enumerate(levels, start=1):
        composed = compose(telescope(seq, n_k, prev), alpha)
        dec = find_decomposition(composed, node_limit)
        if dec is None:
            raise DecompositionNotFound(k, f"σ[{n_k},{prev})∘α{k - 1} is elementary")
        steps.append(ChainStep(n_k, composed, dec))
        alpha = dec.alpha
        prev = n_k
    return DescentChain(m, top, tuple(steps))
