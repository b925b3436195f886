"""Morphisms of free monoids and eventually periodic sequences of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .core import EPP, Alphabet, AlphabetMismatch, Symbols, Word, epp_normalize


@dataclass(frozen=True)
class Morphism:
    """``sigma: domain* -> codomain*`` given by one image per domain letter."""

    domain: Alphabet
    codomain: Alphabet
    images: tuple[Symbols, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        images = tuple(tuple(im) for im in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.domain):
            raise ValueError("need exactly one image per domain letter")
        n = len(self.codomain)
        for im in images:
            if any(not 0 <= s < n for s in im):
                raise ValueError("image letter outside codomain")

    @classmethod
    def from_dict(cls, rules: Mapping[str, Union[str, Sequence[str]]],
                  codomain: Optional[Union[Alphabet, str, Sequence[str]]] = None,
                  domain: Optional[Union[Alphabet, str, Sequence[str]]] = None,
                  name: str = "") -> "Morphism":
        """``Morphism.from_dict({"a": "ab", "b": "a"})``.

        Without an explicit codomain the morphism is an endomorphism of its
        domain (letters in images that are not in the domain are appended).
        """
        dom = domain if isinstance(domain, Alphabet) else (
            Alphabet.of(domain) if domain is not None else Alphabet(tuple(rules)))
        if codomain is None:
            letters = list(dom.letters)
            for a in dom:
                for t in _tokens(rules[a], dom.compact):
                    if t not in letters:
                        letters.append(t)
            cod = Alphabet(tuple(letters))
        else:
            cod = codomain if isinstance(codomain, Alphabet) else Alphabet.of(codomain)
        images = tuple(cod.word(rules[a]).symbols for a in dom)
        return cls(dom, cod, images, name)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Morphism":
        return cls(alphabet, alphabet, tuple((i,) for i in range(len(alphabet))), "id")

    def image(self, letter: str) -> Word:
        return Word(self.codomain, self.images[self.domain.index(letter)])

    def apply_symbols(self, z: Symbols) -> Symbols:
        out: list[int] = []
        for s in z:
            out.extend(self.images[s])
        return tuple(out)

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def rules(self) -> list[tuple[str, str]]:
        return [(a, self.codomain.render(im)) for a, im in zip(self.domain, self.images)]

    def __str__(self) -> str:
        body = ", ".join(f"{a} -> {w or 'ε'}" for a, w in self.rules())
        return f"{self.name or 'σ'}: {body}"


def _tokens(text, compact: bool) -> list[str]:
    if not isinstance(text, str):
        return list(text)
    text = text.strip()
    if text in ("", "ε", "eps"):
        return []
    if any(c.isspace() for c in text) or "," in text:
        return text.replace(",", " ").split()
    return list(text) if compact else [text]


def apply(sigma: Morphism, z: Word) -> Word:
    if z.alphabet != sigma.domain:
        raise AlphabetMismatch("word is not over the domain of the morphism")
    return Word(sigma.codomain, sigma.apply_symbols(z.symbols))


def compose(sigma: Morphism, tau: Morphism) -> Morphism:
    """``sigma o tau`` (apply ``tau`` first)."""
    if sigma.domain != tau.codomain:
        raise AlphabetMismatch("compose: domain of sigma must equal codomain of tau")
    images = tuple(sigma.apply_symbols(im) for im in tau.images)
    name = f"{sigma.name}∘{tau.name}" if sigma.name and tau.name else ""
    return Morphism(tau.domain, sigma.codomain, images, name)


def is_erasing(sigma: Morphism) -> bool:
    return any(not im for im in sigma.images)


def productive_letters(sigma: Morphism) -> frozenset[str]:
    return frozenset(a for a, im in zip(sigma.domain, sigma.images) if im)


@dataclass(frozen=True)
class MorphismSequence:
    """``(sigma_n: A_{n+1}* -> A_n*)_{n >= 0}`` as ``preperiod + cycle^oo``.

    ``truncated`` marks a finite cut of a family whose alphabets grow without
    bound; its alphabet rank is reported as infinite.
    """

    preperiod: tuple[Morphism, ...]
    cycle: tuple[Morphism, ...]
    name: str = ""
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be non-empty")
        flat = self.preperiod + self.cycle + self.cycle[:1]
        for n in range(len(flat) - 1):
            if flat[n].domain != flat[n + 1].codomain:
                raise AlphabetMismatch(
                    f"domain of sigma_{n} must equal codomain of sigma_{n + 1}")

    def __getitem__(self, n: int) -> Morphism:
        if n < 0:
            raise IndexError(n)
        p = len(self.preperiod)
        if n < p:
            return self.preperiod[n]
        return self.cycle[(n - p) % len(self.cycle)]

    def alphabet(self, n: int) -> Alphabet:
        """``A_n`` (the codomain of ``sigma_n``)."""
        return self[n].codomain

    def phase(self, n: int) -> Optional[int]:
        """Position of ``sigma_n`` in the cycle, or None inside the preperiod."""
        p = len(self.preperiod)
        return None if n < p else (n - p) % len(self.cycle)

    @property
    def period_levels(self) -> int:
        """Number of levels covering the preperiod plus one cycle."""
        return len(self.preperiod) + len(self.cycle)


def telescope(seq: MorphismSequence, n: int, m: int) -> Morphism:
    """``sigma_[n, m) = sigma_n o ... o sigma_{m-1}``; identity on ``A_n`` when n == m."""
    if not 0 <= n <= m:
        raise ValueError("need 0 <= n <= m")
    result = Morphism.identity(seq.alphabet(n))
    for k in range(n, m):
        result = compose(result, seq[k])
    return Morphism(result.domain, result.codomain, result.images, f"σ[{n},{m})")


def constant_sequence(sigma: Morphism) -> MorphismSequence:
    if not sigma.is_endomorphism:
        raise ValueError("constant_sequence needs an endomorphism")
    return MorphismSequence((), (sigma,), name=sigma.name)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Rows indexed by codomain letters, columns by domain letters."""

    rows: Alphabet
    cols: Alphabet
    entries: tuple[tuple[int, ...], ...]

    def __matmul__(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        if self.cols != other.rows:
            raise AlphabetMismatch("incidence product shape mismatch")
        n = len(self.cols)
        entries = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(n))
                  for j in range(len(other.cols)))
            for i in range(len(self.rows)))
        return IncidenceMatrix(self.rows, other.cols, entries)

    def column_sums(self) -> list[int]:
        return [sum(row[j] for row in self.entries) for j in range(len(self.cols))]


def incidence_matrix(sigma: Morphism) -> IncidenceMatrix:
    rows = [[0] * len(sigma.domain) for _ in sigma.codomain]
    for j, im in enumerate(sigma.images):
        for s in im:
            rows[s][j] += 1
    return IncidenceMatrix(sigma.codomain, sigma.domain, tuple(tuple(r) for r in rows))


def rational_rank(m: IncidenceMatrix) -> int:
    if not m.entries or not m.entries[0]:
        return 0
    from sympy import Matrix
    return Matrix(m.entries).rank()


def _bool_product(a: tuple[frozenset, ...], sigma: Morphism) -> tuple[frozenset, ...]:
    """Letters of ``tau o sigma(b)`` from the letter sets ``a`` of ``tau``."""
    return tuple(frozenset().union(*(a[s] for s in im)) for im in sigma.images)


def is_primitive_morphism(sigma: Morphism, horizon: int) -> Optional[bool]:
    """True/False, or None when undecided within ``horizon`` powers.

    False is returned when some letter's reachable set closes without
    covering the alphabet, or when ``horizon`` passes Wielandt's bound
    ``(d-1)^2 + 1`` without a positive power.
    """
    if not sigma.is_endomorphism:
        raise ValueError("primitivity is defined for endomorphisms")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    d = len(sigma.domain)
    everything = frozenset(range(d))
    succ = [frozenset(im) for im in sigma.images]
    for a in range(d):
        seen, frontier = set(), set(succ[a])
        while frontier:
            b = frontier.pop()
            if b not in seen:
                seen.add(b)
                frontier |= succ[b] - seen
        if seen != everything:
            return False
    letters = tuple(succ)
    for n in range(1, horizon + 1):
        if all(s == everything for s in letters):
            return True
        if n >= (d - 1) ** 2 + 1:
            return False
        letters = _bool_product(letters, sigma)
    return None


def is_primitive_sequence(seq: MorphismSequence, n: int, horizon: int) -> Optional[bool]:
    """Whether some ``sigma_[n, m)``, ``n < m <= horizon``, has every ``A_n``
    letter in every image.

    False is exact: the letter-set pattern of ``sigma_[n, m)`` is a function
    of (pattern, cycle phase), so a repeat without success means never.
    """
    if horizon < n + 1:
        raise ValueError("horizon must be >= n + 1")
    everything = frozenset(range(len(seq.alphabet(n))))
    letters = tuple(frozenset([i]) for i in range(len(seq.alphabet(n))))
    seen = set()
    for m in range(n + 1, horizon + 1):
        letters = _bool_product(letters, seq[m - 1])
        if all(s == everything for s in letters):
            return True
        phase = seq.phase(m)
        if phase is not None:
            state = (phase, letters)
            if state in seen:
                return False
            seen.add(state)
    return None


def apply_epp(sigma: Morphism, p: EPP) -> Optional[EPP]:
    """``sigma(p)`` aligned so that ``sigma(p_0)`` starts at index 0.

    Returns None when a tail is entirely erased (the image is undefined).
    """
    if p.alphabet != sigma.domain:
        raise AlphabetMismatch("point is not over the domain of the morphism")
    u = sigma.apply_symbols(p.left.symbols)
    v = sigma.apply_symbols(p.right.symbols)
    if not u or not v:
        return None
    w = sigma.apply_symbols(p.center.symbols)
    t = p.origin
    if t >= 0:
        origin = sum(len(sigma.images[p.at(i)]) for i in range(t))
    else:
        origin = -sum(len(sigma.images[p.at(i)]) for i in range(t, 0))
    c = sigma.codomain
    return epp_normalize(EPP(Word(c, u), Word(c, w), Word(c, v), origin))


def alphabet_rank(seq: MorphismSequence) -> Union[int, float]:
    """``liminf Card(A_n)``; ``math.inf`` for truncated growing families."""
    if seq.truncated:
        return float("inf")
    return min(len(m.codomain) for m in seq.cycle)
