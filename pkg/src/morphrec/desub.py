"""Desubstitution: local parses of finite windows, exact certificates on
eventually periodic points, and the lift of certificates through telescoping.

A *fragment* of a window ``y`` is a word ``z`` over the domain together with
an offset ``k`` such that ``sigma(z)[k : k + |y|] == y``, where ``z`` starts
with the letter whose image holds ``y[0]`` (so ``0 <= k < |sigma(z_0)|``) and
ends with the letter whose image holds ``y[-1]``.  Letters erased by
``sigma`` may occur between those, in runs of at most ``erased_bound``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .core import (EPP, Symbols, Word, epp_equal, epp_factors, epp_is_periodic,
                   epp_normalize, epp_shift)
from .languages import FactorSet, Membership, full_language_contains, member
from .morphisms import Morphism, MorphismSequence, apply_epp, telescope

DEFAULT_ERASED_BOUND = 8
FULL_SHIFT_WINDOW_LIMIT = 2_000_000


@dataclass(frozen=True)
class RepFragment:
    window: Symbols
    k: int
    span: tuple[int, int]

    def starts(self, sigma: Morphism) -> list[int]:
        """Position in the target word where each window letter's image begins."""
        pos, out = -self.k, []
        for s in self.window:
            out.append(pos)
            pos += len(sigma.images[s])
        return out

    def render(self, sigma: Morphism) -> str:
        return f"k={self.k} window={sigma.domain.render(self.window) or 'ε'} span={self.span[0]}:{self.span[1]}"


def enumerate_fragments(y, sigma: Morphism, oracle: Optional[FactorSet] = None,
                        erased_bound: int = DEFAULT_ERASED_BOUND) -> list[RepFragment]:
    """All fragments of ``y`` whose window is in ``oracle`` (None: full shift).

    Sorted by ``(k, window)``.
    """
    target = y.symbols if isinstance(y, Word) else tuple(y)
    if not target:
        raise ValueError("empty window")
    n = len(target)
    images = sigma.images
    productive = [a for a, im in enumerate(images) if im]
    erased = [a for a, im in enumerate(images) if not im]
    found: list[RepFragment] = []

    def ok(z: Symbols) -> bool:
        return oracle is None or full_language_contains(oracle, z)

    def extend(pos: int, z: Symbols, run: int, k: int) -> None:
        rest = n - pos
        for c in productive:
            im = images[c]
            if len(im) >= rest:
                if im[:rest] == target[pos:]:
                    w = z + (c,)
                    if ok(w):
                        found.append(RepFragment(w, k, (k, k + n)))
            elif im == target[pos:pos + len(im)]:
                w = z + (c,)
                if ok(w):
                    extend(pos + len(im), w, 0, k)
        if run < erased_bound:
            for e in erased:
                w = z + (e,)
                if ok(w):
                    extend(pos, w, run + 1, k)

    for c in productive:
        im = images[c]
        for k in range(len(im)):
            head = im[k:]
            if len(head) >= n:
                if head[:n] == target and ok((c,)):
                    found.append(RepFragment((c,), k, (k, k + n)))
            elif head == target[:len(head)] and ok((c,)):
                extend(len(head), (c,), 0, k)
    found.sort(key=lambda f: (f.k, f.window))
    return found


def central_projection(fragment: RepFragment, sigma: Morphism, center: int):
    """What a fragment says about the position ``center`` of its window: the
    covering letter, the offset inside its image, and the erased letters that
    follow it (None when the window ends first)."""
    starts = fragment.starts(sigma)
    z = fragment.window
    for j, (s, c) in enumerate(zip(starts, z)):
        size = len(sigma.images[c])
        if size and s <= center < s + size:
            tail = []
            for c2 in z[j + 1:]:
                if sigma.images[c2]:
                    return (c, center - s, tuple(tail))
                tail.append(c2)
            return (c, center - s, None)
    raise ValueError("center not covered by fragment")


# -- exact layer -----------------------------------------------------------

@dataclass(frozen=True)
class CenteredRepresentation:
    x: EPP
    k: int

    def is_centered(self, sigma: Morphism) -> bool:
        return 0 <= self.k < len(sigma.images[self.x.at(0)])

    def image(self, sigma: Morphism) -> Optional[EPP]:
        """``T^k(sigma(x))``, or None when undefined."""
        img = apply_epp(sigma, self.x)
        return None if img is None else epp_shift(img, self.k)

    def shifted(self, sigma: Morphism, j: int) -> "CenteredRepresentation":
        """The centered representation of ``T^j(y)`` obtained from this one."""
        if apply_epp(sigma, self.x) is None:
            raise ValueError("image undefined")
        x, k = self.x, self.k + j
        while True:
            size = len(sigma.images[x.at(0)])
            if k < 0:
                x = epp_shift(x, -1)
                k += len(sigma.images[x.at(0)])
            elif k >= size:
                k -= size
                x = epp_shift(x, 1)
            else:
                return CenteredRepresentation(epp_normalize(x), k)


@dataclass(frozen=True)
class NonRecognizabilityCertificate:
    sigma: Morphism
    r1: CenteredRepresentation
    r2: CenteredRepresentation
    y: EPP
    level: Optional[int] = None


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        return "ACCEPT" if self.accepted else f"REJECT({self.reason})"


ACCEPT = CheckResult(True)


def _reject(reason: str) -> CheckResult:
    return CheckResult(False, reason)


def _point_in(p: EPP, lang: Optional[FactorSet], radius: int) -> bool:
    if lang is None:
        return True
    ell = min(radius, lang.max_len)
    return all(member(lang, z) is Membership.IN for z in epp_factors(p, ell).words)


def verify_certificate(c: NonRecognizabilityCertificate, lang_x: Optional[FactorSet] = None,
                       lang_y: Optional[FactorSet] = None, radius: int = 8,
                       aperiodic_mode: bool = False) -> CheckResult:
    """Exact check that ``y`` has the two distinct centered representations.

    Membership of the points in the shifts is checked on factors up to
    ``min(radius, max_len)``; ``None`` languages stand for full shifts.
    """
    sigma = c.sigma
    for r in (c.r1, c.r2):
        if r.x.alphabet != sigma.domain:
            return _reject("representation not over the domain")
    if c.y.alphabet != sigma.codomain:
        return _reject("image not over the codomain")
    for name, r in (("r1", c.r1), ("r2", c.r2)):
        if not r.is_centered(sigma):
            return _reject(f"{name} not centered")
        img = r.image(sigma)
        if img is None:
            return _reject(f"{name} image undefined")
        if not epp_equal(img, c.y):
            return _reject(f"{name} does not represent y")
    if c.r1.k == c.r2.k and epp_equal(c.r1.x, c.r2.x):
        return _reject("representations coincide")
    for r in (c.r1, c.r2):
        if not _point_in(r.x, lang_x, radius):
            return _reject("unverified membership")
    if not _point_in(c.y, lang_y, radius):
        return _reject("unverified membership of y")
    if aperiodic_mode and epp_is_periodic(c.y):
        return _reject("image periodic")
    return ACCEPT


# -- building points from fragments ----------------------------------------

def _tail_units(z: Symbols, sigma: Morphism, from_left: bool) -> list[Symbols]:
    """Candidate periods for extending a window: its leading (or trailing)
    squares, then every single productive letter."""
    units: list[Symbols] = []
    n = len(z)
    for d in range(1, n // 2 + 1):
        if from_left:
            unit, nxt = z[:d], z[d:2 * d]
        else:
            unit, nxt = z[n - d:], z[n - 2 * d:n - d]
        if unit == nxt and any(sigma.images[s] for s in unit) and unit not in units:
            units.append(unit)
    for a, im in enumerate(sigma.images):
        if im and (a,) not in units:
            units.append((a,))
    return units


def fragment_points(fragment: RepFragment, sigma: Morphism, center: int,
                    lang_x: Optional[FactorSet] = None, radius: int = 8,
                    max_units: int = 6) -> Iterator[CenteredRepresentation]:
    """Eventually periodic extensions of a fragment, re-centered at ``center``."""
    z = fragment.window
    starts = fragment.starts(sigma)
    j = next(i for i, (s, c) in enumerate(zip(starts, z))
             if sigma.images[c] and s <= center < s + len(sigma.images[c]))
    k = center - starts[j]
    dom = sigma.domain
    lefts = _tail_units(z, sigma, True)[:max_units]
    rights = _tail_units(z, sigma, False)[:max_units]
    for u, v in itertools.product(lefts, rights):
        x = EPP(Word(dom, u), Word(dom, z), Word(dom, v), -j)
        if _point_in(x, lang_x, radius):
            yield CenteredRepresentation(x, k)


def lift_pair(f1: RepFragment, f2: RepFragment, sigma: Morphism, center: int,
              lang_x: Optional[FactorSet], lang_y: Optional[FactorSet], radius: int,
              aperiodic_mode: bool) -> Optional[NonRecognizabilityCertificate]:
    """Try to turn two window parses into an exact certificate."""
    reps2 = list(fragment_points(f2, sigma, center, lang_x, radius))
    images2 = [(r, r.image(sigma)) for r in reps2]
    images2 = [(r, img) for r, img in images2 if img is not None]
    for r1 in fragment_points(f1, sigma, center, lang_x, radius):
        y = r1.image(sigma)
        if y is None:
            continue
        if aperiodic_mode and epp_is_periodic(y):
            continue
        for r2, y2 in images2:
            if epp_equal(y, y2):
                cert = NonRecognizabilityCertificate(sigma, r1, r2, epp_normalize(y))
                if verify_certificate(cert, lang_x, lang_y, radius, aperiodic_mode):
                    return cert
    return None


# -- audit -------------------------------------------------------------------

class VerdictKind(enum.Enum):
    CERTIFIED = "CERTIFIED"
    EVIDENCE = "EVIDENCE"
    NO_VIOLATION = "NO_VIOLATION"


@dataclass
class Verdict:
    kind: VerdictKind
    radius: int
    certificate: Optional[NonRecognizabilityCertificate] = None
    evidence: list = field(default_factory=list)
    windows_scanned: int = 0
    candidates_rejected: list = field(default_factory=list)

    def line(self) -> str:
        return f"VERDICT: {self.kind.value} radius={self.radius}"


def has_small_period(w: Symbols) -> bool:
    """Whether ``w`` has a period ``p <= |w| / 2``."""
    n = len(w)
    return any(all(w[i] == w[i + p] for i in range(n - p)) for p in range(1, n // 2 + 1))


def _windows(sigma: Morphism, lang_y: Optional[FactorSet], length: int) -> Iterable[Symbols]:
    if lang_y is None:
        size = len(sigma.codomain) ** length
        if size > FULL_SHIFT_WINDOW_LIMIT:
            raise ValueError(f"{size} full-shift windows; pass a language for y")
        return itertools.product(range(len(sigma.codomain)), repeat=length)
    if lang_y.max_len < length:
        raise ValueError(f"language for y has max_len {lang_y.max_len} < {length}")
    return lang_y.words.of_length(length)


def audit_recognizability(sigma: Morphism, lang_x: Optional[FactorSet] = None,
                          lang_y: Optional[FactorSet] = None, radius: int = 4,
                          aperiodic_mode: bool = True,
                          erased_bound: int = DEFAULT_ERASED_BOUND,
                          max_lifts: int = 64, max_evidence: int = 10) -> Verdict:
    """Scan windows of length ``2 * radius`` for parses that disagree at the
    window center.

    In ``aperiodic_mode`` windows with a period at most half their length
    are skipped: their ambiguity is explained by a periodic point.  Ambiguous
    pairs are lifted to eventually periodic points; an exactly verified lift
    gives CERTIFIED, otherwise EVIDENCE.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    verdict = Verdict(VerdictKind.NO_VIOLATION, radius)
    lifts = 0
    for w in _windows(sigma, lang_y, 2 * radius):
        w = tuple(w)
        verdict.windows_scanned += 1
        if aperiodic_mode and has_small_period(w):
            continue
        frags = enumerate_fragments(w, sigma, lang_x, erased_bound)
        if len(frags) < 2:
            continue
        groups: dict = {}
        for f in frags:
            groups.setdefault(central_projection(f, sigma, radius), f)
        if len(groups) < 2:
            continue
        reps = list(groups.values())
        if len(verdict.evidence) < max_evidence:
            verdict.evidence.append((w, reps[0], reps[1]))
        verdict.kind = VerdictKind.EVIDENCE
        for f1, f2 in itertools.combinations(reps, 2):
            if lifts >= max_lifts:
                break
            lifts += 1
            cert = lift_pair(f1, f2, sigma, radius, lang_x, lang_y, radius, aperiodic_mode)
            if cert is not None:
                verdict.kind = VerdictKind.CERTIFIED
                verdict.certificate = cert
                return verdict
            # a full-shift lift that fails only on membership is recorded
            if lang_x is not None and len(verdict.candidates_rejected) < max_evidence:
                cand = lift_pair(f1, f2, sigma, radius, None, None, radius, aperiodic_mode)
                if cand is not None:
                    verdict.candidates_rejected.append(
                        (cand, verify_certificate(cand, lang_x, lang_y, radius, aperiodic_mode)))
    return verdict


# -- exact desubstitution of points ------------------------------------------

def desubstitute_point(sigma: Morphism, y: EPP, lang_x: Optional[FactorSet] = None,
                       radius: Optional[int] = None,
                       erased_bound: int = DEFAULT_ERASED_BOUND) -> list[CenteredRepresentation]:
    """Centered representations ``(x, k)`` of ``y`` with eventually periodic ``x``
    found by parsing a window around index 0."""
    y = epp_normalize(y)
    if radius is None:
        longest = max((len(im) for im in sigma.images), default=1)
        radius = (abs(y.origin) + len(y.center)
                  + 3 * (len(y.left) + len(y.right)) * max(longest, 1) + 4)
    w = y.window(-radius, radius)
    found: list[CenteredRepresentation] = []
    for f in enumerate_fragments(w, sigma, lang_x, erased_bound):
        for r in fragment_points(f, sigma, radius, lang_x, radius, max_units=10):
            img = r.image(sigma)
            if img is None or not epp_equal(img, y):
                continue
            if not any(r.k == q.k and epp_equal(r.x, q.x) for q in found):
                found.append(r)
    return found


def lift_certificate(seq: MorphismSequence, n: int, m: int,
                     c: NonRecognizabilityCertificate,
                     reps: Sequence[CenteredRepresentation],
                     lang_x: Optional[FactorSet] = None, radius: int = 8
                     ) -> NonRecognizabilityCertificate:
    """Two centered ``sigma_n``-representations ``(y, l), (y', l')`` of ``z`` and
    centered ``sigma_[n+1, m)``-representations ``(x, k), (x', k')`` of ``y, y'``
    give the centered ``sigma_[n, m)``-representations
    ``(x, |sigma_n(y[-k, 0))| + l)`` and ``(x', |sigma_n(y'[-k', 0))| + l')`` of ``z``.
    """
    if not n < m:
        raise ValueError("need n < m")
    sigma_n = seq[n]
    if c.sigma != sigma_n:
        raise ValueError("certificate is not for sigma_n")
    check = verify_certificate(c, None, None, radius, False)
    if not check:
        raise ValueError(f"certificate rejected: {check.reason}")
    tau = telescope(seq, n + 1, m)
    if len(reps) != 2:
        raise ValueError("need one representation for each point of the certificate")
    lifted = []
    for (y, ell), rep in zip(((c.r1.x, c.r1.k), (c.r2.x, c.r2.k)), reps):
        if not rep.is_centered(tau):
            raise ValueError("upper representation not centered")
        img = rep.image(tau)
        if img is None or not epp_equal(img, y):
            raise ValueError("upper representation does not represent its point")
        prefix = y.window(-rep.k, 0)
        lifted.append(CenteredRepresentation(rep.x, len(sigma_n.apply_symbols(prefix)) + ell))
    sigma = telescope(seq, n, m)
    out = NonRecognizabilityCertificate(sigma, lifted[0], lifted[1], c.y, level=n)
    check = verify_certificate(out, lang_x, None, radius, False)
    if not check:
        raise ValueError(f"lifted certificate rejected: {check.reason}")
    return out
