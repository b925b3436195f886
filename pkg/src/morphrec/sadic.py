"""Shift models, representability, and per-level audits of morphism sequences.

A :class:`ShiftModel` stands for a finite union of orbit closures of
eventually periodic points: all shifts of each generator plus the two
periodic points its tails converge to.  Representability is decided exactly
inside such models; the answer is only as good as the model, which
:func:`validate_model` cross-checks against the bounded level language.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .core import EPP, epp_equal, epp_factors, epp_is_periodic, epp_normalize, epp_shift
from .desub import (DEFAULT_ERASED_BOUND, NonRecognizabilityCertificate, Verdict,
                    VerdictKind, audit_recognizability)
from .languages import DEFAULT_HORIZON, FactorSet, level_language
from .morphisms import MorphismSequence, alphabet_rank, apply_epp


@dataclass(frozen=True)
class ShiftModel:
    level: int
    generators: tuple[EPP, ...]

    def points(self) -> list[EPP]:
        """Generators followed by the tail-limit periodic points."""
        out = [epp_normalize(g) for g in self.generators]
        for g in list(out):
            for unit in (g.left, g.right):
                lim = EPP.periodic(unit)
                if not any(shift_offset(q, lim) is not None for q in out):
                    out.append(lim)
        return out


def _break_index(p: EPP) -> Optional[int]:
    """First ``j`` with ``p[j] != p[j + |u|]``; None when ``p`` is periodic."""
    u = len(p.left)
    hi = p.origin + len(p.center) + 2 * math.lcm(u, len(p.right)) + 2 * u
    for j in range(p.origin - u, hi):
        if p.at(j) != p.at(j + u):
            return j
    return None


def shift_offset(g: EPP, p: EPP) -> Optional[int]:
    """Some ``k`` with ``T^k(g) == p``, or None."""
    if g.alphabet != p.alphabet:
        return None
    g, p = epp_normalize(g), epp_normalize(p)
    if len(g.left) != len(p.left) or len(g.right) != len(p.right):
        return None
    bg, bp = _break_index(g), _break_index(p)
    if (bg is None) != (bp is None):
        return None
    if bg is None:
        for k in range(len(g.left)):
            if epp_equal(epp_shift(g, k), p):
                return k
        return None
    k = bg - bp
    return k if epp_equal(epp_shift(g, k), p) else None


def model_membership(model: ShiftModel, p: EPP) -> bool:
    return any(shift_offset(q, p) is not None for q in model.points())


@dataclass
class ModelCheck:
    ok: bool
    max_len: int
    horizon: int
    not_in_language: list = field(default_factory=list)
    not_in_model: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _extendable(seq: MorphismSequence, n: int, max_len: int, pad: int,
                horizon: int) -> set:
    """Words of length <= max_len that sit in the middle of some language
    word with ``pad`` extra letters on each side."""
    big = level_language(seq, n, max_len + 2 * pad, horizon)
    out = set()
    for w in big.words.of_length(max_len + 2 * pad):
        mid = w[pad:len(w) - pad]
        for i in range(len(mid)):
            for j in range(i + 1, len(mid) + 1):
                out.add(mid[i:j])
    return out


def validate_model(seq: MorphismSequence, model: ShiftModel, max_len: int,
                   horizon: int = DEFAULT_HORIZON, pad: int = 0) -> ModelCheck:
    """Bounded two-sided comparison of model factors and the level language.

    With ``pad > 0`` the language side keeps only words extendable by ``pad``
    letters both ways, which drops factors that occur only at the edge of
    every image and so belong to no point of the shift.
    """
    horizon = max(horizon, model.level)
    lang = level_language(seq, model.level, max_len, horizon)
    words = set(lang.words.words)
    if pad > 0:
        words &= _extendable(seq, model.level, max_len, pad, horizon)
    model_words: set = set()
    for p in model.points():
        model_words |= epp_factors(p, max_len).words
    bad_lang = sorted(w for w in model_words if w not in lang.words)
    bad_model = sorted(w for w in words if w not in model_words)
    return ModelCheck(not bad_lang and not bad_model, max_len, lang.horizon,
                      bad_lang, bad_model)


class RepKind(enum.Enum):
    REPRESENTABLE = "REPRESENTABLE"
    NOT_REPRESENTABLE = "NOT_REPRESENTABLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class RepresentabilityVerdict:
    kind: RepKind
    by: str = ""
    witness: Optional[EPP] = None
    horizon: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is RepKind.REPRESENTABLE:
            return f"REPRESENTABLE(by={self.by})"
        if self.kind is RepKind.NOT_REPRESENTABLE:
            return f"NOT_REPRESENTABLE(witness={self.witness})"
        return f"UNKNOWN(horizon={self.horizon})"


def decide_representability(seq: MorphismSequence, n: int, model_n: ShiftModel,
                            model_next: ShiftModel) -> RepresentabilityVerdict:
    """Exact within the models: is every point of ``model_n`` a shift of
    ``sigma_n(x)`` for some ``x`` in ``model_next``?"""
    sigma = seq[n]
    images = []
    for x in model_next.points():
        img = apply_epp(sigma, x)
        if img is not None:
            images.append(img)
    for p in model_n.points():
        if not any(shift_offset(img, p) is not None for img in images):
            return RepresentabilityVerdict(RepKind.NOT_REPRESENTABLE, witness=p)
    return RepresentabilityVerdict(RepKind.REPRESENTABLE, by="model")


def check_representable_via_nonerasing(seq: MorphismSequence, n: int,
                                       horizon: int) -> RepresentabilityVerdict:
    """REPRESENTABLE when some ``sigma_[n, m)``, ``n < m <= horizon``, is
    non-erasing; UNKNOWN otherwise.

    Only the set of letters erased by ``sigma_[n, m)`` is tracked.
    """
    if horizon <= n:
        raise ValueError("horizon must exceed n")
    erased: frozenset = frozenset()
    for m in range(n + 1, horizon + 1):
        sigma = seq[m - 1]
        erased = frozenset(a for a, im in enumerate(sigma.images)
                           if all(s in erased for s in im))
        if not erased:
            return RepresentabilityVerdict(RepKind.REPRESENTABLE, by=f"lemma m={m}")
    return RepresentabilityVerdict(RepKind.UNKNOWN, horizon=horizon)


@dataclass
class LevelAudit:
    level: int
    recognizability: Verdict
    representability: RepresentabilityVerdict

    @property
    def nonrec_certified(self) -> bool:
        return self.recognizability.kind is VerdictKind.CERTIFIED

    @property
    def nonrep_certified(self) -> bool:
        return self.representability.kind is RepKind.NOT_REPRESENTABLE


@dataclass
class AuditReport:
    name: str
    rank: Union[int, float]
    levels: list[LevelAudit]
    radius: int
    max_len: int
    horizon: int

    @property
    def nonrec_certified(self) -> int:
        return sum(lv.nonrec_certified for lv in self.levels)

    @property
    def nonrep_certified(self) -> int:
        return sum(lv.nonrep_certified for lv in self.levels)

    @property
    def bound_nonrec_ok(self) -> bool:
        return self.nonrec_certified <= self.rank - 2

    @property
    def bound_nonrep_ok(self) -> bool:
        return self.nonrep_certified <= self.rank - 1

    @property
    def consistent(self) -> bool:
        return self.bound_nonrec_ok and self.bound_nonrep_ok

    def key_values(self) -> list[tuple[str, str]]:
        rank = "inf" if math.isinf(self.rank) else str(self.rank)
        return [
            ("name", self.name),
            ("levels", str(len(self.levels))),
            ("rank", rank),
            ("nonrec_certified", str(self.nonrec_certified)),
            ("nonrep_certified", str(self.nonrep_certified)),
            ("bound_nonrec_ok", str(self.bound_nonrec_ok).lower()),
            ("bound_nonrep_ok", str(self.bound_nonrep_ok).lower()),
            ("status", "OK" if self.consistent else "INTERNAL_INCONSISTENCY"),
        ]


def audit_sequence(seq: MorphismSequence, models: Optional[Mapping[int, ShiftModel]] = None,
                   radius: int = 4, max_len: Optional[int] = None,
                   horizon: int = DEFAULT_HORIZON,
                   erased_bound: int = DEFAULT_ERASED_BOUND) -> AuditReport:
    """Recognizability (for aperiodic points) and representability at each
    level of the preperiod and one cycle, with the alphabet-rank bound checks.
    """
    models = dict(models or {})
    ell = max(max_len or 0, 2 * radius + 2)
    langs: dict[int, FactorSet] = {}

    def lang(n: int) -> FactorSet:
        if n not in langs:
            langs[n] = level_language(seq, n, ell, max(horizon, n + horizon))
        return langs[n]

    levels = []
    for n in range(seq.period_levels):
        verdict = audit_recognizability(seq[n], lang(n + 1), lang(n), radius,
                                        aperiodic_mode=True, erased_bound=erased_bound)
        if verdict.certificate is not None:
            c = verdict.certificate
            verdict.certificate = NonRecognizabilityCertificate(c.sigma, c.r1, c.r2, c.y, n)
        rep = check_representable_via_nonerasing(seq, n, n + horizon)
        if rep.kind is RepKind.UNKNOWN and n in models and n + 1 in models:
            rep = decide_representability(seq, n, models[n], models[n + 1])
        levels.append(LevelAudit(n, verdict, rep))
    return AuditReport(seq.name, alphabet_rank(seq), levels, radius, ell, horizon)


def all_points_periodic(model: ShiftModel) -> bool:
    return all(epp_is_periodic(p) for p in model.points())
