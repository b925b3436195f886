"""Line-oriented text formats for morphisms, sequences, points, certificates
and shift models.

Blank lines and lines starting with ``#`` are ignored.  Words are written as
space-separated tokens in morphism rules and comma-separated tokens inside
``key=value`` point fields; an empty value is the empty word.

Morphism::

    name: thue-morse
    alphabet: a b
    codomain: a b
    a -> a b
    b -> b a

Sequence (morphism blocks end with ``end``; ``morphism: NAME @ path`` reads a
morphism file instead)::

    name: ex5.1
    morphism: s0
    alphabet: a b
    codomain: a
    a -> a
    b ->
    end
    ...
    preperiod: s0 s1
    cycle: s2

or ``family: ex7.5 K=3`` to expand a built-in family.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .core import EPP, Alphabet, Word
from .desub import CenteredRepresentation, NonRecognizabilityCertificate
from .morphisms import Morphism, MorphismSequence
from .sadic import ShiftModel


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 1, source: str = ""):
        self.message, self.line, self.col, self.source = message, line, col, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


@dataclass
class _Line:
    no: int
    text: str
    indent: int


class _Reader:
    def __init__(self, text: str, source: str = ""):
        self.source = source
        self.lines = []
        for i, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                self.lines.append(_Line(i, stripped, len(raw) - len(raw.lstrip())))
        self.pos = 0

    def peek(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self) -> _Line:
        line = self.peek()
        if line is None:
            raise self.error("unexpected end of input", self.lines[-1].no + 1 if self.lines else 1)
        self.pos += 1
        return line

    def error(self, message: str, line: int, col: int = 1) -> ParseError:
        return ParseError(message, line, col, self.source)

    def __iter__(self) -> Iterator[_Line]:
        while self.peek() is not None:
            yield self.next()


def _split_key(r: _Reader, line: _Line) -> tuple[str, str]:
    if ":" not in line.text:
        raise r.error("expected 'key: value'", line.no, line.indent + 1)
    key, _, value = line.text.partition(":")
    return key.strip(), value.strip()


def _alphabet(r: _Reader, line: _Line, value: str) -> Alphabet:
    try:
        return Alphabet(tuple(value.split()))
    except ValueError as e:
        raise r.error(str(e), line.no, line.indent + 1) from None


# -- morphisms ---------------------------------------------------------------

def _parse_morphism_lines(r: _Reader, stop_at_end: bool) -> Morphism:
    name = ""
    domain = codomain = None
    rules: dict[str, tuple[str, ...]] = {}
    rule_lines: dict[str, _Line] = {}
    first = r.peek()
    for line in r:
        if stop_at_end and line.text == "end":
            break
        if "->" in line.text:
            if domain is None:
                raise r.error("rule before 'alphabet:'", line.no, line.indent + 1)
            lhs, _, rhs = line.text.partition("->")
            a = lhs.strip()
            if a not in domain:
                raise r.error(f"{a!r} is not a domain letter", line.no, line.indent + 1)
            if a in rules:
                raise r.error(f"duplicate rule for {a!r}", line.no, line.indent + 1)
            rules[a] = tuple(rhs.split())
            rule_lines[a] = line
            continue
        key, value = _split_key(r, line)
        if key == "name":
            name = value
        elif key == "alphabet":
            domain = _alphabet(r, line, value)
        elif key == "codomain":
            codomain = _alphabet(r, line, value)
        else:
            raise r.error(f"unknown key {key!r}", line.no, line.indent + 1)
    else:
        if stop_at_end:
            raise r.error("morphism block without 'end'", first.no if first else 1)
    at = first.no if first else 1
    if domain is None:
        raise r.error("missing 'alphabet:'", at)
    codomain = codomain or domain
    missing = [a for a in domain if a not in rules]
    if missing:
        raise r.error(f"no rule for {', '.join(missing)}", at)
    images = []
    for a in domain:
        bad = [t for t in rules[a] if t not in codomain]
        if bad:
            line = rule_lines[a]
            rhs_at = line.text.index("->") + 2
            col = line.indent + 1 + line.text.index(bad[0], rhs_at)
            raise r.error(f"image of {a!r} uses {bad[0]!r} outside the codomain", line.no, col)
        images.append(tuple(codomain.index(t) for t in rules[a]))
    return Morphism(domain, codomain, tuple(images), name)


def parse_morphism(text: str, source: str = "") -> Morphism:
    return _parse_morphism_lines(_Reader(text, source), stop_at_end=False)


def emit_morphism(sigma: Morphism) -> str:
    lines = []
    if sigma.name:
        lines.append(f"name: {sigma.name}")
    lines.append(f"alphabet: {' '.join(sigma.domain)}")
    lines.append(f"codomain: {' '.join(sigma.codomain)}")
    for a, im in zip(sigma.domain, sigma.images):
        rhs = " ".join(sigma.codomain.letters[s] for s in im)
        lines.append(f"{a} -> {rhs}".rstrip())
    return "\n".join(lines) + "\n"


# -- sequences ---------------------------------------------------------------

FamilyExpander = Callable[[str, dict], MorphismSequence]


def _default_family(name: str, params: dict) -> MorphismSequence:
    from .fixtures import load_fixture
    return load_fixture(name, params).as_sequence()


def _params(r: _Reader, line: _Line, tokens: list[str]) -> dict:
    out = {}
    for t in tokens:
        if "=" not in t:
            raise r.error(f"expected KEY=VALUE, got {t!r}", line.no, line.indent + 1)
        k, _, v = t.partition("=")
        out[k] = v
    return out


def parse_sequence(text: str, source: str = "", base_dir: str = ".",
                   family: FamilyExpander = _default_family) -> MorphismSequence:
    r = _Reader(text, source)
    name = ""
    truncated = False
    blocks: dict[str, Morphism] = {}
    pre: Optional[list[str]] = None
    cyc: Optional[list[str]] = None
    lines: dict[str, _Line] = {}
    for line in r:
        key, value = _split_key(r, line)
        if key == "name":
            name = value
        elif key == "truncated":
            if value not in ("true", "false"):
                raise r.error("truncated must be true or false", line.no, line.indent + 1)
            truncated = value == "true"
        elif key == "family":
            tokens = value.split()
            if not tokens:
                raise r.error("empty family", line.no, line.indent + 1)
            try:
                return family(tokens[0], _params(r, line, tokens[1:]))
            except (KeyError, ValueError) as e:
                raise r.error(f"family: {e}", line.no, line.indent + 1) from None
        elif key == "morphism":
            label, _, path = value.partition("@")
            label = label.strip()
            if not label or label in blocks:
                raise r.error(f"bad or duplicate morphism label {label!r}", line.no, line.indent + 1)
            if path.strip():
                full = os.path.join(base_dir, path.strip())
                try:
                    with open(full, encoding="utf-8") as fh:
                        sigma = parse_morphism(fh.read(), full)
                except OSError as e:
                    raise r.error(f"cannot read {full}: {e.strerror}", line.no, line.indent + 1) from None
            else:
                sigma = _parse_morphism_lines(r, stop_at_end=True)
            blocks[label] = Morphism(sigma.domain, sigma.codomain, sigma.images,
                                     sigma.name or label)
        elif key in ("preperiod", "cycle"):
            lines[key] = line
            labels = value.split()
            for lab in labels:
                if lab not in blocks:
                    raise r.error(f"undefined morphism {lab!r}", line.no,
                                  line.text.index(lab) + line.indent + 1)
            if key == "preperiod":
                pre = labels
            else:
                cyc = labels
        else:
            raise r.error(f"unknown key {key!r}", line.no, line.indent + 1)
    if not cyc:
        raise r.error("missing or empty 'cycle:'", r.lines[-1].no if r.lines else 1)
    try:
        return MorphismSequence(tuple(blocks[x] for x in pre or []),
                                tuple(blocks[x] for x in cyc), name, truncated)
    except ValueError as e:
        raise r.error(str(e), lines["cycle"].no) from None


def emit_sequence(seq: MorphismSequence) -> str:
    out = []
    if seq.name:
        out.append(f"name: {seq.name}")
    if seq.truncated:
        out.append("truncated: true")
    labels = []
    seen: dict[int, str] = {}
    for sigma in seq.preperiod + seq.cycle:
        if id(sigma) in seen:
            labels.append(seen[id(sigma)])
            continue
        base = sigma.name.replace(" ", "_") or "m"
        label, i = base, 1
        while label in seen.values():
            label, i = f"{base}_{i}", i + 1
        seen[id(sigma)] = label
        labels.append(label)
        out.append(f"morphism: {label}")
        out.append(emit_morphism(sigma).rstrip("\n"))
        out.append("end")
    p = len(seq.preperiod)
    out.append(f"preperiod: {' '.join(labels[:p])}".rstrip())
    out.append(f"cycle: {' '.join(labels[p:])}")
    return "\n".join(out) + "\n"


# -- points, certificates, models -------------------------------------------

POINT_KEYS = ("left", "center", "right", "origin")


def _fields(r: _Reader, line: _Line, value: str, keys: tuple[str, ...]) -> dict:
    out: dict[str, str] = {}
    col = line.text.index(value) + line.indent + 1 if value else line.indent + 1
    for tok in value.split():
        k, eq, v = tok.partition("=")
        if not eq or k not in keys:
            raise r.error(f"unexpected field {tok!r}", line.no, col + value.index(tok))
        if k in out:
            raise r.error(f"duplicate field {k!r}", line.no, col + value.index(tok))
        out[k] = v
    missing = [k for k in keys if k not in out]
    if missing:
        raise r.error(f"missing field(s) {', '.join(missing)}", line.no, col)
    return out


def _word(r: _Reader, line: _Line, alphabet: Alphabet, text: str) -> Word:
    tokens = [t for t in text.split(",") if t]
    try:
        return Word(alphabet, tuple(alphabet.index(t) for t in tokens))
    except ValueError as e:
        raise r.error(str(e), line.no, line.indent + 1) from None


def _point(r: _Reader, line: _Line, alphabet: Alphabet, f: dict) -> EPP:
    try:
        origin = int(f["origin"])
    except ValueError:
        raise r.error(f"origin must be an integer, got {f['origin']!r}", line.no) from None
    try:
        return EPP(_word(r, line, alphabet, f["left"]), _word(r, line, alphabet, f["center"]),
                   _word(r, line, alphabet, f["right"]), origin)
    except ValueError as e:
        raise r.error(str(e), line.no, line.indent + 1) from None


def emit_point_fields(p: EPP) -> str:
    letters = p.alphabet.letters

    def w(x: Word) -> str:
        return ",".join(letters[s] for s in x.symbols)

    return f"left={w(p.left)} center={w(p.center)} right={w(p.right)} origin={p.origin}"


def parse_point(text: str, alphabet: Alphabet, source: str = "") -> EPP:
    """A file with ``point: left=.. center=.. right=.. origin=..`` (and an
    optional ``alphabet:`` line that must match)."""
    r = _Reader(text, source)
    point = None
    for line in r:
        key, value = _split_key(r, line)
        if key == "alphabet":
            if _alphabet(r, line, value) != alphabet:
                raise r.error("point alphabet differs from the morphism codomain", line.no)
        elif key == "point" and point is None:
            point = _point(r, line, alphabet, _fields(r, line, value, POINT_KEYS))
        else:
            raise r.error(f"unexpected key {key!r}", line.no, line.indent + 1)
    if point is None:
        raise r.error("missing 'point:'", 1)
    return point


def emit_point(p: EPP) -> str:
    return f"alphabet: {' '.join(p.alphabet)}\npoint: {emit_point_fields(p)}\n"


def parse_certificate(text: str, source: str = "") -> NonRecognizabilityCertificate:
    r = _Reader(text, source)
    sigma = None
    level = None
    reps: dict[str, CenteredRepresentation] = {}
    image = None
    for line in r:
        key, value = _split_key(r, line)
        if key == "morphism":
            sigma = _parse_morphism_lines(r, stop_at_end=True)
            if value and not sigma.name:
                sigma = Morphism(sigma.domain, sigma.codomain, sigma.images, value)
        elif key == "level":
            try:
                level = None if value == "none" else int(value)
            except ValueError:
                raise r.error("level must be an integer or none", line.no) from None
        elif key in ("rep1", "rep2", "image"):
            if sigma is None:
                raise r.error(f"{key} before the morphism block", line.no)
            if key == "image":
                image = _point(r, line, sigma.codomain, _fields(r, line, value, POINT_KEYS))
                continue
            f = _fields(r, line, value, ("k",) + POINT_KEYS)
            try:
                k = int(f.pop("k"))
            except ValueError:
                raise r.error("k must be an integer", line.no) from None
            reps[key] = CenteredRepresentation(_point(r, line, sigma.domain, f), k)
        else:
            raise r.error(f"unknown key {key!r}", line.no, line.indent + 1)
    if sigma is None or image is None or len(reps) != 2:
        raise r.error("certificate needs a morphism block, rep1, rep2 and image",
                      r.lines[-1].no if r.lines else 1)
    return NonRecognizabilityCertificate(sigma, reps["rep1"], reps["rep2"], image, level)


def emit_certificate(c: NonRecognizabilityCertificate) -> str:
    out = [f"morphism: {c.sigma.name}".rstrip(), emit_morphism(c.sigma).rstrip("\n"), "end"]
    out.append(f"level: {'none' if c.level is None else c.level}")
    out.append(f"rep1: k={c.r1.k} {emit_point_fields(c.r1.x)}")
    out.append(f"rep2: k={c.r2.k} {emit_point_fields(c.r2.x)}")
    out.append(f"image: {emit_point_fields(c.y)}")
    return "\n".join(out) + "\n"


def parse_models(text: str, source: str = "") -> dict[int, ShiftModel]:
    """One or more models, each starting with ``level:``."""
    r = _Reader(text, source)
    models: dict[int, ShiftModel] = {}
    level = None
    alphabet = None
    gens: list[EPP] = []

    def flush():
        if level is not None:
            models[level] = ShiftModel(level, tuple(gens))

    for line in r:
        key, value = _split_key(r, line)
        if key == "level":
            flush()
            try:
                level = int(value)
            except ValueError:
                raise r.error("level must be an integer", line.no) from None
            if level in models:
                raise r.error(f"duplicate model for level {level}", line.no)
            alphabet, gens = None, []
        elif key == "alphabet":
            if level is None:
                raise r.error("alphabet before 'level:'", line.no)
            alphabet = _alphabet(r, line, value)
        elif key == "generator":
            if alphabet is None:
                raise r.error("generator before 'alphabet:'", line.no)
            gens.append(_point(r, line, alphabet, _fields(r, line, value, POINT_KEYS)))
        else:
            raise r.error(f"unknown key {key!r}", line.no, line.indent + 1)
    flush()
    return models


def emit_models(models: dict[int, ShiftModel], alphabets: Optional[dict] = None) -> str:
    """``alphabets`` supplies the level alphabet for models without generators."""
    out = []
    for n in sorted(models):
        m = models[n]
        if m.generators:
            alphabet = m.generators[0].alphabet
        elif alphabets and n in alphabets:
            alphabet = alphabets[n]
        else:
            raise ValueError(f"model at level {n} has no generators and no alphabet")
        out.append(f"level: {n}")
        out.append(f"alphabet: {' '.join(alphabet)}")
        out.extend(f"generator: {emit_point_fields(g)}" for g in m.generators)
    return "\n".join(out) + "\n"


def sniff(text: str) -> str:
    """Guess the kind of a document: morphism, sequence, certificate, models or point."""
    keys = set()
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#") and ":" in s and "->" not in s:
            keys.add(s.partition(":")[0].strip())
    if "rep1" in keys or "image" in keys:
        return "certificate"
    if {"cycle", "family", "preperiod"} & keys:
        return "sequence"
    if "generator" in keys or ("level" in keys and "morphism" not in keys):
        return "models"
    if "point" in keys:
        return "point"
    return "morphism"
