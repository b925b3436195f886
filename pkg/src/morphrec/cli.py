"""``morphrec`` command-line interface.

Sources are either a built-in example name followed by ``KEY=VALUE``
parameters (``ex7.5 K=3``) or a path to a morphism or sequence file.

Exit codes: 0 success, 2 input error, 3 resource limit, 4 no decomposition,
5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import formats
from .core import AlphabetMismatch
from .desub import (DEFAULT_ERASED_BOUND, NonRecognizabilityCertificate,
                    audit_recognizability, desubstitute_point, enumerate_fragments)
from .elementary import (DecompositionNotFound, ResourceExhausted, build_descent_chain,
                         find_decomposition, rank_shortcut)
from .fixtures import FIXTURE_NAMES, Fixture, load_fixture
from .languages import DEFAULT_HORIZON, language_of_morphism, level_language
from .morphisms import Morphism, MorphismSequence, constant_sequence
from .sadic import audit_sequence, validate_model

EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_NO_DECOMPOSITION = 4
EXIT_INCONSISTENT = 5


class InputError(Exception):
    pass


@dataclass
class Source:
    label: str
    morphism: Optional[Morphism] = None
    sequence: Optional[MorphismSequence] = None
    fixture: Optional[Fixture] = None

    def as_sequence(self) -> MorphismSequence:
        if self.sequence is not None:
            return self.sequence
        if not self.morphism.is_endomorphism:
            raise InputError("a single morphism must be an endomorphism to form a sequence")
        return constant_sequence(self.morphism)


def _params(tokens: list[str]) -> dict:
    out = {}
    for t in tokens:
        k, eq, v = t.partition("=")
        if not eq:
            raise InputError(f"expected KEY=VALUE, got {t!r}")
        out[k] = v
    return out


def load_source(name: str, params: list[str]) -> Source:
    if name in FIXTURE_NAMES:
        fx = load_fixture(name, _params(params))
        return Source(name, fx.morphism, fx.sequence, fx)
    if params:
        raise InputError("KEY=VALUE parameters only apply to built-in examples")
    try:
        with open(name, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{name}: not a built-in example and not readable ({e.strerror})")
    kind = formats.sniff(text)
    if kind == "sequence":
        seq = formats.parse_sequence(text, name, os.path.dirname(name) or ".")
        return Source(name, sequence=seq)
    if kind == "morphism":
        return Source(name, morphism=formats.parse_morphism(text, name))
    raise InputError(f"{name}: expected a morphism or sequence file, found {kind}")


def _level_morphism(src: Source, level: Optional[int]) -> tuple[Morphism, Optional[int]]:
    if src.sequence is not None:
        n = level or 0
        return src.sequence[n], n
    if level not in (None, 0):
        raise InputError("--level needs a sequence")
    return src.morphism, None


def _oracle_x(src: Source, level: Optional[int], kind: str, max_len: int, horizon: int):
    if kind == "full":
        return None
    if src.sequence is not None:
        return level_language(src.sequence, level + 1, max_len, level + 1 + horizon)
    if not src.morphism.is_endomorphism:
        raise InputError("--oracle lang needs an endomorphism or a sequence")
    return language_of_morphism(src.morphism, max_len, horizon)


def _oracle_y(src: Source, level: Optional[int], kind: str, max_len: int, horizon: int):
    if kind == "full":
        return None
    if src.sequence is not None:
        return level_language(src.sequence, level, max_len, level + horizon)
    if not src.morphism.is_endomorphism:
        raise InputError("--windows lang needs an endomorphism or a sequence")
    return language_of_morphism(src.morphism, max_len, horizon)


# -- commands ------------------------------------------------------------------

def cmd_lang(args, out) -> int:
    src = load_source(args.source, args.params)
    if src.sequence is not None:
        n = args.level or 0
        fs = level_language(src.sequence, n, args.len, max(args.horizon, n))
    else:
        if args.level not in (None, 0):
            raise InputError("--level needs a sequence")
        if not src.morphism.is_endomorphism:
            raise InputError("the language of a morphism needs an endomorphism")
        fs = language_of_morphism(src.morphism, args.len, args.horizon)
    for w in fs.strings():
        print(w, file=out)
    print(f"# saturated={str(fs.saturated).lower()} truncated={str(fs.truncated).lower()} "
          f"horizon={fs.horizon}", file=out)
    return 0


def cmd_desub(args, out) -> int:
    src = load_source(args.source, args.params)
    sigma, level = _level_morphism(src, args.level)
    if args.word is not None:
        oracle_len = max(args.len, len(args.word))
        lang_x = _oracle_x(src, level or 0, args.oracle, oracle_len, args.horizon)
        y = sigma.codomain.word(args.word)
        frags = enumerate_fragments(y, sigma, lang_x, args.erased_bound)
        for f in frags:
            print(f.render(sigma), file=out)
        print(f"# fragments={len(frags)}", file=out)
        return 0
    ell = max(args.len, 2 * args.radius + 2)
    lang_x = _oracle_x(src, level or 0, args.oracle, ell, args.horizon)
    if args.point is not None:
        try:
            with open(args.point, encoding="utf-8") as fh:
                y = formats.parse_point(fh.read(), sigma.codomain, args.point)
        except OSError as e:
            raise InputError(f"{args.point}: {e.strerror}")
        reps = desubstitute_point(sigma, y, lang_x, erased_bound=args.erased_bound)
        for r in reps:
            print(f"k={r.k} {formats.emit_point_fields(r.x)}", file=out)
        print(f"# representations={len(reps)}", file=out)
        return 0
    lang_y = _oracle_y(src, level or 0, args.windows, ell, args.horizon)
    try:
        verdict = audit_recognizability(sigma, lang_x, lang_y, args.radius,
                                        aperiodic_mode=args.aperiodic,
                                        erased_bound=args.erased_bound)
    except ValueError as e:
        raise InputError(str(e))
    print(f"windows_scanned={verdict.windows_scanned}", file=out)
    for w, f1, f2 in verdict.evidence:
        print(f"evidence: window={sigma.codomain.render(w)} | {f1.render(sigma)} | "
              f"{f2.render(sigma)}", file=out)
    for cand, check in verdict.candidates_rejected:
        print(f"rejected_candidate: {check} image={cand.y}", file=out)
    if verdict.certificate is not None:
        c = verdict.certificate
        cert = NonRecognizabilityCertificate(c.sigma, c.r1, c.r2, c.y, level)
        print(formats.emit_certificate(cert), end="", file=out)
    print(verdict.line(), file=out)
    return 0


def _print_morphism_block(title: str, sigma: Morphism, out) -> None:
    print(f"[{title}]", file=out)
    print(formats.emit_morphism(sigma), end="", file=out)


def cmd_elementary(args, out) -> int:
    src = load_source(args.source, args.params)
    sigma, _ = _level_morphism(src, args.level)
    print(f"rank_shortcut={rank_shortcut(sigma).value}", file=out)
    dec = find_decomposition(sigma, args.node_limit)
    if dec is None:
        print("ELEMENTARY", file=out)
        return 0
    print(f"DECOMPOSABLE through {len(dec.B)} letters: {' '.join(dec.B) or 'ε'}", file=out)
    _print_morphism_block("alpha", dec.alpha, out)
    _print_morphism_block("beta", dec.beta, out)
    return 0


def cmd_chain(args, out) -> int:
    src = load_source(args.source, args.params)
    seq = src.as_sequence()
    try:
        flags = [int(x) for x in args.flags.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--flags must be comma-separated integers, got {args.flags!r}")
    try:
        chain = build_descent_chain(seq, flags, args.m, args.node_limit)
    except ValueError as e:
        raise InputError(str(e))
    print(f"{'step':>4}  {'level':>5}  {'size':>4}  alphabet", file=out)
    print(f"{0:>4}  {chain.m:>5}  {len(chain.top):>4}  {' '.join(chain.top)}", file=out)
    for k, step in enumerate(chain.steps, start=1):
        B = step.decomposition.B
        print(f"{k:>4}  {step.level:>5}  {len(B):>4}  {' '.join(B)}", file=out)
    for k, step in enumerate(chain.steps, start=1):
        _print_morphism_block(f"alpha_{k}", step.decomposition.alpha, out)
        _print_morphism_block(f"beta_{k}", step.decomposition.beta, out)
    print("sizes=" + ">".join(str(s) for s in chain.sizes), file=out)
    return 0


def _load_models(path: str) -> dict:
    paths = ([os.path.join(path, f) for f in sorted(os.listdir(path)) if f.endswith(".model")]
             if os.path.isdir(path) else [path])
    models: dict = {}
    for p in paths:
        try:
            with open(p, encoding="utf-8") as fh:
                models.update(formats.parse_models(fh.read(), p))
        except OSError as e:
            raise InputError(f"{p}: {e.strerror}")
    return models


def cmd_audit(args, out) -> int:
    src = load_source(args.source, args.params)
    seq = src.as_sequence()
    checks: dict = {}
    if args.models:
        models = _load_models(args.models)
        origin = args.models
    elif src.fixture is not None and src.fixture.models:
        models = src.fixture.models
        checks = src.fixture.model_checks
        origin = "shipped"
    else:
        models, origin = {}, "none"
    for n, m in models.items():
        if m.generators and m.generators[0].alphabet != seq.alphabet(n):
            raise InputError(f"model for level {n} is not over A_{n}")
    report = audit_sequence(seq, models, args.radius, args.len, args.horizon,
                            args.erased_bound)
    print(f"audit of {report.name or src.label}: levels 0..{len(report.levels) - 1}, "
          f"radius={report.radius} len={report.max_len}", file=out)
    for lv in report.levels:
        print(f"  level {lv.level}: recognizability={lv.recognizability.kind.value} "
              f"representability={lv.representability}", file=out)
    if models:
        print(f"models ({origin}); NOT_REPRESENTABLE is exact relative to them:", file=out)
        for n in sorted(models):
            ell, pad = checks.get(n, (min(report.max_len, 4), 0))
            res = validate_model(seq, models[n], ell, args.horizon, pad)
            status = "PASS" if res.ok else "FAIL"
            print(f"  level {n}: validate {status} len={ell} pad={pad}", file=out)
    for key, value in report.key_values():
        print(f"{key}={value}", file=out)
    for lv in report.levels:
        print(f"level.{lv.level}.recognizability={lv.recognizability.kind.value}", file=out)
        print(f"level.{lv.level}.representability={lv.representability.kind.value}", file=out)
    return 0 if report.consistent else EXIT_INCONSISTENT


def fixture_files(fx: Fixture, radius: int = 4) -> dict[str, str]:
    """File name -> contents for a shipped example, including models and the
    certificates found by a level audit."""
    files: dict[str, str] = {}
    stem = fx.name + "".join(f"-{k}{v}" for k, v in sorted(fx.params.items()))
    if fx.sequence is None:
        files[f"{stem}.morphism"] = formats.emit_morphism(fx.morphism)
        return files
    files[f"{stem}.seq"] = formats.emit_sequence(fx.sequence)
    if fx.models:
        alphabets = {n: fx.sequence.alphabet(n) for n in fx.models}
        files[f"{stem}.model"] = formats.emit_models(fx.models, alphabets)
    report = audit_sequence(fx.sequence, fx.models, radius)
    for lv in report.levels:
        c = lv.recognizability.certificate
        if c is not None:
            files[f"{stem}.level{lv.level}.cert"] = formats.emit_certificate(c)
    return files


def cmd_examples(args, out) -> int:
    if args.action == "list":
        for name in FIXTURE_NAMES:
            print(f"{name}\t{load_fixture(name).description}", file=out)
        return 0
    if args.name is None:
        raise InputError("examples show needs a name")
    if args.name not in FIXTURE_NAMES:
        raise InputError(f"unknown example {args.name!r}; known: {', '.join(FIXTURE_NAMES)}")
    fx = load_fixture(args.name, _params(args.params))
    files = fixture_files(fx)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for fname, text in files.items():
            with open(os.path.join(args.out, fname), "w", encoding="utf-8") as fh:
                fh.write(text)
            print(os.path.join(args.out, fname), file=out)
        return 0
    for i, (fname, text) in enumerate(files.items()):
        if i:
            print(file=out)
        print(f"# file: {fname}", file=out)
        print(text, end="", file=out)
    return 0


# -- parser ------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morphrec",
                                description="Recognizability tools for morphisms and S-adic sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(sp):
        sp.add_argument("source", help="built-in example name or morphism/sequence file")
        sp.add_argument("params", nargs="*", help="KEY=VALUE parameters for family examples")
        return sp

    sp = with_source(sub.add_parser("lang", help="bounded factor language"))
    sp.add_argument("--level", type=_nonneg)
    sp.add_argument("--len", type=_positive, default=3)
    sp.add_argument("--horizon", type=_nonneg, default=DEFAULT_HORIZON)
    sp.set_defaults(func=cmd_lang)

    sp = with_source(sub.add_parser("desub", help="fragments, point desubstitution or audit"))
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--word")
    g.add_argument("--point", help="file with a 'point:' line")
    sp.add_argument("--oracle", choices=("full", "lang"), default="full",
                    help="shift for the preimage points")
    sp.add_argument("--windows", choices=("full", "lang"), default="lang",
                    help="where audit windows come from")
    sp.add_argument("--radius", type=_positive, default=4)
    sp.add_argument("--aperiodic", action="store_true")
    sp.add_argument("--level", type=_nonneg)
    sp.add_argument("--len", type=_positive, default=8, help="oracle word length")
    sp.add_argument("--horizon", type=_nonneg, default=DEFAULT_HORIZON)
    sp.add_argument("--erased-bound", type=_nonneg, default=DEFAULT_ERASED_BOUND)
    sp.set_defaults(func=cmd_desub)

    sp = with_source(sub.add_parser("elementary", help="elementarity test"))
    sp.add_argument("--level", type=_nonneg)
    sp.add_argument("--node-limit", type=_positive, default=10_000_000)
    sp.set_defaults(func=cmd_elementary)

    sp = with_source(sub.add_parser("chain", help="alphabet descent chain"))
    sp.add_argument("--flags", required=True, help="comma-separated levels")
    sp.add_argument("--m", type=_nonneg, required=True)
    sp.add_argument("--node-limit", type=_positive, default=10_000_000)
    sp.set_defaults(func=cmd_chain)

    sp = with_source(sub.add_parser("audit", help="per-level recognizability and representability"))
    sp.add_argument("--models", help="model file or directory of *.model files")
    sp.add_argument("--radius", type=_positive, default=4)
    sp.add_argument("--len", type=_positive, default=None)
    sp.add_argument("--horizon", type=_positive, default=DEFAULT_HORIZON)
    sp.add_argument("--erased-bound", type=_nonneg, default=DEFAULT_ERASED_BOUND)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("examples", help="list or show built-in examples")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--out", help="write files into this directory")
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, formats.ParseError, AlphabetMismatch, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"morphrec: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceExhausted as e:
        print(f"morphrec: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except DecompositionNotFound as e:
        print(f"morphrec: {e}", file=sys.stderr)
        return EXIT_NO_DECOMPOSITION


if __name__ == "__main__":
    sys.exit(main())
