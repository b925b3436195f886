import io

import pytest

from morphrec import formats
from morphrec.cli import fixture_files, main
from morphrec.core import EPP, Alphabet
from morphrec.desub import verify_certificate
from morphrec.fixtures import FIXTURE_NAMES, ex51_models, ex75, load_fixture, thue_morse


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_lang():
    code, text = run("lang", "fibonacci", "--len", "2")
    assert code == 0
    assert text.splitlines()[:5] == ["a", "aa", "ab", "b", "ba"]
    assert "saturated=true" in text
    code, text = run("lang", "ex5.1", "--level", "0", "--len", "3")
    assert text.splitlines()[:3] == ["a", "aa", "aaa"]


def test_bad_input_exit_codes():
    with pytest.raises(SystemExit) as info:
        main(["lang", "fibonacci", "--len", "0"])
    assert info.value.code == 2
    assert run("examples", "show", "nosuch")[0] == 2
    assert run("lang", "ex7.5", "K")[0] == 2


def test_desub_word():
    code, text = run("desub", "thue-morse", "--word", "abab")
    assert code == 0
    assert "k=0 window=aa span=0:4" in text
    assert text.strip().endswith("# fragments=2")


def test_desub_audit():
    code, text = run("desub", "ex3.4", "--windows", "full", "--radius", "4", "--aperiodic")
    assert code == 0
    assert text.strip().endswith("VERDICT: CERTIFIED radius=4")
    cert_text = text[text.index("morphism:"):text.index("VERDICT")]
    cert = formats.parse_certificate(cert_text)
    assert verify_certificate(cert, aperiodic_mode=True)
    code, text = run("desub", "thue-morse", "--oracle", "lang", "--radius", "5", "--aperiodic")
    assert "VERDICT: NO_VIOLATION radius=5" in text


def test_elementary_and_chain():
    code, text = run("elementary", "thue-morse")
    assert code == 0 and "ELEMENTARY" in text and "DECOMPOSABLE" not in text
    code, text = run("elementary", "ex3.4")
    assert "DECOMPOSABLE through 2 letters" in text
    code, text = run("chain", "ex7.5", "K=2", "--flags", "1,2", "--m", "3")
    assert code == 0 and "sizes=4>3>2" in text
    assert run("chain", "thue-morse", "--flags", "0", "--m", "1")[0] == 4
    assert run("elementary", "ex7.5", "K=2", "--level", "1", "--node-limit", "1")[0] == 3


def test_audit():
    code, text = run("audit", "ex7.5", "K=3")
    assert code == 0
    lines = set(text.splitlines())
    assert {"rank=5", "nonrec_certified=3", "status=OK"} <= lines
    code, text = run("audit", "ex5.1")
    assert "nonrep_certified=1" in text.splitlines()
    assert "level.0.representability=NOT_REPRESENTABLE" in text


def test_audit_with_model_file(tmp_path):
    seq = load_fixture("ex5.1").sequence
    path = tmp_path / "ex51.model"
    path.write_text(formats.emit_models(ex51_models(),
                                        {n: seq.alphabet(n) for n in ex51_models()}))
    code, text = run("audit", "ex5.1", "--models", str(path))
    assert code == 0 and "nonrep_certified=1" in text


def test_examples(tmp_path):
    code, text = run("examples", "list")
    assert [l.split("\t")[0] for l in text.splitlines()] == list(FIXTURE_NAMES)
    code, text = run("examples", "show", "ex7.5", "K=1", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert any(n.endswith(".seq") for n in names)
    assert any(n.endswith(".level1.cert") for n in names)
    seq_file = next(p for p in tmp_path.iterdir() if p.suffix == ".seq")
    # the written sequence file is a valid source
    code, text = run("audit", str(seq_file))
    assert code == 0 and "nonrec_certified=1" in text


# -- formats -------------------------------------------------------------------------

def test_morphism_round_trip():
    for sigma in (thue_morse(), ex75(2)[1], load_fixture("ex5.1").sequence[0]):
        text = formats.emit_morphism(sigma)
        back = formats.parse_morphism(text)
        assert back.images == sigma.images
        assert back.domain == sigma.domain and back.codomain == sigma.codomain
        assert formats.emit_morphism(back) == text


def test_sequence_round_trip():
    for name in ("ex5.1", "ex7.5", "ex7.6"):
        seq = load_fixture(name).sequence
        text = formats.emit_sequence(seq)
        back = formats.parse_sequence(text)
        assert formats.emit_sequence(back) == text
        assert back.truncated == seq.truncated
        assert len(back.preperiod) == len(seq.preperiod) and len(back.cycle) == len(seq.cycle)


def test_family_line():
    seq = formats.parse_sequence("family: ex7.5 K=3\n")
    assert formats.emit_sequence(seq) == formats.emit_sequence(ex75(3))


def test_point_round_trip():
    A = Alphabet.of("ab")
    p = EPP(A.word("ab"), A.word("bba"), A.word("b"), 2)
    assert formats.parse_point(formats.emit_point(p), A) == p


def test_certificate_and_models_round_trip():
    for fx_name in ("ex7.5", "ex3.4"):
        fx = load_fixture(fx_name)
        for fname, text in fixture_files(fx).items():
            kind = formats.sniff(text)
            if kind == "certificate":
                c = formats.parse_certificate(text)
                assert formats.emit_certificate(c) == text
                assert verify_certificate(c)
            elif kind == "models":
                assert formats.emit_models(formats.parse_models(text),
                                           {n: fx.sequence.alphabet(n) for n in fx.models}) == text


def test_parse_error_position():
    text = "alphabet: a b\ncodomain: a b\na -> a b\nb -> a q\n"
    with pytest.raises(formats.ParseError) as info:
        formats.parse_morphism(text, "m.txt")
    assert info.value.line == 4
    assert str(info.value).startswith("m.txt:4:8:")
