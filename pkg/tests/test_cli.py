"""End-to-end command line coverage, run in process through ``main``."""

import pytest

from ewb import closure, format_gauss_file, format_word_file, mirror_word, parse_word, word, sigma
from ewb.cli import main

L1 = "fixtures/l1.gd"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


@pytest.fixture
def word_file(write):
    def _word_file(name, text, strands):
        return write(name, format_word_file(parse_word(text, strands)))

    return _word_file


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClose:
    def test_writes_gauss_data(self, capsys, word_file):
        code, out, err = run(capsys, "close", "--input", word_file("a.bw", "s1", 2))
        assert code == 0 and err == ""
        assert out == "crossing 1 +\narc 1.3 1.2 0\narc 1.4 1.1 0\nloops 0\n"

    def test_output_flag_writes_a_file(self, capsys, word_file, tmp_path):
        target = tmp_path / "out.gd"
        code, out, _ = run(
            capsys, "close", "--input", word_file("a.bw", "s1", 2), "--output", str(target)
        )
        assert code == 0 and out == ""
        assert target.read_text().startswith("crossing 1 +")

    def test_unclosable_word_is_an_error(self, capsys, word_file):
        code, out, err = run(capsys, "close", "--input", word_file("t.bw", "t1", 1))
        assert code == 2 and out == ""
        assert "not closable: component 1 has odd wen parity" in err

    def test_parse_errors_name_the_line(self, capsys, write):
        bad = write("bad.bw", "strands 2\nbad\n")
        code, _, err = run(capsys, "close", "--input", bad)
        assert code == 2
        assert "line 2" in err and "bad letter token" in err


class TestBraid:
    def test_fixture_braids_to_frozen_word(self, capsys):
        code, out, _ = run(capsys, "braid", "--input", L1)
        assert code == 0
        assert out == "strands 6\ns1 s3 s5 r5 r4 r3 r2 r1 r4 r3 r2 r3 t3 t4\n"

    def test_invalid_data_is_an_error(self, capsys, write):
        bad = write("bad.gd", "crossing c +\nloops 0\n")
        code, _, err = run(capsys, "braid", "--input", bad)
        assert code == 2 and "dangling endpoint" in err


class TestGaussValidate:
    def test_valid(self, capsys):
        assert run(capsys, "gauss-validate", "--input", L1) == (0, "valid\n", "")

    def test_valid_machine(self, capsys):
        code, out, _ = run(capsys, "gauss-validate", "--input", L1, "--format", "machine")
        assert (code, out) == (0, "valid=true\n")

    def test_invalid(self, capsys, write):
        bad = write("bad.gd", "crossing c +\nloops 0\n")
        code, out, _ = run(capsys, "gauss-validate", "--input", bad, "--format", "machine")
        assert code == 1
        assert out.splitlines()[0] == "valid=false"


class TestEquality:
    def test_braid_relation_words_are_equal(self, capsys, word_file):
        a = word_file("a.bw", "s1 s2 s1", 3)
        b = word_file("b.bw", "s2 s1 s2", 3)
        code, out, _ = run(capsys, "eq-word", a, b)
        assert (code, out) == (0, "equal\n")

    def test_unequal_words(self, capsys, word_file):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "S1", 2)
        code, out, _ = run(capsys, "eq-word", a, b, "--format", "machine")
        assert (code, out) == (1, "equal=false\n")

    def test_degree_mismatch_is_just_unequal(self, capsys, word_file):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "s1", 3)
        code, out, _ = run(capsys, "eq-word", a, b)
        assert code == 1 and out == "not equal\n"

    def test_isomorphic_gauss_data(self, capsys, write):
        a = write("a.gd", format_gauss_file(closure(parse_word("s1 s2", 3))))
        b = write("b.gd", format_gauss_file(closure(parse_word("s2 s1", 3))))
        code, out, _ = run(capsys, "eq-gauss", a, b, "--format", "machine")
        assert (code, out) == (0, "isomorphic=true\npairs=1:2,2:1\n")

    def test_distinct_gauss_data(self, capsys, write):
        a = write("a.gd", format_gauss_file(closure(parse_word("s1", 2))))
        b = write("b.gd", format_gauss_file(closure(parse_word("S1", 2))))
        code, out, _ = run(capsys, "eq-gauss", a, b, "--format", "machine")
        assert (code, out) == (1, "isomorphic=false\n")


class TestSymmetries:
    def test_signrev_word(self, capsys, word_file, tmp_path):
        code, out, _ = run(capsys, "signrev-word", "--input", word_file("a.bw", "s1", 2))
        assert (code, out) == (0, "strands 2\nr1 S1 r1\n")

    def test_mirror(self, capsys, word_file):
        code, out, _ = run(
            capsys, "mirror", "--input", word_file("a.bw", "s1 r2 t1 S2", 3)
        )
        assert (code, out) == (0, "strands 3\nS2 r1 t3 s1\n")

    def test_mirrored_closure_is_the_sign_reversal(self, capsys, write, word_file):
        b = parse_word("s1 s1", 2)
        mirrored = write("m.gd", format_gauss_file(closure(mirror_word(b))))
        code, out, _ = run(
            capsys, "signrev-gauss", "--input", write("g.gd", format_gauss_file(closure(b)))
        )
        assert code == 0
        reversed_file = write("r.gd", out)
        code, out, _ = run(capsys, "eq-gauss", mirrored, reversed_file)
        assert code == 0
        assert out.startswith("isomorphic: ")


class TestRewriting:
    def test_eliminate_wens_reports_and_writes(self, capsys, tmp_path):
        out_path = tmp_path / "out.gd"
        code, out, _ = run(
            capsys,
            "eliminate-wens",
            "--input",
            L1,
            "--format",
            "machine",
            "--output",
            str(out_path),
        )
        assert code == 0
        assert out == "flipped=c1\nslides=2\n"
        produced = out_path.read_text()
        assert "arc" in produced and " 1\n" not in produced  # bar-free

    def test_eliminate_wens_artifact_on_stdout(self, capsys):
        code, out, _ = run(capsys, "eliminate-wens", "--input", L1)
        assert code == 0
        assert out.startswith("crossing c1 -")
        assert "flipped" not in out

    def test_reduce_kinks(self, capsys, write, word_file):
        g = write("g.gd", format_gauss_file(closure(parse_word("s1 s2", 3))))
        code, out, _ = run(capsys, "reduce-kinks", "--input", g)
        assert (code, out) == (0, "loops 1\n")


class TestInvariants:
    def test_fixture_machine_lines(self, capsys):
        code, out, _ = run(capsys, "invariants", "--input", L1, "--format", "machine")
        assert code == 0
        assert out.splitlines() == [
            "components=2",
            "loops=0",
            "crossings=3",
            "signs=-1,-1,1",
            "linking=0,-1;0,0",
        ]

    def test_word_input_is_closed_first(self, capsys, word_file):
        code, out, _ = run(
            capsys, "invariants", "--input", word_file("a.bw", "s1", 2)
        )
        assert code == 0
        assert "components: 1" in out and "crossings: 1" in out


class TestMarkovVerbs:
    def test_search_then_replay(self, capsys, word_file, tmp_path):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "r1 S1 r1", 2)
        witness = tmp_path / "w.txt"
        code, out, _ = run(capsys, "markov", a, b, "--output", str(witness))
        assert (code, out) == (0, "found witness of 4 moves\n")
        assert witness.read_text() == "m2d\nm2-\nm0 S1 r1 r1\nm1 2\n"
        code, out, _ = run(capsys, "replay", a, str(witness), "--target", b)
        assert (code, out) == (0, "replay matches target\n")

    def test_machine_report_carries_the_witness(self, capsys, word_file):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "r1 S1 r1", 2)
        code, out, _ = run(capsys, "markov", a, b, "--format", "machine")
        assert code == 0
        assert out == "found=true\nmoves=4\nwitness=m2d;m2-;m0 S1 r1 r1;m1 2\n"

    def test_replay_without_target_prints_the_result(self, capsys, word_file, write):
        a = word_file("a.bw", "s1", 2)
        w = write("w.txt", "m1 1\n")
        code, out, _ = run(capsys, "replay", a, w)
        assert (code, out) == (0, "strands 2\ns1\n")

    def test_replay_mismatch(self, capsys, word_file, write):
        a = word_file("a.bw", "s1", 2)
        w = write("w.txt", "m2w\n")
        code, out, _ = run(
            capsys, "replay", a, w, "--target", word_file("b.bw", "S1 r2", 3),
            "--format", "machine",
        )
        assert code == 1
        assert out == "equal=false\nresult=s1 r2\n"

    def test_bad_witness_line_is_an_error(self, capsys, word_file, write):
        a = word_file("a.bw", "s1", 2)
        w = write("w.txt", "m1 1\nflip\n")
        code, _, err = run(capsys, "replay", a, w)
        assert code == 2 and "line 2" in err

    def test_inconclusive_search(self, capsys, word_file):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "S1", 2)
        code, out, _ = run(capsys, "markov", a, b, "--budget", "1", "--format", "machine")
        assert code == 1
        assert out == "found=false\n"

    def test_budget_env_default(self, capsys, word_file, monkeypatch):
        a = word_file("a.bw", "s1", 2)
        b = word_file("b.bw", "S1", 2)
        monkeypatch.setenv("EWB_BUDGET_DEFAULT", "1")
        code, out, _ = run(capsys, "markov", a, b)
        assert code == 1
        assert out == "inconclusive: no witness within the given limits\n"
        monkeypatch.setenv("EWB_BUDGET_DEFAULT", "zap")
        code, _, err = run(capsys, "markov", a, b)
        assert code == 2
        assert "EWB_BUDGET_DEFAULT is not an integer" in err
        # an explicit flag still wins over the environment
        code, _, _ = run(capsys, "markov", a, b, "--budget", "50000")
        assert code == 0


class TestRelationsVerb:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "verify-relations", "--n", "4")
        assert (code, out) == (0, "all relation instances verified (70 instances, n <= 4)\n")

    def test_machine_report(self, capsys):
        code, out, _ = run(capsys, "verify-relations", "--n", "3", "--format", "machine")
        assert (code, out) == (0, "checked=28\nfailures=0\n")

    def test_seeded_self_tests(self, capsys):
        code, out, _ = run(capsys, "verify-relations", "--n", "3", "--seed", "11")
        assert code == 0 and "self-tests" in out


class TestTopLevelErrors:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "close", "--input", "/nonexistent.bw")
        assert code == 2 and err != ""

    def test_unknown_verb(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2
