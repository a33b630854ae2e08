import io
import json
from pathlib import Path

import pytest

from qmtoeplitz.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


class TestValidate:
    def test_valid(self):
        code, out, _ = run("validate", "--input", CONFIGS / "diamond.poset")
        assert code == 0 and out.startswith("valid: 4 elements")

    def test_inconsistent_names_triple(self):
        code, _, err = run("validate", "--input", CONFIGS / "diamond_bad.poset")
        assert code == 2
        assert "'a', 'c', 'd'" in err

    def test_malformed(self):
        code, _, err = run("validate", "--input", CONFIGS / "malformed.poset")
        assert code == 1 and "line 5" in err

    def test_missing_file(self, tmp_path):
        assert run("validate", "--input", tmp_path / "nope.poset")[0] == 1

    def test_missing_input(self):
        assert run("validate")[0] == 1

    def test_bad_utf8(self, tmp_path):
        p = tmp_path / "bin.poset"
        p.write_bytes(b"[elements]\n\xff\n")
        assert run("validate", "--input", p)[0] == 1

    def test_cycle(self, tmp_path):
        p = tmp_path / "cyc.poset"
        p.write_text("[elements]\na b\n[covers]\na < b : 2\nb < a : 2\n")
        assert run("validate", "--input", p)[0] == 2

    def test_structured_error(self):
        code, out, _ = run("validate", "--input", CONFIGS / "malformed.poset", "--format", "structured")
        (rec,) = records(out)
        assert code == 1 and rec["status"] == "error" and rec["line"] == 5


class TestChain:
    def test_chain(self):
        code, out, _ = run("chain", "--input", CONFIGS / "chain.poset", "--format", "structured")
        head = records(out)[0]
        assert code == 0 and head["chain"] == ["a", "b", "c"] and head["labels"] == [1, 2, 6]

    def test_diamond(self):
        head = records(run("chain", "--input", CONFIGS / "diamond.poset", "--format", "structured")[1])[0]
        assert head["chain"] == ["a", "b", "d"]

    def test_top_base(self):
        head = records(run("chain", "--input", CONFIGS / "chain.poset", "--base", "c", "--format", "structured")[1])[0]
        assert head["chain"] == ["c"]

    def test_unknown_base(self):
        assert run("chain", "--input", CONFIGS / "chain.poset", "--base", "zz")[0] == 1

    def test_not_directed(self):
        assert run("chain", "--input", CONFIGS / "vshape.poset")[0] == 2


class TestColimit:
    def test_chain(self):
        code, out, _ = run("colimit", "--input", CONFIGS / "chain.poset")
        assert code == 0
        assert "M = (2, 3)" in out and "(1/6)Z" in out

    def test_singleton(self):
        code, out, _ = run("colimit", "--input", CONFIGS / "singleton.poset")
        assert code == 0 and "plain Toeplitz" in out

    def test_vshape_needs_decompose(self):
        code, _, err = run("colimit", "--input", CONFIGS / "vshape.poset")
        assert code == 2 and "--decompose" in err

    def test_vshape_decompose(self):
        code, out, _ = run("colimit", "--input", CONFIGS / "vshape.poset", "--decompose", "--format", "structured")
        recs = records(out)
        assert code == 0
        assert recs[0]["components"] == [["a", "b"], ["a", "c"]]
        heads = [r for r in recs if r.get("command") == "decompose" and "M" in r]
        assert [h["M"] for h in heads] == [[2], [3]]

    def test_structured_is_deterministic(self):
        args = ("colimit", "--input", CONFIGS / "wide.poset", "--format", "structured", "--seed", "7")
        first, second = run(*args)[1], run(*args)[1]
        assert first == second
        assert all(r.get("status", "ok") == "ok" for r in records(first) if "status" in r)

    def test_seed_changes_samples(self):
        base = ("colimit", "--input", CONFIGS / "diamond.poset", "--format", "structured", "--samples", "3")
        assert run(*base, "--seed", "1")[0] == 0
        assert run(*base, "--seed", "2")[0] == 0


def test_decompose_antichain():
    code, out, _ = run("decompose", "--input", CONFIGS / "antichain.poset", "--format", "structured")
    recs = records(out)
    assert code == 0 and len(recs[0]["components"]) == 3
    assert all(r["plain_toeplitz"] for r in recs if "plain_toeplitz" in r)


class TestEval:
    @pytest.mark.parametrize(
        "expr, expected",
        [
            ("V*(1)*V(1)", "1"),
            ("V(1/2)*V*(1/3) * V(2/3)*V*(1/4)", "V(5/6)V*(1/4)"),
            ("(1 - V(1)*V*(1))^2", "1 - V(1)V*(1)"),
        ],
    )
    def test_examples(self, expr, expected):
        code, out, _ = run("eval", expr)
        assert code == 0 and out.strip() == expected

    def test_parse_error_caret(self):
        code, _, err = run("eval", "V(1) +* 2")
        assert code == 1 and "^" in err

    def test_cone_membership(self):
        assert run("eval", "V(1/6)", "--cone", "2,3")[0] == 0
        assert run("eval", "V(1/5)", "--cone", "2,3")[0] == 1
        assert run("eval", "V(1)", "--cone", "2,x")[0] == 1

    def test_structured(self):
        (rec,) = records(run("eval", "V(1)+V(1)", "--format", "structured")[1])
        assert rec["result"] == "2*V(1)"


def test_oracle_default_grid():
    code, out, _ = run("oracle", "--samples", "5", "--format", "structured")
    recs = records(out)
    assert code == 0
    assert recs[0]["check"] == "interior" and recs[0]["ok"]
    assert all(r["ok"] for r in recs)
    assert {r["lambda"] for r in recs[1:]} == {"2", "3"}


def test_oracle_short_ladder_fails_tolerance():
    # at L = 32 the truncated bounds of T + T* are still far from 2
    code, out, _ = run("oracle", "--L", "32", "--samples", "2", "--format", "structured")
    assert code == 3
    assert any(not r["ok"] for r in records(out))


def test_oracle_lambdas_from_labels():
    code, out, _ = run("oracle", "--samples", "1", "--input", CONFIGS / "chain.poset", "--format", "structured")
    assert code == 0
    assert {r["lambda"] for r in records(out)[1:]} == {"2", "3", "6"}


def test_bad_arguments():
    assert run("nosuch")[0] == 1
    assert run("--version")[0] == 0
