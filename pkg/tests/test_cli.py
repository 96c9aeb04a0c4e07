"""Command line front end: jobspec files in, deterministic records out.

Exit codes: 0 success, 1 malformed job or usage, 2 unsupported input,
3 internal cross-check failure.
"""

import json

import pytest

from shiftperturb import cli
from shiftperturb.perturb import OracleMismatchError

GOLDEN = (1 + 5 ** 0.5) / 2


def write_job(tmp_path, payload, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def run(capsys, argv):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestEntropy:
    def test_full_shift_json(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "word": "11"})
        rc, out, _ = run(capsys, ["entropy", job, "--json"])
        assert rc == 0
        rec = json.loads(out)
        assert rec["schema_version"] == "1"
        assert rec["command"] == "entropy"
        assert rec["lambda"] == pytest.approx(GOLDEN, abs=1e-9)
        assert rec["ambient_entropy"] == pytest.approx(0.6931471805599453)

    def test_sft_adjacency(self, tmp_path, capsys):
        job = write_job(tmp_path, {
            "system": {"kind": "sft", "adjacency": [[1, 1], [1, 0]]},
            "words": [[[0, 0, 0]]]})
        rc, out, _ = run(capsys, ["entropy", job, "--json"])
        assert rc == 0
        rec = json.loads(out)
        assert rec["lambda"] == pytest.approx(1.0, abs=1e-9)

    def test_sofic_edge_list(self, tmp_path, capsys):
        job = write_job(tmp_path, {
            "system": {"kind": "sofic", "vertices": 2,
                       "edges": [[0, 0, "1"], [0, 1, "0"], [1, 0, "0"]]},
            "word": "11"})
        rc, out, _ = run(capsys, ["entropy", job, "--json"])
        assert rc == 0
        assert json.loads(out)["lambda"] == pytest.approx(1.3247179572447, abs=1e-9)

    def test_dgap(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "dgap", "d": 2},
                                   "word": "11"})
        rc, out, _ = run(capsys, ["entropy", job, "--json"])
        assert json.loads(out)["lambda"] == pytest.approx(1.3247179572447, abs=1e-9)

    def test_gapset_spellings(self, tmp_path, capsys):
        # every accepted way of writing a gap set, pinned by the base entropy
        import math
        for gaps, lam_base in [("naturals", 2.0),
                               ("positives", GOLDEN),
                               ({"multiples": 2}, GOLDEN),
                               ({"pre": [0, 0], "per": [1, 0]},
                                1.3247179572447460),
                               ([0, 2], 1.4655712318767655)]:
            job = write_job(tmp_path, {"system": {"kind": "sgap", "gaps": gaps},
                                       "word": "1"})
            rc, out, _ = run(capsys, ["entropy", job, "--json"])
            assert rc == 0
            rec = json.loads(out)
            assert math.exp(rec["ambient_entropy"]) == pytest.approx(
                lam_base, abs=1e-9)


class TestSeries:
    def test_text_table(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": "naturals"},
                                   "word": "11"})
        rc, out, _ = run(capsys, ["series", job])
        assert rc == 0
        assert "lambda: 1.618033989" in out
        assert "normalization_shift: 0" in out
        rows = [ln.split() for ln in out.splitlines()
                if ln and ln[0].isdigit()]
        counts = [int(r[1]) for r in rows[:6]]
        assert counts == [1, 2, 3, 5, 8, 13]

    def test_json_counts(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "word": "11"})
        rc, out, _ = run(capsys, ["series", job, "--json", "--nmax", "8"])
        rec = json.loads(out)
        assert [r["count"] for r in rec["rows"]][:7] == [1, 2, 3, 5, 8, 13, 21]


class TestDecay:
    def test_gap_family(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": "naturals"},
                                   "family": ["1", "11", "111"]})
        rc, out, _ = run(capsys, ["decay", job, "--json"])
        rec = json.loads(out)
        assert rec["ambient_lambda"] == pytest.approx(2.0)
        assert [r["n"] for r in rec["rows"]] == [1, 2, 3]


class TestConjugacy:
    def test_ternary_pair(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 3},
                                   "u": "120", "w": "110"})
        rc, out, _ = run(capsys, ["conjugacy", job, "--json"])
        rec = json.loads(out)
        assert rec["admissible"] and rec["ok"]
        assert rec["report"]["mode"] == "padded"
        assert rec["report"]["entropy_gap"] == 0.0


class TestStructure:
    def test_reducible_example(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "words": ["10"], "sync_words": ["1"]})
        rc, out, _ = run(capsys, ["structure", job, "--json", "--horizon", "12"])
        rec = json.loads(out)
        assert rec["nonempty"]
        assert rec["irreducible_at_horizon"] is False
        assert rec["synchronizing"]["1"]["passed"] is False


class TestEscape:
    def test_rate_inferred_from_words(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "words": ["11"]})
        rc, out, _ = run(capsys, ["escape", job, "--json"])
        rec = json.loads(out)
        assert rec["mode"] == "rate"
        assert rec["rho"] == pytest.approx(0.2119353555, abs=1e-6)

    def test_local_exact(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "points": [{"pre": "", "per": "0"}]})
        rc, out, _ = run(capsys, ["escape", job, "local", "--json"])
        rec = json.loads(out)
        assert rec["mode"] == "local"
        assert rec["lambda"] == "1/2" and rec["rho"] == "1/2"

    def test_sequence(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "points": [{"pre": "", "per": "0"}],
                                   "n_range": [2, 6]})
        rc, out, _ = run(capsys, ["escape", job, "sequence", "--json"])
        rec = json.loads(out)
        assert len(rec["rows"]) == 5
        assert rec["exact_lambda"] == "1/2"

    def test_mode_rejected_elsewhere(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "word": "11"})
        rc, _, err = run(capsys, ["entropy", job, "rate"])
        assert rc == 1


class TestPresent:
    def test_even_shift(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": {"multiples": 2}},
                                   "word": "11"})
        rc, out, _ = run(capsys, ["present", job, "--json"])
        rec = json.loads(out)
        assert rec["vertices"] == 4 and len(rec["edges"]) == 6


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": "naturals"},
                                   "word": "11"})
        _, out1, _ = run(capsys, ["entropy", job, "--json"])
        _, out2, _ = run(capsys, ["entropy", job, "--json"])
        assert out1 == out2


class TestExitCodes:
    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        rc, _, err = run(capsys, ["entropy", str(p)])
        assert rc == 1 and "JSON" in err

    def test_missing_file(self, tmp_path, capsys):
        rc, _, err = run(capsys, ["entropy", str(tmp_path / "nope.json")])
        assert rc == 1

    def test_unknown_command(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2},
                                   "word": "11"})
        rc, _, _ = run(capsys, ["frobnicate", job])
        assert rc == 1

    def test_missing_field(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "full", "N": 2}})
        rc, _, err = run(capsys, ["entropy", job])
        assert rc == 1

    def test_unsupported_word(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": "naturals"},
                                   "word": "0110"})
        rc, _, err = run(capsys, ["entropy", job])
        assert rc == 2

    def test_inadmissible_value(self, tmp_path, capsys):
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": {"multiples": 2}},
                                   "word": "101"})
        rc, _, _ = run(capsys, ["entropy", job])
        assert rc == 2

    def test_oracle_mismatch(self, tmp_path, capsys, monkeypatch):
        def boom(*a, **k):
            raise OracleMismatchError("forced disagreement")
        monkeypatch.setattr(cli, "sgap_perturb_gf", boom)
        job = write_job(tmp_path, {"system": {"kind": "sgap",
                                              "gaps": "naturals"},
                                   "word": "11"})
        rc, _, err = run(capsys, ["entropy", job])
        assert rc == 3 and "disagreement" in err
