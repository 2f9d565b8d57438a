import json

import pytest

from expander_forge import cli
from expander_forge.cli import main, parity_adjust
from expander_forge.errors import CertificationError
from expander_forge.graph_core import from_text


def test_parity_adjust():
    assert parity_adjust(3, 5) == 5
    assert parity_adjust(3, 4) == 3
    assert parity_adjust(3, 100) == 9
    assert parity_adjust(4, 0) == 0


def test_sample_csv_and_rerun_identical(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["sample", "--chi", "2", "--n", "2", "--trials", "15", "--seed", "5"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "trial,connected,lambda1,sigma1,h,genus"
    assert len([ln for ln in lines if not ln.startswith("#")]) == 16
    assert lines[-1].startswith("# summary connected_fraction=")
    manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    assert str(out1) in manifest["outputs"]


def test_sample_all_connected_unique_shape(tmp_path):
    out = tmp_path / "s.csv"
    assert main(
        ["sample", "--chi", "1", "--n", "3", "--trials", "10", "--seed", "7",
         "--out", str(out)]
    ) == 0
    rows = [ln.split(",") for ln in out.read_text().splitlines()[1:] if ln[0] != "#"]
    assert all(r[1] == "1" for r in rows)
    assert all(abs(float(r[2]) - 1.0) < 1e-9 for r in rows)  # star lambda1


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(
        ["sweep", "--chi-list", "10,20", "--rule", "pow:0.3333",
         "--trials", "200", "--seed", "1", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "chi,n,trials,connected_fraction,ci_low,ci_high,seed"
    assert len(lines) == 3
    chi, n, *_ = lines[1].split(",")
    assert (chi, n) == ("10", "2")  # floor(10^(1/3)) = 2, parity ok


def test_sweep_bad_rule_exit_2(tmp_path):
    code = main(
        ["sweep", "--chi-list", "10", "--rule", "cubic:1",
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2


def test_bounds_outputs(tmp_path):
    from expander_forge.bounds import mu_pair_sum

    base = tmp_path / "b"
    assert main(
        ["bounds", "--chi", "4", "--n", "2", "--mu", "1.5", "--out", str(base)]
    ) == 0
    expected = mu_pair_sum(4, 2, "1.5")
    csv = (tmp_path / "b.csv").read_text().splitlines()
    assert csv[0] == "chi,n,mu,sum_num,sum_den,sum_float"
    assert csv[1].startswith(
        f"4,2,3/2,{expected.numerator},{expected.denominator},"
    )
    js = json.loads((tmp_path / "b.json").read_text())
    assert js["sum"] == str(expected)
    # (0,1,1) is a mu-pair at mu=1.5 and carries the 8/11 hand value
    assert {"a": 0, "b": 1, "s": 1, "x": "1/220", "y": "40", "z": "4",
            "product": "8/11"} in js["pairs"]


def test_bounds_parity_exit_2(tmp_path):
    code = main(
        ["bounds", "--chi", "1", "--n", "2", "--mu", "0.5",
         "--out", str(tmp_path / "x")]
    )
    assert code == 2


def test_construct_family_and_rerun(tmp_path):
    d1 = tmp_path / "f1"
    d2 = tmp_path / "f2"
    for d in (d1, d2):
        assert main(
            ["construct", "--theta", "3", "--g-min", "2", "--g-max", "4",
             "--out", str(d)]
        ) == 0
    assert (d1 / "manifest.csv").read_bytes() == (d2 / "manifest.csv").read_bytes()
    lines = (d1 / "manifest.csv").read_text().splitlines()
    assert lines[0].startswith("g,n,chi,h_lower,lambda1")
    assert len(lines) == 4
    ratios = []
    for ln in lines[1:]:
        g, n, *_ = ln.split(",")
        ratios.append(int(n) / int(g))
    assert ratios == sorted(ratios)  # n(g)/g = 3(g-1)/g increases toward 3
    for g in (2, 3, 4):
        graph = from_text((d1 / f"g{g}.txt").read_text())
        assert graph.num_vertices == graph.chi + graph.n


def test_spectra_cheeger_split_subcommands(tmp_path, capsys):
    d = tmp_path / "fam"
    assert main(
        ["construct", "--theta", "3", "--g-min", "2", "--g-max", "2",
         "--out", str(d)]
    ) == 0
    gf = str(d / "g2.txt")

    assert main(["spectra", gf]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["connected"] and rep["genus"] == 2

    assert main(["cheeger", gf]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["exact"] and cert["h_num"] >= 1

    assert main(["split", gf]) == 0
    split = json.loads(capsys.readouterr().out)
    assert len(split["removed_edges"]) == 3  # genus 2
    assert "balanced_subset" in split


def test_cheeger_guard_exit_3(tmp_path, capsys):
    d = tmp_path / "fam"
    main(["construct", "--theta", "3", "--g-min", "4", "--g-max", "4",
          "--out", str(d)])
    capsys.readouterr()
    code = main(["cheeger", str(d / "g4.txt"), "--guard", "5"])
    assert code == 3


def test_certification_failure_exit_4(tmp_path, monkeypatch):
    def failing(spec, g, base_provider=None):
        raise CertificationError("forced")

    monkeypatch.setattr(cli, "expander_family", failing)
    code = main(
        ["construct", "--theta", "3", "--g-min", "2", "--g-max", "2",
         "--out", str(tmp_path / "x")]
    )
    assert code == 4


def test_sample_parity_exit_2(tmp_path):
    code = main(
        ["sample", "--chi", "1", "--n", "2", "--trials", "5", "--seed", "0",
         "--out", str(tmp_path / "x.csv")]
    )
    assert code == 2
