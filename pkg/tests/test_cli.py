import json
import math

import pytest

from hoprisk import JointPmf, load_json, save_json
from hoprisk.cli import main

from tables import SCORE_RULES_JSON, TABLE_GRIDS


@pytest.fixture()
def k5_path(tmp_path, example_net):
    path = tmp_path / "k5.json"
    save_json(example_net, str(path))
    return str(path)


def test_exact_command_values(tmp_path, k5_path):
    out = tmp_path / "pmf.csv"
    assert main(["exact", "--network", k5_path, "-L", "2", "--out", str(out)]) == 0
    pmf = JointPmf.from_csv(str(out))
    assert pmf.probs[1, 1] == pytest.approx(0.117547, abs=1e-6)
    manifest = json.loads((tmp_path / "pmf.csv.manifest.json").read_text())
    assert manifest["command"] == "exact"
    assert manifest["parameters"]["seed"] is None
    assert str(out) in manifest["outputs"]


def test_exact_depth_zero_is_binomial(tmp_path, k5_path):
    out = tmp_path / "pmf0.csv"
    assert main(["exact", "--network", k5_path, "-L", "0", "--out", str(out)]) == 0
    pmf = JointPmf.from_csv(str(out))
    for (x1, x2), prob in pmf.cells():
        expected = (
            math.comb(2, x1) * 0.2**x1 * 0.8 ** (2 - x1)
            * math.comb(3, x2) * 0.2**x2 * 0.8 ** (3 - x2)
        )
        assert prob == pytest.approx(expected, abs=1e-12)


def test_exact_cap_refusal_names_simulate(tmp_path, capsys):
    from hoprisk import complete_network

    big = tmp_path / "big.json"
    save_json(complete_network([30], 0.1, 0.1), str(big))
    out = tmp_path / "pmf.csv"
    rc = main(["exact", "--network", str(big), "-L", "2", "--out", str(out)])
    assert rc != 0
    err = capsys.readouterr().err
    assert "simulate" in err
    assert not out.exists()


def test_simulate_row_counts_and_determinism(tmp_path, k5_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    args = ["simulate", "--network", k5_path, "-L", "3", "-K", "7", "--seed", "5"]
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    lines = out_a.read_text().strip().splitlines()
    assert len(lines) == 1 + 7 * 3
    single = tmp_path / "single.csv"
    assert main(["simulate", "--network", k5_path, "-L", "4", "-K", "1",
                 "--seed", "5", "--out", str(single)]) == 0
    assert len(single.read_text().strip().splitlines()) == 1 + 4


def test_simulate_without_seed_echoes_it(tmp_path, k5_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["simulate", "--network", k5_path, "-L", "1", "-K", "2",
                 "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "seed:" in err
    echoed = int(err.split("seed:")[1].strip().split()[0])
    manifest = json.loads((tmp_path / "s.csv.manifest.json").read_text())
    assert manifest["parameters"]["seed"] == echoed


def test_stats_from_pmf(tmp_path):
    pmf_path = tmp_path / "table.csv"
    JointPmf((3, 4), TABLE_GRIDS[2]).to_csv(str(pmf_path))
    prefix = str(tmp_path / "st")
    assert main(["stats", "--in", str(pmf_path), "--out", prefix]) == 0
    moments = (tmp_path / "st.moments.csv").read_text().strip().splitlines()
    assert moments[0] == "depth,type,mean,sd"
    mean_x1 = float(moments[1].split(",")[2])
    assert mean_x1 == pytest.approx(0.5501, abs=1e-12)
    contour = (tmp_path / "st.contour.csv").read_text().strip().splitlines()
    assert contour[0] == "x1,x2,prob"
    assert len(contour) == 1 + 12


def test_stats_from_constant_samples(tmp_path):
    sample_path = tmp_path / "const.csv"
    rows = ["run,depth,x_1,x_2"]
    for k in range(1, 6):
        rows.append(f"{k},1,1,2")
    sample_path.write_text("\n".join(rows) + "\n")
    prefix = str(tmp_path / "st")
    assert main(["stats", "--in", str(sample_path), "--out", prefix]) == 0
    moments = (tmp_path / "st.moments.csv").read_text().strip().splitlines()
    assert [row.split(",")[3] for row in moments[1:]] == ["0", "0"]
    corr = (tmp_path / "st.correlations.csv").read_text().strip().splitlines()
    assert corr[1].split(",")[2:] == ["undefined", "undefined", "undefined"]


def test_stats_from_comonotone_samples(tmp_path):
    sample_path = tmp_path / "mono.csv"
    rows = ["run,depth,x_1,x_2"]
    for k, v in enumerate((0, 1, 2), start=1):
        rows.append(f"{k},1,{v},{v}")
    sample_path.write_text("\n".join(rows) + "\n")
    prefix = str(tmp_path / "st")
    assert main(["stats", "--in", str(sample_path), "--out", prefix]) == 0
    corr = (tmp_path / "st.correlations.csv").read_text().strip().splitlines()
    assert [float(v) for v in corr[1].split(",")[2:]] == [1.0, 1.0, 1.0]


def test_stats_rejects_unknown_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    assert main(["stats", "--in", str(bad), "--out", str(tmp_path / "st")]) != 0
    assert "neither" in capsys.readouterr().err


def test_score_command(tmp_path):
    pmf_path = tmp_path / "pmf.csv"
    import numpy as np

    probs = np.zeros((6, 3, 2))
    probs[0, 0, 0] = 0.25
    probs[4, 1, 0] = 0.75
    JointPmf((6, 3, 2), probs).to_csv(str(pmf_path))
    rules_path = tmp_path / "rules.json"
    rules_path.write_text(SCORE_RULES_JSON)
    out = tmp_path / "scores.csv"
    assert main(["score", "--pmf", str(pmf_path), "--rules", str(rules_path),
                 "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "score,prob"
    dist = {int(r.split(",")[0]): float(r.split(",")[1]) for r in lines[1:]}
    assert dist == {0: 0.25, 5: 0.75}


def test_generate_command(tmp_path):
    out = tmp_path / "ba.json"
    args = ["generate", "ba", "--nodes", "200", "--attach", "2", "--init", "5",
            "--top-k", "20", "--p", "0.05,0.15", "--q", "0.2,0.3",
            "--seed", "1", "--out", str(out)]
    assert main(args) == 0
    net = load_json(str(out))
    assert net.n_nodes == 200
    assert net.type_sizes == (20, 180)
    assert len(net.edges) == 400
    again = tmp_path / "ba2.json"
    assert main(args[:-1] + [str(again)]) == 0
    assert out.read_bytes() == again.read_bytes()


def test_generate_seed_graph_only(tmp_path):
    out = tmp_path / "seed.json"
    assert main(["generate", "ba", "--nodes", "5", "--attach", "2", "--init", "5",
                 "--seed", "3", "--out", str(out)]) == 0
    net = load_json(str(out))
    assert net.n_nodes == 5
    assert len(net.edges) == 10


def test_order_check_depths(k5_path, capsys):
    assert main(["order-check", "--network", k5_path, "--depths", "1", "2", "3", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert "FAIL" not in out


def test_order_check_identical_depths(k5_path, capsys):
    assert main(["order-check", "--network", k5_path, "--depths", "2", "2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "max violation 0.000e+00" in out


def test_order_check_reversed_reports_violations(k5_path, capsys):
    assert main(["order-check", "--network", k5_path, "--depths", "3", "1"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "survival" in out or "cdf" in out


def test_order_check_scaling(k5_path, tmp_path, capsys):
    report = tmp_path / "report.txt"
    assert main(["order-check", "--network", k5_path, "-L", "2",
                 "--p-scale", "1.5", "--q-scale", "2.0", "--out", str(report)]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert report.read_text() == out
    manifest = json.loads((tmp_path / "report.txt.manifest.json").read_text())
    assert manifest["command"] == "order-check"


def test_order_check_argument_validation(k5_path, capsys):
    assert main(["order-check", "--network", k5_path]) != 0
    assert main(["order-check", "--network", k5_path, "--p-scale", "1.5"]) != 0
    assert main(["order-check", "--network", k5_path, "--depths", "1", "2",
                 "--p-scale", "1.5"]) != 0
    capsys.readouterr()
