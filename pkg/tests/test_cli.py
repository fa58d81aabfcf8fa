import json

from runsort.cli import main

from conftest import FIG1_LEX_ROWS, FIG4_ROWS as FIG4_ROWS_RAW


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sort_fig1(fig1_csv, capsys):
    code, out, _ = run_cli(capsys, "sort", "--input", str(fig1_csv))
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["total_runs"] == 16
    assert payload["column_permutation"] == [0, 1]


def test_sort_writes_table(fig1_csv, tmp_path, capsys):
    out_path = tmp_path / "sorted.csv"
    code, out, _ = run_cli(capsys, "sort", "--input", str(fig1_csv),
                           "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines == [f"{a},{b}" for a, b in FIG1_LEX_ROWS]


def test_sort_adversarial_increasing(tmp_path, capsys):
    rows = [f"v{i:02d},{i % 2},{i % 2}" for i in range(20)]
    path = tmp_path / "adv.csv"
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = run_cli(capsys, "sort", "--input", str(path),
                           "--col-order", "increasing_cardinality")
    assert code == 0
    payload = json.loads(out)
    assert payload["total_runs"] == 20 + 2 * 2
    assert payload["column_permutation"][-1] == 0


def test_bound_fig1(fig1_csv, capsys):
    code, out, _ = run_cli(capsys, "bound", "--input", str(fig1_csv))
    assert code == 0
    payload = json.loads(out)
    assert payload["mu_exact"] == "17/11"
    assert payload["lower_bound"] == 11
    assert payload["upper_bound"] == 17


def test_bound_single_column(tmp_path, capsys):
    path = tmp_path / "one.csv"
    path.write_text("a\nb\nc\n")
    code, out, _ = run_cli(capsys, "bound", "--input", str(path))
    assert code == 0
    assert json.loads(out)["mu"] == 1.0


def test_model_complete_gray(capsys):
    code, out, _ = run_cli(capsys, "model", "--cards", "3,2,2", "--p", "1.0",
                           "--family", "reflected_gray")
    assert code == 0
    payload = json.loads(out)
    order = payload["orders"][0]
    assert order["expected_runs"] == [3.0, 4.0, 7.0]
    assert order["exact"] is True


def test_model_all_orders_prefers_increasing(capsys):
    code, out, _ = run_cli(capsys, "model", "--cards", "20,100", "--p", "0.01",
                           "--all-orders")
    assert code == 0
    payload = json.loads(out)
    totals = {tuple(o["permutation"]): o["expected_total_runs"]
              for o in payload["orders"]}
    assert totals[(0, 1)] < totals[(1, 0)]


def test_model_lemma_check(capsys):
    code, out, _ = run_cli(capsys, "model", "--check-lemmas", "--family", "both",
                           "--n-max", "3", "--grid-points", "49")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_hold"] is True
    assert len(payload["checks"]) == 2  # one pair, two families


def test_model_sweep_tsv(capsys):
    code, out, _ = run_cli(capsys, "model", "--sweep", "2,3", "--grid-points", "9",
                           "--family", "lexicographic", "--format", "tsv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p\tN2\tN3\tlhs\trhs\tgap"
    assert len(lines) == 10


def test_oracle_fig1(fig1_csv, capsys):
    code, out, _ = run_cli(capsys, "oracle", "--input", str(fig1_csv))
    assert code == 0
    payload = json.loads(out)
    assert payload["optimal_runs"] == 14
    assert payload["heuristic_runs"] == 16
    assert payload["heuristic_ratio"] == "16/14"


def test_oracle_single_row(tmp_path, capsys):
    path = tmp_path / "single.csv"
    path.write_text("x,y,z\n")
    code, out, _ = run_cli(capsys, "oracle", "--input", str(path))
    assert code == 0
    assert json.loads(out)["optimal_runs"] == 3


def test_gen_then_sort_round_trip(tmp_path, capsys):
    gen_path = tmp_path / "synth.csv"
    code, _, _ = run_cli(capsys, "gen", "--cards", "4,3", "--p", "0.7",
                         "--seed", "5", "--out", str(gen_path))
    assert code == 0
    code, out, _ = run_cli(capsys, "sort", "--input", str(gen_path),
                           "--family", "reflected_gray")
    assert code == 0
    assert json.loads(out)["n_rows"] >= 1


def test_experiment_deterministic(capsys):
    args = ("experiment", "--cards", "3,4", "--p", "0.5", "--trials", "4",
            "--seed", "9", "--methods", "shuffled,lexicographic,reflected_gray")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith("method\tmean_runs\tstd_runs\ttrials\n")


def test_experiment_complete_zero_variance(capsys):
    code, out, _ = run_cli(capsys, "experiment", "--cards", "3,2,2", "--p", "1.0",
                           "--trials", "3", "--methods", "lexicographic")
    assert code == 0
    line = out.strip().split("\n")[1].split("\t")
    assert float(line[1]) == 21.0
    assert float(line[2]) == 0.0


def test_sort_synthetic_input(capsys):
    code, out, _ = run_cli(capsys, "sort", "--cards", "4,3", "--p", "0.5",
                           "--seed", "3", "--family", "modular_gray")
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "modular_gray"
    assert payload["n_rows"] >= 1


def test_oracle_column_search(fig4_table, tmp_path, capsys):
    path = tmp_path / "fig4.csv"
    path.write_text("\n".join(",".join(r) for r in FIG4_ROWS_RAW) + "\n")
    code, out, _ = run_cli(capsys, "oracle", "--input", str(path), "--column-search")
    assert code == 0
    payload = json.loads(out)
    assert payload["optimal_runs"] == 14
    search = payload["column_search"]
    assert all(v >= 15 for v in search["per_perm"].values())


def test_oracle_mu_sweep(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--mu-sweep", "--cards", "5,4,3",
                           "--p", "0.4", "--seed", "2", "--ks", "1,2,3",
                           "--trials", "20")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k\tmean_mu\ttrials"
    assert len(lines) == 4
    assert float(lines[1].split("\t")[1]) == 1.0


def test_oracle_fuzz_reports_frequency(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--fuzz", "5", "--cards", "3,3",
                           "--p", "0.4", "--seed", "12", "--limit", "9",
                           "--budget", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["tables_checked"] >= 1
    assert 0.0 <= payload["frequency"] <= 1.0


def test_usage_error_exit_1(capsys):
    code, _, err = run_cli(capsys, "sort", "--no-such-flag")
    assert code == 1
    code, _, err = run_cli(capsys, "sort")  # no input at all
    assert code == 1


def test_data_error_exit_2(tmp_path, capsys):
    path = tmp_path / "ragged.csv"
    path.write_text("a,b,c\na,b\n")
    code, _, err = run_cli(capsys, "sort", "--input", str(path))
    assert code == 2
    assert "line 2" in err
    code, _, _ = run_cli(capsys, "sort", "--input", str(tmp_path / "missing.csv"))
    assert code == 2


def test_budget_error_exit_3(capsys):
    code, _, err = run_cli(capsys, "oracle", "--cards", "10,10,10,10,10,10,10,10,10,10",
                           "--p", "1e-7", "--seed", "1")
    assert code == 3
    assert "budget" in err


def test_hilbert_column_policy_exempt(fig1_csv, capsys):
    code, out, err = run_cli(capsys, "sort", "--input", str(fig1_csv),
                             "--family", "hilbert",
                             "--col-order", "decreasing_cardinality")
    assert code == 0
    assert json.loads(out)["column_permutation"] == [0, 1]
    assert "hilbert" in err
    code, out, _ = run_cli(capsys, "sort", "--input", str(fig1_csv),
                           "--family", "hilbert",
                           "--col-order", "explicit", "--perm", "1,0",
                           "--force-hilbert-perm")
    assert code == 0
    assert json.loads(out)["column_permutation"] == [1, 0]
