"""Python smoke tests for the compiled extension and the CLI binaries."""

import math
import os
import subprocess
import tempfile

import pytest

import ducba


def tiny_dataset():
    # {A=v0,c1} x2, {A=v0,c0}, {A=v1,c0}
    return ducba.make_dataset(
        attr_names=["A"],
        domains=[["v0", "v1"]],
        rows=[[0], [0], [0], [1]],
        labels=[1, 1, 0, 0],
        class_domain=["c0", "c1"],
    )


def test_chi_square_textbook_value():
    stat, dof, p = ducba.chi_square([[10, 20], [30, 40]])
    assert abs(stat - 0.79365) < 1e-4
    assert dof == 1
    assert 0.3 < p < 0.5


def test_rr_channel_probabilities():
    ch = ducba.RRChannel(math.log(2.0), 3)
    assert abs(ch.keep_prob - 0.5) < 1e-12
    assert abs(ch.flip_prob - 0.25) < 1e-12
    with pytest.raises(Exception):
        ducba.RRChannel(0.0, 3)


def test_mining_on_the_tiny_dataset():
    rules = ducba.mine_cars(tiny_dataset(), min_support=0.25, min_confidence=0.5)
    as_tuples = {(tuple(r.antecedent), r.label) for r in rules}
    assert (((0, 0),), 1) in as_tuples  # A=v0 -> c1, conf 2/3
    assert (((0, 1),), 0) in as_tuples  # A=v1 -> c0, conf 1
    assert (((0, 0),), 0) not in as_tuples  # conf 1/3 under threshold


def test_classifier_and_merge_round_trip():
    ds = tiny_dataset()
    rules = ducba.mine_cars(ds, min_support=0.25, min_confidence=0.5)
    model = ducba.build_classifier(rules, ds, prune=True)
    label, score = ducba.classify(model, [0])
    assert label == 1
    assert 0.6 < score < 0.7

    wire = ducba.to_wire(model, ds, 4)
    client = ducba.bind_wire(wire, ds, client_id=0)
    merged = ducba.merge([client])
    assert len(merged.model.rules) == len(model.rules)
    assert merged.total_train_count == 4


def test_perturbation_determinism_and_rates():
    csv = ducba.synthesize_csv(positives=600, negatives=500, seed=3)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t.csv")
        with open(path, "w") as f:
            f.write(csv)
        ds, dropped = ducba.load_csv(path)
    assert dropped == 0
    ds = ducba.discretize(ducba.derive_thalach_ratio(ds), bins=4)
    a = ducba.perturb_dataset(ds, epsilon=1.0, seed=11)
    b = ducba.perturb_dataset(ds, epsilon=1.0, seed=11)
    assert [a.record(i) for i in range(20)] == [b.record(i) for i in range(20)]
    # labels stay untouched by default
    assert [a.label(i) for i in range(50)] == [ds.label(i) for i in range(50)]


def test_end_to_end_run_from_config():
    with tempfile.TemporaryDirectory() as tmp:
        data = os.path.join(tmp, "data.csv")
        ducba.write_synthetic_csv(data, positives=1400, negatives=1100, seed=99)
        cfg = ducba.parse_config(
            f"data.path = {data}\nout.dir = {tmp}/out\nsplit.seed = 17\n"
        )
        run = ducba.run_single(cfg, persist=False)
        assert run["accuracy"] > 0.85
        assert run["confusion"]["tp"] > 0
        noisy = ducba.run_single(cfg, epsilon=0.1, persist=False)
        assert noisy["accuracy"] < run["accuracy"]


def test_roc_auc_matches_hand_example():
    points, auc = ducba.roc_auc([(True, 0.9), (True, 0.4), (False, 0.3)])
    assert auc == 1.0
    assert points[0] == (0.0, 0.0) and points[-1] == (1.0, 1.0)


def test_cli_binaries_run():
    cli = os.environ.get("DUCBA_CLI")
    make_data = os.environ.get("DUCBA_MAKE_DATA")
    if not cli or not make_data:
        pytest.skip("CLI paths not provided")
    with tempfile.TemporaryDirectory() as tmp:
        data = os.path.join(tmp, "d.csv")
        subprocess.run(
            [make_data, "-o", data, "--positives", "1400", "--negatives", "1100"],
            check=True,
            capture_output=True,
        )
        out = subprocess.run(
            [cli, "inspect", "--data", data], check=True, capture_output=True, text=True
        )
        assert "records" in out.stdout
        assert "imbalance ratio" in out.stdout

        cfg = os.path.join(tmp, "cfg.conf")
        with open(cfg, "w") as f:
            f.write(f"data.path = {data}\nout.dir = {tmp}/out\n")
        run = subprocess.run(
            [cli, "run", "-c", cfg, "--epsilon", "1"], check=True, capture_output=True,
            text=True,
        )
        assert "accuracy" in run.stdout
        assert os.path.exists(os.path.join(tmp, "out", "eps_1", "merged.rules"))

        show = subprocess.run(
            [cli, "show-model", os.path.join(tmp, "out", "eps_1", "merged.rules")],
            check=True, capture_output=True, text=True,
        )
        assert "default" in show.stdout

        usage = subprocess.run([cli, "run"], capture_output=True, text=True)
        assert usage.returncode == 1


def test_cli_override_equals_config_edit():
    cli = os.environ.get("DUCBA_CLI")
    make_data = os.environ.get("DUCBA_MAKE_DATA")
    if not cli or not make_data:
        pytest.skip("CLI paths not provided")
    with tempfile.TemporaryDirectory() as tmp:
        data = os.path.join(tmp, "d.csv")
        subprocess.run(
            [make_data, "-o", data, "--positives", "1400", "--negatives", "1100"],
            check=True, capture_output=True,
        )

        cfg_a = os.path.join(tmp, "a.conf")
        with open(cfg_a, "w") as f:
            f.write(f"data.path = {data}\nout.dir = {tmp}/out_a\nrr.epsilon = 1\n")
        cfg_b = os.path.join(tmp, "b.conf")
        with open(cfg_b, "w") as f:
            f.write(f"data.path = {data}\nout.dir = {tmp}/out_b\n")

        subprocess.run([cli, "run", "-c", cfg_a], check=True, capture_output=True)
        subprocess.run(
            [cli, "run", "-c", cfg_b, "--override", "rr.epsilon=1"],
            check=True, capture_output=True,
        )
        with open(os.path.join(tmp, "out_a", "eps_1", "report.json"), "rb") as f:
            a = f.read()
        with open(os.path.join(tmp, "out_b", "eps_1", "report.json"), "rb") as f:
            b = f.read()
        assert a == b


def test_cli_sweep_writes_long_format_csv():
    cli = os.environ.get("DUCBA_CLI")
    make_data = os.environ.get("DUCBA_MAKE_DATA")
    if not cli or not make_data:
        pytest.skip("CLI paths not provided")
    with tempfile.TemporaryDirectory() as tmp:
        data = os.path.join(tmp, "d.csv")
        subprocess.run(
            [make_data, "-o", data, "--positives", "1400", "--negatives", "1100"],
            check=True, capture_output=True,
        )
        cfg = os.path.join(tmp, "cfg.conf")
        with open(cfg, "w") as f:
            f.write(f"data.path = {data}\nout.dir = {tmp}/out\n")
        out = subprocess.run(
            [cli, "sweep", "-c", cfg, "--sweep-grid", "0.5,2"],
            check=True, capture_output=True, text=True,
        )
        assert "baseline accuracy" in out.stdout
        with open(os.path.join(tmp, "out", "sweep.csv")) as f:
            lines = f.read().splitlines()
        assert lines[0] == "epsilon,metric,class,value"
        groups = {line.split(",")[0] for line in lines[1:]}
        assert groups == {"baseline", "0.5", "2"}
