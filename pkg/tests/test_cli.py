import json
from fractions import Fraction

import pytest

from bgt.cli import bench_structure, generate_instance, main
from bgt.core import parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generators_produce_valid_gardens():
    dyadic = generate_instance("dyadic-random", n=12, seed=5)
    assert sum(dyadic.rates) == 1
    assert all(r.numerator == 1 and r.denominator & (r.denominator - 1) == 0 for r in dyadic.rates)

    uniform = generate_instance("uniform-normalized", n=9, seed=5)
    assert sum(uniform.rates) == 1
    assert uniform.n == 9

    two = generate_instance("two-bamboo(1/64)")
    assert two.rates == (Fraction(63, 64), Fraction(1, 64))

    regular = generate_instance("regular", n=5)
    assert regular.rates == (
        Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 16),
    )

    figure = generate_instance("figure4")
    assert sum(figure.rates) == 1
    assert figure.n == 6


def test_generator_spec_validation():
    with pytest.raises(ValueError):
        generate_instance("no-such-generator")
    with pytest.raises(ValueError):
        generate_instance("two-bamboo(3)")
    with pytest.raises(ValueError):
        generate_instance("dyadic-random")  # needs n


def test_generate_is_deterministic_per_seed(capsys):
    code1, out1, _ = run(capsys, "generate", "--gen", "dyadic-random", "--n", "40", "--seed", "7")
    code2, out2, _ = run(capsys, "generate", "--gen", "dyadic-random", "--n", "40", "--seed", "7")
    code3, out3, _ = run(capsys, "generate", "--gen", "dyadic-random", "--n", "40", "--seed", "8")
    assert code1 == code2 == code3 == 0
    assert out1 == out2
    assert out1 != out3


def test_simulate_emits_exact_json_and_is_reproducible(capsys):
    argv = (
        "simulate", "--gen", "uniform-normalized", "--n", "6", "--seed", "3",
        "--strategy", "reduce-max", "--horizon", "300",
    )
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["horizon"] == 300
    assert doc["bound"] == "9"
    assert parse_rational(doc["observed_makespan"]) <= 9
    assert len(doc["per_bamboo"]) == 6


def test_verify_exit_codes_follow_the_bound(capsys, tmp_path):
    path = tmp_path / "two.json"
    code, _, _ = run(capsys, "generate", "--gen", "two-bamboo(1/4)", "--out", str(path))
    assert code == 0

    code, out, _ = run(
        capsys, "verify", "--instance", str(path), "--strategy", "reduce-max",
        "--horizon", "100",
    )
    assert code == 0
    assert json.loads(out)["bound_ok"] is True

    code, out, _ = run(
        capsys, "verify", "--instance", str(path), "--strategy", "reduce-max",
        "--horizon", "100", "--bound", "1/2",
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["bound_ok"] is False
    assert doc["extras"]["first_violation_day"] == 0
    assert parse_rational(doc["extras"]["first_violation_height"]) == Fraction(3, 4)


def test_verify_with_undersum_garden_reports_no_bound(capsys, tmp_path):
    path = tmp_path / "under.json"
    path.write_text('{"rates": ["1/4", "1/8"]}')
    code, out, err = run(
        capsys, "verify", "--instance", str(path), "--strategy", "reduce-max",
        "--horizon", "64",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["bound"] is None
    assert doc["bound_ok"] is None
    assert "bound_skipped" in doc["extras"]
    assert "no bound to check" in err


def test_usage_and_domain_errors_exit_two(capsys):
    code, _, err = run(capsys, "simulate", "--strategy", "reduce-max")
    assert code == 2
    assert "error:" in err

    code, _, err = run(capsys, "verify", "--gen", "two-bamboo(1/4)", "--strategy", "reduce-fastest")
    assert code == 2  # missing threshold

    code, _, err = run(capsys, "simulate", "--gen", "two-bamboo(nonsense)")
    assert code == 2

    code, _, err = run(capsys, "verify", "--instance", "/nonexistent/garden.json")
    assert code == 2


def test_csv_format_replays_the_trace(capsys):
    code, out, _ = run(
        capsys, "simulate", "--gen", "two-bamboo(1/8)", "--strategy", "makespan2",
        "--horizon", "4", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "day,trimmed_index,height_before_cut,running_makespan"
    assert len(lines) == 5
    assert lines[1].startswith("0,1,7/8")


def test_equiv_reports_agreement(capsys):
    code, out, _ = run(
        capsys, "equiv", "--gen", "uniform-normalized", "--n", "7", "--seed", "2",
        "--x", "3/2", "--horizon", "400",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["rf_first_divergence"] is None
    assert doc["rm_first_divergence"] is None


def test_inspect_dumps_tree_shape(capsys):
    code, out, _ = run(capsys, "inspect", "--gen", "figure4")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 6
    assert doc["phases"] == 2
    assert doc["nodes"] == 9
    assert doc["height"] <= doc["height_bound"]
    assert doc["tree"]["rate"] == "1"


def test_bench_emits_csv_rows_per_size(capsys):
    code, out, _ = run(capsys, "bench", "--structure", "pst", "--sizes", "64,256")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "structure,n,ops,mean_work"
    assert len(lines) == 3
    assert lines[1].startswith("pst,64,")


def test_bench_structure_means_are_deterministic():
    a = bench_structure("m2", [128], seed=1)
    b = bench_structure("m2", [128], seed=1)
    assert a == b
    assert a[0]["mean_work"] <= 128 .bit_length()
