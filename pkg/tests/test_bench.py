import csv

import pytest

from stabsim import random_circuit
from stabsim.bench import (
    CSV_HEADER,
    BenchConfig,
    BenchmarkRecord,
    circuit_seed,
    format_summary,
    ladder,
    read_records,
    run_bench,
    summarize,
)


def test_ladder():
    assert ladder() == [8, 16, 32, 64, 128, 256, 512, 1024]
    assert ladder(3, 30, 3) == [3, 9, 27]
    with pytest.raises(ValueError):
        ladder(8, 4)


@pytest.mark.parametrize(
    "kwargs",
    [{"qubits": []}, {"qubits": [4, 2]}, {"qubits": [2, 2]}, {"qubits": [0, 1]}, {"reps": 0}, {"threads": 0}],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        BenchConfig(**kwargs)


def test_single_record(tmp_path):
    out = tmp_path / "b.csv"
    recs = run_bench(BenchConfig(qubits=[1], reps=1, out=out))
    rows = list(csv.reader(out.open()))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 2
    assert recs[0].n == 1 and recs[0].wall_time_ns > 0


def test_rows_and_readback(tmp_path):
    out = tmp_path / "b.csv"
    cfg = BenchConfig(qubits=[2, 4, 8], reps=3, seed=9, include_alloc=True, out=out)
    recs = run_bench(cfg)
    assert len(recs) == 9
    assert [r.n for r in recs] == [2] * 3 + [4] * 3 + [8] * 3
    assert [r.circuit_index for r in recs[:3]] == [0, 1, 2]
    assert read_records(out) == recs
    assert all(r.include_alloc for r in recs)
    assert out.read_text().splitlines()[1].split(",")[5] == "1"


def test_gate_counts_match_regenerated_circuits():
    recs = run_bench(BenchConfig(qubits=[3, 5], reps=4, seed=2))
    for r in recs:
        assert r.seed == circuit_seed(2, r.n, r.circuit_index)
        assert r.gate_count == len(random_circuit(r.n, r.seed))


def test_same_seed_same_circuits():
    a = run_bench(BenchConfig(qubits=[4, 8], reps=3, seed=1))
    b = run_bench(BenchConfig(qubits=[4, 8], reps=3, seed=1, threads=2))
    assert [(r.seed, r.gate_count) for r in a] == [(r.seed, r.gate_count) for r in b]
    assert {r.threads for r in b} == {2}


def test_seed_independent_of_ladder():
    a = run_bench(BenchConfig(qubits=[4], reps=2, seed=5))
    b = run_bench(BenchConfig(qubits=[2, 4], reps=2, seed=5))
    assert [r.seed for r in a] == [r.seed for r in b if r.n == 4]


def test_read_rejects_bad_header(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_records(p)


def test_read_rejects_zero_time(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text(",".join(CSV_HEADER) + "\n4,0,1,10,0,0,1\n")
    with pytest.raises(ValueError):
        read_records(p)


def test_summary():
    recs = [BenchmarkRecord(8, i, 0, 10, t, False, 1) for i, t in enumerate([100, 300])]
    recs += [BenchmarkRecord(16, 0, 0, 40, 800, False, 1)]
    s = summarize(recs)
    assert [x.n for x in s] == [8, 16]
    assert s[0].mean_ns == 200 and s[1].std_ns == 0
    text = format_summary(s)
    assert "4.00" in text.splitlines()[2]
