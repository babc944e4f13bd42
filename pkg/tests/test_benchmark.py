import importlib.util
from pathlib import Path

SCRIPT = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs(capsys):
    spec = importlib.util.spec_from_file_location("bench_kernels", SCRIPT)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    bench.main(["--sizes", "50", "--repeat", "1"])
    rows = capsys.readouterr().out.splitlines()
    assert rows[-2].startswith("ellipj") and rows[-1].startswith("carlson_rj")
    for row in rows[-2:]:
        if len(row.split()) == 6:
            assert float(row.split()[-1]) < 1e-10
