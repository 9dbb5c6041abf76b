import csv
import io
import json
import subprocess
import sys

import pytest

from couponmax.cli import render_table, run
from couponmax.maxprob import ArgmaxRow
from couponmax.zeta import zeta_integer

TABLE2 = ["1.2551974569", "2.3968434292", "6.6890298606", "25.453101487", "123.70507001"]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table2_csv():
    code, out, _ = invoke("table2", "--kmax", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "k,via_series,via_hurwitz,via_bernoulli,max_rel_disagreement"
    rows = read_csv(out)
    assert len(rows) == 5
    for row, printed in zip(rows, TABLE2):
        digits = len(printed.replace(".", ""))
        for col in ("via_series", "via_hurwitz", "via_bernoulli"):
            assert f"{float(row[col]):.{digits}g}" == printed


def test_table1_csv():
    code, out, _ = invoke("table1", "--rows", "1,2,3,4,5,10,50,100", "--format", "csv")
    assert code == 0
    rows = read_csv(out)
    assert [int(r["m"]) for r in rows] == [1, 2, 3, 4, 5, 10, 50, 100]
    assert f"{float(rows[0]['exact']):.3g}" == "0.516"
    assert f"{float(rows[-1]['hr_integral']):.3g}" == "3.27e-10"


def test_zeta_special_half():
    code, out, _ = invoke("zeta", "special", "--m", "1", "--a", "1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"][0]["value"] == pytest.approx(7 * zeta_integer(3), rel=1e-15)


def test_zeta_special_rejects_bad_point():
    code, _, err = invoke("zeta", "special", "--m", "1", "--a", "1/5")
    assert code == 2
    assert err


def test_moments_methods():
    code, out, _ = invoke("moments", "--k", "3", "--method", "bernoulli", "--format", "csv")
    assert code == 0
    assert float(read_csv(out)[0]["value"]) == pytest.approx(6.6890298606, rel=1e-10)
    code, out, _ = invoke("moments", "--k", "2")
    assert code == 0
    assert json.loads(out)["results"][0]["max_rel_disagreement"] < 1e-12


def test_partition_and_finite():
    code, out, _ = invoke("partition", "--m", "100")
    assert code == 0
    assert json.loads(out)["results"][0]["p"] == 190569292
    code, out, _ = invoke("finite", "max-moment", "--n", "2", "--k", "1")
    assert json.loads(out)["results"][0]["value"] == pytest.approx(7 / 6, rel=1e-12)
    code, out, _ = invoke("finite", "argmax", "--model", "discrete", "--n", "2", "--m", "1")
    assert json.loads(out)["results"][0]["value"] == pytest.approx(0.5, abs=1e-11)


def test_maxprob_columns():
    code, out, _ = invoke("maxprob", "--m", "10", "--columns", "exact,asymptotic", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "m,exact,asymptotic"


def test_simulate_byte_identical():
    argv = ("simulate", "--model", "discrete", "--n", "20", "--trials", "2000", "--seed", "17")
    runs = [invoke(*argv) for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0
    doc = json.loads(runs[0][1])
    assert doc["meta"]["seed"] == 17
    assert "wall_time" not in doc["meta"]


def test_simulate_compare():
    code, out, _ = invoke("simulate", "--model", "continuous", "--n", "10", "--trials", "5000", "--seed", "1",
                          "--compare", "--format", "csv")
    assert code == 0
    rows = read_csv(out)
    assert any(r["z"] for r in rows)


def test_csv_round_trip():
    code, out, _ = invoke("table2", "--kmax", "3", "--format", "csv")
    for row in read_csv(out):
        for col in ("via_series", "via_hurwitz", "via_bernoulli", "max_rel_disagreement"):
            x = float(row[col])
            assert float(f"{x:.17g}") == x
            assert row[col] == f"{x:.17g}"


def test_render_table_edge_cases():
    assert render_table([], "csv", columns=["m", "exact"]) == "m,exact\n"
    row = ArgmaxRow(1, 0.5, 0.3, 0.55)
    doc = json.loads(render_table([row.__dict__], "json"))
    assert len(doc["results"]) == 1


def test_exit_codes():
    assert invoke("moments", "--k", "99")[0] == 2
    assert invoke("nonsense")[0] == 2
    assert invoke("table2", "--kmax", "2", "--rel-tol", "0.5")[0] == 2
    code, out, err = invoke("zeta", "eval", "--s", "-9.5", "--a", "1")
    assert code == 3
    meta = json.loads(out)["meta"]
    assert meta["partial"] is True
    assert meta["error_estimate"] > 0
    assert "convergence" in err


def test_timing_flag():
    code, out, _ = invoke("table2", "--kmax", "1", "--timing")
    assert code == 0
    assert json.loads(out)["meta"]["wall_time"] >= 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "couponmax", "partition", "--m", "5", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("m,")
