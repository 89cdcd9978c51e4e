#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
コマンドラインのテスト（main.main に引数を渡して標準出力と終了コードを確かめる）
"""

import json

import pandas as pd
import pytest

import main
from report_handler import verify_fundamental_group, verify_order_row


@pytest.fixture(autouse=True)
def work_dir(tmp_path, monkeypatch):
    # logs/ と data/output/ を一時ディレクトリに作らせる
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run_json(capsys, *argv):
    code = main.main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_order_of_sl2_at_two(capsys):
    code = main.main(["order", "--type", "A", "--rank", "1", "--sc", "--q", "2^1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "✅" in out
    assert "value: 6" in out


def test_order_json(capsys):
    code, data = run_json(capsys, "order", "--type", "2B2", "--q", "2^1/2", "--factored")
    assert code == 0
    assert data["value"] == 20
    assert data["in_parameter_set"] is True
    assert data["source"] == "bn"


def test_order_both_methods(capsys):
    code, data = run_json(capsys, "order", "--catalog", "GL(2)", "--both")
    assert code == 0
    assert data["source"] == "both"


def test_q_outside_the_parameter_set(capsys):
    code = main.main(["order", "--type", "2B2", "--q", "2"])
    assert code == 1
    assert "QNotInP" in capsys.readouterr().out


def test_table_check(capsys):
    code, data = run_json(capsys, "order", "--type", "3D4", "--table-check")
    assert code == 0
    assert data["match"] is True


def test_cartan_classify(capsys):
    code, data = run_json(capsys, "cartan", "classify", "--type", "D", "--rank", "4")
    assert code == 0
    assert data["types"] == ["D4"]
    assert data["fundamental_group"] == [2, 2]
    assert data["diagram_automorphisms"] == 6


def test_cartan_from_matrix(capsys):
    code, data = run_json(capsys, "cartan", "classify", "--matrix", "[[2,-1],[-3,2]]")
    assert code == 0
    assert data["types"] == ["G2"]


def test_invalid_cartan_exits_with_one(capsys):
    code = main.main(["cartan", "classify", "--matrix", "[[2,-2],[-2,2]]"])
    assert code == 1
    assert "NotCartan" in capsys.readouterr().out


def test_bad_matrix_json_is_a_parse_error(capsys):
    assert main.main(["cartan", "classify", "--matrix", "[[2,"]) == 2


def test_non_integer_matrix_is_a_parse_error(capsys):
    assert main.main(["cartan", "classify", "--matrix", "[[2,-1.5],[-1,2]]"]) == 2
    assert "--matrix" in capsys.readouterr().out
    assert main.main(["cartan", "classify", "--matrix", "[[2,-1],[-1]]"]) == 2


def test_isogeny_catalog_then_check(capsys, work_dir):
    path = str(work_dir / "suzuki_c2_m0.json")
    assert main.main(["isogeny", "catalog", "--type", "C2", "--m", "0", "--out", path, "--json"]) == 0
    capsys.readouterr()
    code, data = run_json(capsys, "isogeny", "check", path)
    assert code == 0
    assert data["classification"]["q"] == "2^1/2"
    assert data["classification"]["twist"] == "very-twisted"
    assert data["classification"]["steinberg"] == [2, 1]
    assert data["sigma"] == [2, 1]


def test_missing_file_exits_with_two(capsys):
    code = main.main(["datum", "build", "does_not_exist.json"])
    assert code == 2
    assert "❌" in capsys.readouterr().out


def test_cap_exceeded_exits_with_three(capsys):
    code, data = run_json(capsys, "datum", "weyl", "--type", "E", "--rank", "6", "--cap", "100")
    assert code == 3
    assert data["size"] == 51840
    assert data["cap"] == 100


def test_datum_iso(capsys):
    code, data = run_json(capsys, "datum", "iso", "--type", "G", "--rank", "2", "--catalog", "GL(2)")
    assert code == 0
    assert data["verdict"] == "not-isomorphic"


def test_datum_dual_and_product(capsys, work_dir):
    path = str(work_dir / "so7.json")
    assert main.main(["datum", "build", "--catalog", "SO(7)", "--out", path]) == 0
    capsys.readouterr()
    code, data = run_json(capsys, "datum", "dual", path)
    assert code == 0
    assert data["types"] == ["C3"]
    code, data = run_json(capsys, "datum", "product", path, "--catalog", "GL(1)")
    assert code == 0
    assert data["rank"] == 4


def test_datum_center_and_classes(capsys):
    code, data = run_json(capsys, "datum", "center", "--type", "A", "--rank", "2", "--p", "3")
    assert code == 0 and data["connected"] is True
    code, data = run_json(capsys, "datum", "classes", "--type", "D", "--rank", "4")
    assert code == 0 and data["count"] == 5


def test_embed(capsys):
    code, data = run_json(capsys, "embed", "check", "--gl", "3", "--p", "2")
    assert code == 0 and data["regular_embedding"] is True
    code, data = run_json(capsys, "embed", "build", "--catalog", "SL(2)", "--p", "3")
    assert code == 0 and data["x_mod_zr"] == {"free_rank": 1, "torsion": []}


def test_embed_check_failure(capsys, work_dir):
    path = work_dir / "id_sl2.json"
    path.write_text(
        json.dumps({"p": 3, "source": {"catalog": "SL(2)"}, "target": {"catalog": "SL(2)"}, "P": [[1]]}),
        encoding="utf-8",
    )
    code, data = run_json(capsys, "embed", "check", str(path))
    assert code == 1
    assert data["no_p_prime_torsion"] is False


def test_ennola_writes_a_complete_file(capsys, work_dir):
    path = str(work_dir / "gu3.json")
    assert main.main(["ennola", "--catalog", "GL(3)", "--out", path]) == 0
    capsys.readouterr()
    code, data = run_json(capsys, "order", path, "--table-check")
    assert code == 0
    assert data["type"] == "2A2"


def test_dualc(capsys):
    code, data = run_json(capsys, "dualc", "--type", "2B2")
    assert code == 0
    assert data["type"] == "2B2"
    assert data["case"] == "II(2)"


def test_toric(capsys):
    code, data = run_json(capsys, "toric", "--type", "A", "--rank", "2", "--w", "12")
    assert code == 0
    assert data["word"] == "12"
    assert data["length"] == 2


def test_verify_writes_reports(capsys, monkeypatch, work_dir):
    def small_run(cap=None, skip_slow=False, progress=None):
        rows = [verify_order_row("A1"), verify_fundamental_group("D4")]
        for row in rows:
            progress(row)
        return pd.DataFrame(rows)

    monkeypatch.setattr(main, "run_verification", small_run)
    code, data = run_json(capsys, "verify", "--skip-slow")
    assert code == 0
    assert data["rows"] == 2 and data["failed"] == 0
    assert (work_dir / "data" / "output" / "verification_report.csv").exists()
