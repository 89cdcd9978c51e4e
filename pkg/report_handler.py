#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
位数表・基本群の一括検証とレポート出力

各ケースを1行にまとめ、pandas の DataFrame として CSV と JSON に保存する。
"""

import time

import pandas as pd

from cartan import fundamental_group, standard_cartan
from errors import RootDatumError
from generic_group import central_torus_factor, order_polynomial_bn, order_polynomial_molien, standard_complete
from order_tables import (
    FUNDAMENTAL_KEYS,
    SLOW_KEYS,
    VERIFICATION_KEYS,
    expected_fundamental_group,
    self_consistent,
    table_row,
)
from utils import get_output_path, log_error, save_json

REPORT_CSV = "verification_report.csv"
REPORT_JSON = "verification_report.json"


def verify_order_row(key, cap=None):
    """1つの型について bn・Molien・位数表の3つを比べる

    Returns:
        dict: レポートの1行
    """
    start = time.perf_counter()
    row = {"check": "order", "type": key, "bn": "", "molien": "", "expected": "", "ok": False, "message": ""}
    try:
        crd = standard_complete(key)
        expected = table_row(key)
        factor = central_torus_factor(crd)
        bn = order_polynomial_bn(crd, cap).poly.exact_div(factor)
        molien = order_polynomial_molien(crd, cap).poly.exact_div(factor)
        row.update(
            bn=bn.to_str(),
            molien=molien.to_str(),
            expected=expected.to_str(),
            ok=bn == expected and molien == expected,
        )
        if not row["ok"]:
            row["message"] = "mismatch"
    except RootDatumError as e:
        log_error(f"verify {key}", e.message)
        row["message"] = f"{type(e).__name__}: {e.message}"
    row["seconds"] = round(time.perf_counter() - start, 3)
    return row


def verify_table_only(key):
    """列挙しない型（E7, E8）は表の行の形だけを確かめる"""
    ok = self_consistent(key)
    return {
        "check": "table-form",
        "type": key,
        "bn": "",
        "molien": "",
        "expected": table_row(key).to_str(),
        "ok": ok,
        "message": "" if ok else "degree or p-part mismatch",
        "seconds": 0.0,
    }


def verify_fundamental_group(key):
    start = time.perf_counter()
    computed = fundamental_group(standard_cartan(key))
    expected = expected_fundamental_group(key)
    return {
        "check": "fundamental-group",
        "type": key,
        "bn": "",
        "molien": "",
        "expected": str(expected),
        "ok": computed == expected,
        "message": "" if computed == expected else f"computed {computed}",
        "seconds": round(time.perf_counter() - start, 3),
    }


def run_verification(cap=None, skip_slow=False, progress=None):
    """一括検証を実行して DataFrame を返す

    Args:
        cap (int): Weyl 群列挙の上限（None なら設定値）
        skip_slow (bool): E6, 2E6 を飛ばす
        progress: 1行ごとに呼ばれるコールバック（dict を受け取る）
    """
    rows = []
    for key in VERIFICATION_KEYS:
        if skip_slow and key in SLOW_KEYS:
            continue
        rows.append(verify_order_row(key, cap))
        if progress:
            progress(rows[-1])
    for key in ("E7", "E8"):
        rows.append(verify_table_only(key))
        if progress:
            progress(rows[-1])
    for key in FUNDAMENTAL_KEYS:
        rows.append(verify_fundamental_group(key))
        if progress:
            progress(rows[-1])
    return pd.DataFrame(rows)


def save_report(df, csv_name=REPORT_CSV, json_name=REPORT_JSON):
    """CSV と JSON に保存してパスを返す"""
    csv_path = get_output_path(csv_name)
    df.to_csv(csv_path, index=False, encoding="utf-8")
    json_path = save_json(df.to_dict(orient="records"), get_output_path(json_name))
    return csv_path, json_path


def summarize(df):
    """検査の種類ごとの件数と失敗数"""
    summary = df.groupby("check")["ok"].agg(total="count", passed="sum").reset_index()
    summary["failed"] = summary["total"] - summary["passed"]
    return summary
