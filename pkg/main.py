#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ルートデータ・p-同種写像・一般有限簡約群の計算ツール

使い方の例:
    python main.py cartan classify --type D --rank 4
    python main.py order --type A --rank 1 --sc --q 2^1
    python main.py isogeny check suzuki_c2_m0.json --json
    python main.py verify --skip-slow
"""

import argparse
import json
import sys

import config
import datum_io
from cartan import (
    diagram_automorphisms,
    classify,
    fundamental_group,
    standard_cartan,
    validate_cartan,
    weyl_group_order_of,
)
from errors import Indeterminate, ParseError, RootDatumError
from exact_linalg import QuadMat, QuadNum, to_rows
from generic_group import (
    dual_complete,
    ennola,
    group_order,
    make_complete,
    order_polynomial,
    p_set_contains,
    standard_complete,
    table_check,
    toric_order,
    twist_label,
    type_key,
    weyl_element,
)
from isogeny import (
    classify_isogeny,
    exceptional_catalog,
    induced_sigma,
    is_central,
    is_isomorphism,
    regular_embedding_build,
    regular_embedding_check,
    restriction_matrix_gl_to_sl,
)
from report_handler import run_verification, save_report, summarize
from rootdatum import (
    catalog,
    center_structure,
    direct_product,
    dual_datum,
    enumerate_isogeny_classes,
    isomorphic,
    standard_datum,
    weyl_group,
    x_mod_zr_invariants,
)
from utils import log_error


# ---------------------------------------------------------------------------
# 出力
# ---------------------------------------------------------------------------


def _jsonable(value):
    """JSON に書ける形へ（2^53 以上の整数は文字列）"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= config.JSON_SAFE_INT else value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, float)):
        return value
    return str(value)


def emit(args, title, result):
    """--json なら JSON を、そうでなければ絵文字付きの一覧を標準出力に書く"""
    if args.json:
        print(json.dumps(_jsonable(result), ensure_ascii=False, indent=2, sort_keys=True))
        return
    print(f"✅ {title}")
    print("=" * 50)
    for key, value in result.items():
        if isinstance(value, dict):
            print(f"{key}:")
            for k, v in value.items():
                print(f"  {k}: {v}")
        else:
            print(f"{key}: {value}")
    print("=" * 50)


# ---------------------------------------------------------------------------
# 入力の選択
# ---------------------------------------------------------------------------


def _form(args):
    return "ad" if getattr(args, "ad", False) else "sc"


def _type_key(args):
    if args.rank is not None:
        return f"{args.type}{args.rank}"
    return args.type


def select_datum(args, file_attr="file"):
    path = getattr(args, file_attr, None)
    if path:
        return _read(datum_io.load_datum, path)
    if getattr(args, "catalog", None):
        return catalog(args.catalog)
    if getattr(args, "type", None):
        return standard_datum(_type_key(args), None, _form(args))
    raise ParseError("no root datum given: use a file, --catalog or --type")


def select_complete(args):
    if getattr(args, "file", None):
        return _read(datum_io.load_complete, args.file)
    if getattr(args, "catalog", None):
        D = catalog(args.catalog)
        return make_complete(D, QuadMat.identity(D.rank), D.name)
    if getattr(args, "type", None):
        return standard_complete(_type_key(args), _form(args), args.m)
    raise ParseError("no complete root datum given: use a file, --catalog or --type")


def _read(loader, path):
    try:
        return loader(path)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e


def _save(args, saver, obj):
    if getattr(args, "out", None):
        saver(obj, args.out)
        if not args.json:
            print(f"💾 保存しました: {args.out}")


def _datum_summary(D):
    free, torsion = x_mod_zr_invariants(D)
    return {
        "name": D.label(),
        "rank": D.rank,
        "base_size": D.base_size,
        "types": [t.name for t in D.types],
        "roots": len(D.roots),
        "A": to_rows(D.A),
        "Acheck": to_rows(D.Acheck),
        "x_mod_zr": {"free_rank": free, "torsion": list(torsion)},
    }


def _complete_summary(crd):
    data = crd.to_dict()
    data.pop("datum")
    data["datum"] = crd.datum.label()
    data["twist"] = twist_label(crd)
    try:
        data["type"] = type_key(crd)
    except RootDatumError:
        data["type"] = None
    return data


# ---------------------------------------------------------------------------
# サブコマンド
# ---------------------------------------------------------------------------


def cmd_cartan(args):
    if args.matrix:
        try:
            rows = json.loads(args.matrix)
        except json.JSONDecodeError as e:
            raise ParseError(f"--matrix is not JSON: {e.msg}") from e
        C = validate_cartan(datum_io.decode_matrix(rows, "--matrix"))
    elif args.file:
        data = _read(datum_io.load_json_file, args.file)
        if isinstance(data, dict) and "cartan" in data:
            C = validate_cartan(datum_io.decode_matrix(data["cartan"], "cartan"))
        else:
            C = datum_io.datum_from_dict(data).cartan
    elif args.type:
        C = standard_cartan(_type_key(args))
    else:
        raise ParseError("no Cartan matrix given: use a file, --matrix or --type")

    result = {
        "types": [t.name for t in classify(C)],
        "fundamental_group": fundamental_group(C),
        "diagram_automorphisms": len(diagram_automorphisms(C)),
        "weyl_group_order": weyl_group_order_of(C),
        "cartan": C.rows(),
    }
    emit(args, "Cartan 行列を分類しました", result)
    return 0


def cmd_datum(args):
    action = args.action
    if action in ("product", "iso"):
        data = [_read(datum_io.load_datum, path) for path in args.files]
        data += [catalog(name) for name in args.catalog or []]
        if args.type:
            data.append(standard_datum(_type_key(args), None, _form(args)))
        if len(data) != 2:
            raise ParseError(f"datum {action} needs exactly two root data, got {len(data)}")
        if action == "product":
            D = direct_product(*data)
            _save(args, datum_io.save_datum, D)
            emit(args, "直積を作りました", _datum_summary(D))
            return 0
        witness = isomorphic(data[0], data[1])
        if witness is Indeterminate:
            verdict = "indeterminate"
        else:
            verdict = "isomorphic" if witness else "not-isomorphic"
        result = {"verdict": verdict, "witness": witness.to_dict() if witness else None}
        emit(args, "同型判定", result)
        return 0

    args.file = args.files[0] if args.files else None
    if args.catalog:
        args.catalog = args.catalog[0]
    D = select_datum(args)

    if action == "build":
        _save(args, datum_io.save_datum, D)
        emit(args, "ルートデータを作りました", _datum_summary(D))
    elif action == "dual":
        dual = dual_datum(D)
        _save(args, datum_io.save_datum, dual)
        emit(args, "双対ルートデータを作りました", _datum_summary(dual))
    elif action == "center":
        result = center_structure(D, args.p)
        emit(args, f"中心の構造 (p = {args.p})", result)
    elif action == "classes":
        classes = enumerate_isogeny_classes(D.cartan)
        result = {
            "count": len(classes),
            "lattices": [{"basis": to_rows(lat.basis), "quotient": list(q)} for lat, q in classes],
        }
        emit(args, "同種類を列挙しました", result)
    elif action == "weyl":
        W = weyl_group(D, args.cap)
        emit(args, "Weyl 群", {"order": len(W), "length_profile": W.length_profile()})
    return 0


def cmd_isogeny(args):
    if args.action == "catalog":
        f = exceptional_catalog(args.type, args.m, args.n)
        _save(args, datum_io.save_isogeny, f)
        result = datum_io.isogeny_to_dict(f)
        result["classification"] = classify_isogeny(f).to_dict()
        emit(args, f"例外的同種写像 {args.type} (m = {args.m})", result)
        return 0

    if not args.file:
        raise ParseError("isogeny check needs an isogeny file")
    f = _read(datum_io.load_isogeny, args.file)
    result = f.to_dict()
    if f.is_endo:
        result["classification"] = classify_isogeny(f).to_dict()
        result["sigma"] = [s + 1 for s in induced_sigma(f)]
    else:
        result["classification"] = {"central": is_central(f), "isomorphism": is_isomorphism(f)}
    emit(args, "同種写像を検証しました", result)
    return 0


def cmd_embed(args):
    if args.action == "build":
        D = select_datum(args)
        embedding = regular_embedding_build(D, args.p)
        _save(args, datum_io.save_datum, embedding.datum)
        result = _datum_summary(embedding.datum)
        result["inclusion"] = to_rows(embedding.inclusion)
        result["report"] = embedding.report.to_dict()
        emit(args, f"正則埋め込みを作りました (p = {args.p})", result)
        return 0

    if args.gl:
        gl, sl, P = restriction_matrix_gl_to_sl(args.gl)
        source, target, p = gl, sl, args.p
    elif args.file:
        source, target, P, p = _read(datum_io.load_morphism, args.file)
        p = args.p if args.p != 1 else p
    else:
        raise ParseError("embed check needs --gl N or a morphism file")
    ok, report = regular_embedding_check(source, target, P, p)
    emit(args, "正則埋め込みの検査", report.to_dict())
    return 0 if ok else 1


def cmd_order(args):
    if args.table_check:
        if args.file:
            crd = select_complete(args)
        else:
            crd = standard_complete(_type_key(args), _form(args), args.m)
        report = table_check(crd, args.method, args.cap)
        emit(args, "位数表との照合", report.to_dict())
        return 0 if report.match else 1

    crd = select_complete(args)
    poly = order_polynomial(crd, args.method, args.cap)
    result = {"complete": crd.label(), "poly": poly.poly.to_str(), "source": poly.source}
    if args.factored:
        result["factored"] = poly.factored.to_str()
    if args.q:
        q = QuadNum.parse(args.q)
        result["q"] = q.to_power_string()
        result["in_parameter_set"] = p_set_contains(crd, q)
        result["value"] = group_order(crd, q, args.method, args.cap)
    emit(args, "位数多項式", result)
    return 0


def cmd_ennola(args):
    crd = ennola(select_complete(args))
    _save(args, datum_io.save_complete, crd)
    emit(args, "Ennola 双対", _complete_summary(crd))
    return 0


def cmd_dualc(args):
    crd = dual_complete(select_complete(args))
    _save(args, datum_io.save_complete, crd)
    emit(args, "双対な完全ルートデータ", _complete_summary(crd))
    return 0


def cmd_toric(args):
    crd = select_complete(args)
    w = weyl_element(crd, args.w)
    W = weyl_group(crd.datum, args.cap)
    index = W.find(w)
    word = W.words[index] if index is not None else ()
    result = {
        "word": "".join(str(s + 1) for s in word),
        "length": W.lengths[index] if index is not None else None,
        "toric_order": toric_order(crd, w).to_str(),
    }
    emit(args, "極大トーラスの位数", result)
    return 0


def cmd_verify(args):
    print("🚀 位数表と基本群の一括検証を開始します", file=sys.stderr)

    def progress(row):
        mark = "✅" if row["ok"] else "❌"
        print(f"{mark} {row['check']} {row['type']} ({row.get('seconds', 0)}s)", file=sys.stderr)

    df = run_verification(args.cap, args.skip_slow, progress)
    csv_path, json_path = save_report(df)
    summary = summarize(df)
    failed = int(summary["failed"].sum())
    result = {
        "rows": len(df),
        "failed": failed,
        "csv": csv_path,
        "json": json_path,
        "summary": {row["check"]: f"{int(row['passed'])}/{int(row['total'])}" for _, row in summary.iterrows()},
    }
    emit(args, "一括検証", result)
    if not args.json:
        print("🎉 すべて一致しました" if failed == 0 else f"❌ {failed} 件が一致しませんでした")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# 引数
# ---------------------------------------------------------------------------


def _add_common(parser):
    parser.add_argument("--json", action="store_true", help="JSON で出力する")
    parser.add_argument("--cap", type=int, default=None, help="Weyl 群列挙の上限")


def _add_type_flags(parser, with_m=False):
    parser.add_argument("--type", help="型（A, B, ..., または 2A3, 3D4 などの型名）")
    parser.add_argument("--rank", type=int, default=None)
    form = parser.add_mutually_exclusive_group()
    form.add_argument("--sc", action="store_true", help="単連結型（既定）")
    form.add_argument("--ad", action="store_true", help="随伴型")
    if with_m:
        parser.add_argument("--m", type=int, default=0, help="2B2, 2G2, 2F4 の指数")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rootdatum", description="ルートデータ・p-同種写像・一般有限簡約群の計算"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cartan", help="Cartan 行列の分類と基本群")
    p.add_argument("action", choices=["classify"])
    p.add_argument("file", nargs="?")
    p.add_argument("--matrix", help='JSON の行列 例: "[[2,-1],[-1,2]]"')
    _add_type_flags(p)
    _add_common(p)
    p.set_defaults(handler=cmd_cartan)

    p = sub.add_parser("datum", help="ルートデータの構成と比較")
    p.add_argument("action", choices=["build", "dual", "product", "iso", "center", "classes", "weyl"])
    p.add_argument("files", nargs="*")
    p.add_argument("--catalog", action="append", help="GL(3), SL(3), Spin(8) など（2回まで）")
    p.add_argument("--p", type=int, default=1, help="標数（center 用）")
    p.add_argument("--out")
    _add_type_flags(p)
    _add_common(p)
    p.set_defaults(handler=cmd_datum)

    p = sub.add_parser("isogeny", help="p-同種写像の検証と例外的同種写像")
    p.add_argument("action", choices=["check", "catalog"])
    p.add_argument("file", nargs="?")
    p.add_argument("--type", help="C2, G2, F4, BnCn")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=3, help="BnCn の階数")
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(handler=cmd_isogeny)

    p = sub.add_parser("embed", help="正則埋め込みの検査と構成")
    p.add_argument("action", choices=["check", "build"])
    p.add_argument("file", nargs="?")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--gl", type=int, help="SL(n) ⊂ GL(n) の制限写像を検査する")
    p.add_argument("--catalog")
    p.add_argument("--out")
    _add_type_flags(p)
    _add_common(p)
    p.set_defaults(handler=cmd_embed)

    p = sub.add_parser("order", help="位数多項式と群の位数")
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog")
    p.add_argument("--q", help="p^a/b 形式（例: 2^3, 2^1/2）")
    p.add_argument("--factored", action="store_true")
    method = p.add_mutually_exclusive_group()
    method.add_argument("--bn", dest="method", action="store_const", const="bn")
    method.add_argument("--molien", dest="method", action="store_const", const="molien")
    method.add_argument("--both", dest="method", action="store_const", const="both")
    p.add_argument("--table-check", action="store_true")
    _add_type_flags(p, with_m=True)
    _add_common(p)
    p.set_defaults(handler=cmd_order, method="bn")

    for name, handler, text in (
        ("ennola", cmd_ennola, "Ennola 双対"),
        ("dualc", cmd_dualc, "双対な完全ルートデータ"),
        ("toric", cmd_toric, "極大トーラスの位数"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file", nargs="?")
        p.add_argument("--catalog")
        if name == "toric":
            p.add_argument("--w", default="", help='生成元の語（例: "121"）')
        else:
            p.add_argument("--out")
        _add_type_flags(p, with_m=True)
        _add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", help="位数表と基本群の一括検証")
    p.add_argument("--skip-slow", action="store_true", help="E6, 2E6 を飛ばす")
    _add_common(p)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except RootDatumError as e:
        log_error(args.command, e.message)
        if args.json:
            print(json.dumps(_jsonable(e.to_dict()), ensure_ascii=False, sort_keys=True))
        else:
            print(f"❌ {type(e).__name__}: {e.message}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
