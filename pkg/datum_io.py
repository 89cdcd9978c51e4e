"""
ルートデータ・同種写像・完全ルートデータの JSON ファイル形式

DatumFile    : {"name", "rank", "base_size", "A", "Acheck"}
IsogenyFile  : {"p", "P", "Pcirc", "source", "target"}（source/target は DatumFile か参照）
CompleteFile : {"name", "datum", "phi0_num", "phi0_sqrt", "phi0_rad", "phi0_den"}

データの参照は {"catalog": "GL(3)"} または {"type": "A3", "form": "sc"} でも書ける。
2^53 以上の整数は10進文字列で書き出し、読み込みでは文字列も受け付ける。
"""

import json
import re

import config
from errors import ParseError, RootDatumError
from exact_linalg import QuadMat, QuadNum, int_mat, to_rows
from generic_group import make_complete
from isogeny import validate_isogeny
from rootdatum import build_datum, catalog, standard_datum
from utils import save_json


def _encode_int(x):
    x = int(x)
    return str(x) if abs(x) >= config.JSON_SAFE_INT else x


def _encode_rows(rows):
    return [[_encode_int(x) for x in row] for row in rows]


def _line_of(text, key):
    """キーが最初に現れる行番号（見つからなければ None）"""
    if text is None:
        return None
    pattern = re.compile(r'"' + re.escape(key) + r'"\s*:')
    for number, line in enumerate(text.splitlines(), 1):
        if pattern.search(line):
            return number
    return None


def _decode_int(value, key, text):
    if isinstance(value, bool):
        raise ParseError(f"{key}: expected an integer, got {value!r}", _line_of(text, key))
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"\s*-?\d+\s*", value):
        return int(value)
    raise ParseError(f"{key}: expected an integer, got {value!r}", _line_of(text, key))


def _decode_rows(value, key, text, cols=None):
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise ParseError(f"{key}: expected a list of integer rows", _line_of(text, key))
    rows = [[_decode_int(x, key, text) for x in row] for row in value]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ParseError(f"{key}: rows have different lengths", _line_of(text, key))
    if cols is not None and rows and widths != {cols}:
        raise ParseError(f"{key}: rows must have length {cols}", _line_of(text, key))
    return rows


def decode_matrix(value, key, text=None):
    """JSON の行のリストを整数行列にする（整数でない成分は ParseError）"""
    return int_mat(_decode_rows(value, key, text))


def _require(data, key, text):
    if key not in data:
        raise ParseError(f"missing key {key!r}", _line_of(text, key))
    return data[key]


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from e


# ---------------------------------------------------------------------------
# DatumFile
# ---------------------------------------------------------------------------


def datum_to_dict(D):
    return {
        "name": D.name,
        "rank": D.rank,
        "base_size": D.base_size,
        "A": _encode_rows(to_rows(D.A)),
        "Acheck": _encode_rows(to_rows(D.Acheck)),
    }


def datum_from_dict(data, text=None, key="datum"):
    """DatumFile の辞書、または catalog / type 参照からルートデータを作る"""
    if not isinstance(data, dict):
        raise ParseError(f"{key}: expected an object", _line_of(text, key))
    try:
        if "catalog" in data:
            return catalog(data["catalog"])
        if "type" in data:
            return standard_datum(data["type"], None, data.get("form", "sc"))
    except RootDatumError as e:
        raise ParseError(f"{key}: {e.message}", _line_of(text, key)) from e

    rank = _decode_int(_require(data, "rank", text), "rank", text)
    base_size = _decode_int(_require(data, "base_size", text), "base_size", text)
    A = _decode_rows(_require(data, "A", text), "A", text, rank)
    Acheck = _decode_rows(_require(data, "Acheck", text), "Acheck", text, rank)
    if len(A) != base_size or len(Acheck) != base_size:
        raise ParseError(f"A and Acheck must have base_size = {base_size} rows", _line_of(text, "A"))
    return build_datum(int_mat(A, cols=rank), int_mat(Acheck, cols=rank), data.get("name"))


def parse_datum(text):
    return datum_from_dict(_loads(text), text)


def load_datum(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_datum(f.read())


def save_datum(D, path):
    return save_json(datum_to_dict(D), path)


# ---------------------------------------------------------------------------
# IsogenyFile
# ---------------------------------------------------------------------------


def isogeny_to_dict(f):
    return {
        "p": f.p,
        "P": _encode_rows(to_rows(f.P)),
        "Pcirc": _encode_rows(to_rows(f.Pcirc)),
        "source": datum_to_dict(f.source),
        "target": datum_to_dict(f.target),
    }


def isogeny_from_dict(data, text=None):
    if not isinstance(data, dict):
        raise ParseError("isogeny file must contain an object", 1)
    p = _decode_int(_require(data, "p", text), "p", text)
    source = datum_from_dict(_require(data, "source", text), text, "source")
    target = datum_from_dict(_require(data, "target", text), text, "target")
    P = _decode_rows(_require(data, "P", text), "P", text, source.rank)
    Pcirc = _decode_rows(_require(data, "Pcirc", text), "Pcirc", text, source.base_size)
    return validate_isogeny(
        source, target, p, int_mat(P, cols=source.rank), int_mat(Pcirc, cols=source.base_size)
    )


def parse_isogeny(text):
    return isogeny_from_dict(_loads(text), text)


def load_isogeny(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_isogeny(f.read())


def save_isogeny(f, path):
    return save_json(isogeny_to_dict(f), path)


# ---------------------------------------------------------------------------
# CompleteFile
# ---------------------------------------------------------------------------


def complete_to_dict(crd):
    """φ₀ = scalar·mat を成分 (num + sqrt·√rad)/den の2つの整数行列で書く"""
    s = crd.phi0.scalar
    rows = to_rows(crd.phi0.mat)
    return {
        "name": crd.name,
        "datum": datum_to_dict(crd.datum),
        "phi0_num": _encode_rows([[s.a * x for x in row] for row in rows]),
        "phi0_sqrt": _encode_rows([[s.b * x for x in row] for row in rows]),
        "phi0_rad": s.p,
        "phi0_den": _encode_int(s.d),
    }


def complete_from_dict(data, text=None):
    if not isinstance(data, dict):
        raise ParseError("complete file must contain an object", 1)
    D = datum_from_dict(_require(data, "datum", text), text, "datum")
    n = D.rank
    num = _decode_rows(_require(data, "phi0_num", text), "phi0_num", text, n)
    rad = _decode_int(data.get("phi0_rad", 0), "phi0_rad", text)
    den = _decode_int(data.get("phi0_den", 1), "phi0_den", text)
    if den <= 0:
        raise ParseError("phi0_den must be positive", _line_of(text, "phi0_den"))
    if "phi0_sqrt" in data:
        sq = _decode_rows(data["phi0_sqrt"], "phi0_sqrt", text, n)
    else:
        sq = [[0] * n for _ in num]
    if len(num) != n or len(sq) != n:
        raise ParseError(f"phi0 must be {n}×{n}", _line_of(text, "phi0_num"))
    if rad == 0 and any(x for row in sq for x in row):
        raise ParseError("phi0_sqrt needs a prime phi0_rad", _line_of(text, "phi0_rad"))
    try:
        grid = [[QuadNum(a, b, rad, den) for a, b in zip(r1, r2)] for r1, r2 in zip(num, sq)]
    except RootDatumError as e:
        raise ParseError(e.message, _line_of(text, "phi0_rad")) from e
    return make_complete(D, QuadMat.from_entries(grid), data.get("name"))


def parse_complete(text):
    return complete_from_dict(_loads(text), text)


def load_complete(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_complete(f.read())


def save_complete(crd, path):
    return save_json(complete_to_dict(crd), path)


# ---------------------------------------------------------------------------
# 根データの準同型（正則埋め込みの検査用）
# ---------------------------------------------------------------------------


def morphism_from_dict(data, text=None):
    """{"p", "P", "source", "target"} を (source, target, P, p) にする（P は target.rank × source.rank）"""
    if not isinstance(data, dict):
        raise ParseError("morphism file must contain an object", 1)
    p = _decode_int(data.get("p", 1), "p", text)
    source = datum_from_dict(_require(data, "source", text), text, "source")
    target = datum_from_dict(_require(data, "target", text), text, "target")
    P = _decode_rows(_require(data, "P", text), "P", text, source.rank)
    if len(P) != target.rank:
        raise ParseError(f"P must have {target.rank} rows", _line_of(text, "P"))
    return source, target, int_mat(P, cols=source.rank), p


def load_morphism(path):
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return morphism_from_dict(_loads(text), text)


def load_json_file(path):
    """行番号付きの ParseError を出す JSON 読み込み"""
    with open(path, "r", encoding="utf-8") as f:
        return _loads(f.read())
