"""
Cartan 行列の検証・Dynkin 図形による分類・標準行列のカタログ・基本群
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import ImmutableMatrix

from errors import BadRank, BadType, NotCartan
from exact_linalg import cokernel_invariants, det, int_mat, smith_normal_form, to_rows

FAMILIES = "ABCDEFG"

# c_st·c_ts → 積 w_s w_t の位数
_BOND_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}

_TYPE_PATTERN = re.compile(r"^\s*(?:([23])\s*)?([A-Ga-g])\s*_?\s*(\d+)\s*$")


@dataclass(frozen=True)
class CartanMatrix:
    entries: ImmutableMatrix
    labels: tuple = None

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(1, self.entries.rows + 1)))

    @property
    def size(self):
        return self.entries.rows

    def c(self, s, t):
        """c_st（0 始まりの添字）"""
        return int(self.entries[s, t])

    def rows(self):
        return to_rows(self.entries)

    def transpose(self):
        return CartanMatrix(self.entries.T, self.labels)

    def to_dict(self):
        return {"labels": list(self.labels), "entries": self.rows()}


@dataclass(frozen=True)
class DynkinEdge:
    s: int
    t: int
    bond: int
    arrow_toward: int = None
    # 積 w_s w_t の位数
    m: int = 3


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: tuple
    edges: tuple = field(default_factory=tuple)

    def neighbors(self, s):
        out = []
        for e in self.edges:
            if e.s == s:
                out.append(e.t)
            elif e.t == s:
                out.append(e.s)
        return sorted(out)

    def components(self):
        seen = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbors(v):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(tuple(sorted(comp)))
        return comps


@dataclass(frozen=True)
class TypeLabel:
    """連結成分の型

    node_map[k] は標準ラベル k+1 の頂点の、元の行列での位置（0 始まり）。
    """

    family: str
    rank: int
    node_map: tuple = None

    @property
    def name(self):
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name

    def to_dict(self):
        return {
            "type": self.name,
            "family": self.family,
            "rank": self.rank,
            "node_map": None if self.node_map is None else list(self.node_map),
        }


# ---------------------------------------------------------------------------
# 標準行列
# ---------------------------------------------------------------------------

_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _check_rank(family, rank):
    if family not in _RANK_BOUNDS:
        raise BadType(f"unknown family {family!r}")
    low, high = _RANK_BOUNDS[family]
    if rank < low or (high is not None and rank > high):
        raise BadRank(f"{family}{rank} is outside the admissible ranks")


def _from_edges(n, edges):
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for s, t in edges:
        rows[s - 1][t - 1] = -1
        rows[t - 1][s - 1] = -1
    return rows


def standard_cartan(label, rank=None):
    """標準ラベル付けでの Cartan 行列

    Args:
        label: TypeLabel、"E6" のような型名、または系列の文字（rank を併用）

    Returns:
        CartanMatrix
    """
    if isinstance(label, TypeLabel):
        family, n = label.family, label.rank
    elif rank is not None:
        family, n = str(label).upper(), int(rank)
    else:
        twist, family, n = parse_type(label)
        if twist != 1:
            raise BadType(f"{label} is a twisted type, not a Cartan type")
    _check_rank(family, n)

    path = [(i, i + 1) for i in range(1, n)]
    if family == "A":
        rows = _from_edges(n, path)
    elif family == "B":
        rows = _from_edges(n, path)
        rows[0][1] = -2
    elif family == "C":
        rows = _from_edges(n, path)
        rows[1][0] = -2
    elif family == "D":
        rows = _from_edges(n, [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)])
    elif family == "E":
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
        rows = _from_edges(n, edges)
    elif family == "F":
        rows = _from_edges(4, path)
        rows[2][1] = -2
    else:
        rows = [[2, -1], [-3, 2]]
    return CartanMatrix(int_mat(rows))


def parse_type(text):
    """"2B2", "A3", "3D4" → (ねじれの位数, 系列, 階数)"""
    match = _TYPE_PATTERN.match(str(text))
    if not match:
        raise BadType(f"cannot parse type {text!r}")
    twist = int(match.group(1) or 1)
    return twist, match.group(2).upper(), int(match.group(3))


def type_name(label, twist=1):
    name = label.name if isinstance(label, TypeLabel) else str(label)
    return name if twist == 1 else f"{twist}{name}"


# ---------------------------------------------------------------------------
# 検証と分類
# ---------------------------------------------------------------------------


def dynkin_diagram(C):
    n = C.size
    edges = []
    for s in range(n):
        for t in range(s + 1, n):
            cst, cts = C.c(s, t), C.c(t, s)
            if cst == 0 and cts == 0:
                continue
            bond = max(abs(cst), abs(cts))
            arrow = None
            if bond > 1:
                arrow = t if abs(cts) >= abs(cst) else s
            edges.append(DynkinEdge(s, t, bond, arrow, _BOND_ORDER.get(cst * cts, 0)))
    return DynkinDiagram(tuple(range(n)), tuple(edges))


def validate_cartan(m):
    """整数行列が有限型の Cartan 行列であることを確かめる

    (C1) のあと、首座小行列式の正値性と Dynkin 図形の照合で有限型を判定する。

    Raises:
        NotCartan: kind="C1" または kind="indefinite"
    """
    m = int_mat(m)
    if m.rows != m.cols:
        raise NotCartan(f"matrix is {m.rows}×{m.cols}, not square", kind="C1")
    n = m.rows
    for s in range(n):
        if m[s, s] != 2:
            raise NotCartan(f"c_{s + 1}{s + 1} = {m[s, s]} ≠ 2", kind="C1")
        for t in range(n):
            if s == t:
                continue
            if m[s, t] > 0:
                raise NotCartan(f"c_{s + 1}{t + 1} = {m[s, t]} > 0", kind="C1")
            if (m[s, t] == 0) != (m[t, s] == 0):
                raise NotCartan(
                    f"c_{s + 1}{t + 1} and c_{t + 1}{s + 1} are not simultaneously zero",
                    kind="C1",
                )

    for k in range(1, n + 1):
        if det(m[:k, :k]) <= 0:
            raise NotCartan(f"leading principal minor of order {k} is not positive", kind="indefinite")

    C = CartanMatrix(m)
    try:
        _classify(C)
    except _NotFinite as exc:
        raise NotCartan(str(exc), kind="indefinite") from exc
    return C


class _NotFinite(Exception):
    pass


def classify(C):
    """連結成分ごとの TypeLabel のリスト

    成分は (系列, 階数, 最小の頂点番号) の順に並べる。B2 は C2、D3 は A3 として返す。
    """
    try:
        return list(_classify(C))
    except _NotFinite as exc:
        raise NotCartan(str(exc), kind="indefinite") from exc


@lru_cache(maxsize=None)
def _classify(C):
    diagram = dynkin_diagram(C)
    labels = [_classify_component(C, diagram, comp) for comp in diagram.components()]
    labels.sort(key=lambda lab: (lab.family, lab.rank, min(lab.node_map)))
    return tuple(labels)


def _walk(diagram, start, previous):
    """start から先の腕（previous の反対側）を端まで辿る"""
    arm = [start]
    prev, cur = previous, start
    while True:
        nxt = [u for u in diagram.neighbors(cur) if u != prev]
        if len(nxt) != 1:
            return arm
        prev, cur = cur, nxt[0]
        arm.append(cur)


def _classify_component(C, diagram, comp):
    k = len(comp)
    nodes = set(comp)
    edges = [e for e in diagram.edges if e.s in nodes]
    if len(edges) != k - 1:
        raise _NotFinite("Dynkin diagram contains a cycle")
    for e in edges:
        if e.m == 0:
            raise _NotFinite(f"bond between nodes {e.s + 1} and {e.t + 1} is too strong")
    if k == 1:
        return _checked(C, TypeLabel("A", 1, (comp[0],)))

    degrees = {v: len(diagram.neighbors(v)) for v in comp}
    multi = [e for e in edges if e.bond > 1]
    branch = [v for v in comp if degrees[v] >= 3]

    if not multi:
        if not branch:
            end = min(v for v in comp if degrees[v] == 1)
            return _checked(C, TypeLabel("A", k, tuple(_walk(diagram, end, None))))
        if len(branch) != 1 or degrees[branch[0]] != 3:
            raise _NotFinite("unsupported branching in Dynkin diagram")
        center = branch[0]
        arms = sorted(
            (_walk(diagram, u, center) for u in diagram.neighbors(center)),
            key=lambda arm: (len(arm), arm[-1]),
        )
        lengths = tuple(len(a) for a in arms)
        if lengths[:2] == (1, 1):
            node_map = (arms[0][0], arms[1][0], center) + tuple(arms[2])
            return _checked(C, TypeLabel("D", k, node_map))
        if lengths in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
            short, first, second = arms
            # ラベル 1,3 の腕: 長さ 2 の腕（E6 では葉の番号が小さい方）
            node_map = (first[1], short[0], first[0], center) + tuple(second)
            return _checked(C, TypeLabel("E", k, node_map))
        raise _NotFinite(f"arm lengths {lengths} do not give a finite type")

    if len(multi) != 1 or branch:
        raise _NotFinite("more than one multiple bond or a branched multiple-bond diagram")
    bond = multi[0]
    s, t = bond.s, bond.t

    if bond.bond == 3:
        if k != 2:
            raise _NotFinite("triple bond outside rank 2")
        v2 = s if C.c(s, t) == -3 else t
        v1 = t if v2 == s else s
        return _checked(C, TypeLabel("G", 2, (v1, v2)))

    if k == 2:
        v2 = s if C.c(s, t) == -2 else t
        v1 = t if v2 == s else s
        return _checked(C, TypeLabel("C", 2, (v1, v2)))

    end = min(v for v in comp if degrees[v] == 1)
    path = _walk(diagram, end, None)
    position = min(path.index(s), path.index(t))
    if position == k - 2:
        path.reverse()
        position = 0
    if position == 0:
        v1, v2 = path[0], path[1]
        family = "B" if C.c(v1, v2) == -2 else "C"
        return _checked(C, TypeLabel(family, k, tuple(path)))
    if k == 4 and position == 1:
        if C.c(path[2], path[1]) != -2:
            path.reverse()
        return _checked(C, TypeLabel("F", 4, tuple(path)))
    raise _NotFinite("double bond in a position that gives no finite type")


def _checked(C, label):
    std = standard_cartan(label)
    nm = label.node_map
    for i in range(label.rank):
        for j in range(label.rank):
            if std.c(i, j) != C.c(nm[i], nm[j]):
                raise _NotFinite(f"component does not match the standard {label.name} matrix")
    return label


# ---------------------------------------------------------------------------
# 基本群・対称性・Weyl 群の位数
# ---------------------------------------------------------------------------


def fundamental_group(C):
    """Ω/ZC の 1 より大きい不変因子"""
    if C.size == 0:
        return []
    return cokernel_invariants(C.entries)[1]


def cartan_isomorphisms(C1, C2):
    """c2[π(s)][π(t)] = c1[s][t] を満たす頂点の全単射 π を列挙する（ジェネレータ）"""
    n = C1.size
    if C2.size != n:
        return
    a, b = C1.rows(), C2.rows()
    signature_a = [sorted(row) for row in a]
    signature_b = [sorted(row) for row in b]
    image = [None] * n
    used = [False] * n

    def extend(s):
        if s == n:
            yield tuple(image)
            return
        for cand in range(n):
            if used[cand] or signature_a[s] != signature_b[cand]:
                continue
            if all(a[s][t] == b[cand][image[t]] and a[t][s] == b[image[t]][cand] for t in range(s)):
                image[s] = cand
                used[cand] = True
                yield from extend(s + 1)
                used[cand] = False
        image[s] = None

    yield from extend(0)


def diagram_automorphisms(C):
    return list(cartan_isomorphisms(C, C))


_EXCEPTIONAL_WEYL_ORDERS = {
    ("G", 2): 12,
    ("F", 4): 1152,
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
}


def weyl_group_order(label):
    family, n = label.family, label.rank
    if (family, n) in _EXCEPTIONAL_WEYL_ORDERS:
        return _EXCEPTIONAL_WEYL_ORDERS[(family, n)]
    if family == "A":
        return math.factorial(n + 1)
    if family in "BC":
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    raise BadType(f"no Weyl group order for {label.name}")


def weyl_group_order_of(C):
    return math.prod(weyl_group_order(lab) for lab in classify(C))


def sc_center_generators(C):
    """単連結型の中心を格子で表す

    C^T v が整数になる v ∈ (Q/Z)^r の生成系を (ベクトル, 位数) のリストで返す。
    """
    if C.size == 0:
        return []
    snf = smith_normal_form(C.entries.T)
    gens = []
    for i, d in enumerate(snf.invariant_factors):
        if d <= 1:
            continue
        column = [Fraction(int(snf.V[j, i]), d) % 1 for j in range(C.size)]
        candidates = [
            tuple((k * x) % 1 for x in column) for k in range(1, d) if math.gcd(k, d) == 1
        ]
        gens.append((min(candidates), d))
    return gens
