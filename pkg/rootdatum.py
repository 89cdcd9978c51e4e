"""
ルートデータ C = Ǎ·Aᵀ の構成と操作

ルート・コルートの生成、Weyl 群の列挙、双対と直積、ZC と Ω の間の格子、
中心の格子的記述、同型判定、古典群のカタログ。
"""

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import ImmutableMatrix

import config
from cartan import (
    classify,
    cartan_isomorphisms,
    standard_cartan,
    validate_cartan,
    weyl_group_order_of,
)
from errors import (
    BadParams,
    CapExceeded,
    ClosureBudgetExceeded,
    ConsistencyFailure,
    Indeterminate,
    LatticeNotAboveZC,
    WrongType,
)
from exact_linalg import (
    block_diag,
    cokernel_invariants,
    det,
    identity,
    int_mat,
    is_integral,
    lattice_basis,
    nearest_translate,
    rational_inverse,
    reduce_basis,
    smith_normal_form,
    solve_integer_system,
    to_rows,
)


# ---------------------------------------------------------------------------
# RootDatum
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootDatum:
    """ルートデータ

    A の行が単純ルート α_s、Acheck の行が単純コルート α_s∨（どちらも長さ n の整数ベクトル）。
    roots は正ルートを先に、負ルートを後に並べ、それぞれの中は X の座標の辞書式順。
    """

    A: ImmutableMatrix
    Acheck: ImmutableMatrix
    cartan: object
    roots: tuple
    coroots: tuple
    heights: tuple
    root_words: tuple
    base_indices: tuple
    name: str = None

    @property
    def base_size(self):
        return self.A.rows

    @property
    def rank(self):
        return self.A.cols

    @property
    def positive_count(self):
        return len(self.roots) // 2

    @property
    def is_semisimple(self):
        return self.base_size == self.rank

    @cached_property
    def types(self):
        return classify(self.cartan)

    @cached_property
    def weyl_gens(self):
        """単純鏡映 w_s の X への作用行列 I - a_sᵀ·ǎ_s（列ベクトルに作用）"""
        n = self.rank
        gens = []
        for s in range(self.base_size):
            a = self.A[s, :]
            ac = self.Acheck[s, :]
            gens.append(ImmutableMatrix(identity(n) - a.T * ac))
        return tuple(gens)

    @cached_property
    def coweyl_gens(self):
        """δ(w_s) の Y への作用 I - ǎ_sᵀ·a_s"""
        n = self.rank
        return tuple(
            ImmutableMatrix(identity(n) - self.Acheck[s, :].T * self.A[s, :])
            for s in range(self.base_size)
        )

    @cached_property
    def _root_lookup(self):
        return {v: i for i, v in enumerate(self.roots)}

    @cached_property
    def _coroot_lookup(self):
        return {v: i for i, v in enumerate(self.coroots)}

    @cached_property
    def _ray_lookup(self):
        return {_primitive(v): i for i, v in enumerate(self.roots)}

    @cached_property
    def _coray_lookup(self):
        return {_primitive(v): i for i, v in enumerate(self.coroots)}

    def root_index(self, v):
        return self._root_lookup.get(tuple(int(x) for x in v))

    def coroot_index(self, v):
        return self._coroot_lookup.get(tuple(int(x) for x in v))

    def ray_index(self, v):
        """v と正の比例関係にあるルートの番号（なければ None）"""
        return self._ray_lookup.get(_primitive(v))

    def coray_index(self, v):
        return self._coray_lookup.get(_primitive(v))

    def is_positive(self, i):
        return i < self.positive_count

    def pairing(self, lam, nu):
        return sum(int(x) * int(y) for x, y in zip(lam, nu))

    def reflect(self, lam, s):
        return tuple(int(x) for x in self.weyl_gens[s] * ImmutableMatrix(list(lam)))

    def weyl_matrix(self, word):
        """語 s1 s2 ... に対応する行列 M_{s1}·M_{s2}·..."""
        m = identity(self.rank)
        for s in word:
            m = m * self.weyl_gens[s]
        return ImmutableMatrix(m)

    def coweyl_matrix(self, word):
        m = identity(self.rank)
        for s in word:
            m = m * self.coweyl_gens[s]
        return ImmutableMatrix(m)

    def same_as(self, other):
        return self.A == other.A and self.Acheck == other.Acheck

    def __eq__(self, other):
        if not isinstance(other, RootDatum):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.A, self.Acheck))

    def label(self):
        if self.name:
            return self.name
        types = "×".join(t.name for t in self.types) or "T"
        return f"{types} (rank {self.rank})"

    def to_dict(self):
        return {
            "name": self.name,
            "rank": self.rank,
            "base_size": self.base_size,
            "A": to_rows(self.A),
            "Acheck": to_rows(self.Acheck),
            "cartan": self.cartan.rows(),
            "types": [t.name for t in self.types],
            "root_count": len(self.roots),
        }


def _primitive(v):
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return v
    return tuple(x // g for x in v)


def build_datum(A, Acheck, name=None):
    """因子分解 (A, Ǎ) からルートデータを作る

    単純ルートから鏡映で閉包を取り、語 w を持ち回って α = w(α_s) に
    α∨ = δ(w)(α_s∨) を対応させる。
    ルートは正ルートが先、負ルートが後で、それぞれの中は X の座標の辞書式順に並ぶ。

    Args:
        A: r×n 整数行列（行が単純ルート）
        Acheck: r×n 整数行列（行が単純コルート）
        name (str): 表示用の名前

    Returns:
        RootDatum

    Raises:
        NotCartan: Ǎ·Aᵀ が Cartan 行列でない
        ClosureBudgetExceeded: 生成したルートが安全上限を超えた
    """
    A = int_mat(A)
    Acheck = int_mat(Acheck, cols=A.cols)
    if A.shape != Acheck.shape:
        raise BadParams(f"A is {A.shape} but Acheck is {Acheck.shape}")
    C = validate_cartan(Acheck * A.T)
    r, n = A.shape
    c = C.rows()
    a_rows = to_rows(A)
    ac_rows = to_rows(Acheck)
    budget = config.root_budget(r)

    # 高さ（単純ルート座標）→ (コルート, 語, 基点)
    found = {}
    frontier = []
    for s in range(r):
        h = tuple(1 if t == s else 0 for t in range(r))
        found[h] = (tuple(ac_rows[s]), (), s)
        frontier.append(h)
    while frontier:
        nxt = []
        for h in frontier:
            coroot, word, base = found[h]
            for s in range(r):
                shift = sum(h[t] * c[s][t] for t in range(r))
                if shift == 0:
                    continue
                h2 = h[:s] + (h[s] - shift,) + h[s + 1 :]
                k = sum(a_rows[s][j] * coroot[j] for j in range(n))
                co2 = tuple(coroot[j] - k * ac_rows[s][j] for j in range(n))
                if h2 in found:
                    if found[h2][0] != co2:
                        raise ConsistencyFailure(f"two different coroots reached for root heights {h2}")
                    continue
                found[h2] = (co2, (s,) + word, base)
                nxt.append(h2)
                if len(found) > budget:
                    raise ClosureBudgetExceeded(f"more than {budget} roots generated")
        frontier = nxt

    def vector(h):
        return tuple(sum(h[t] * a_rows[t][j] for t in range(r)) for j in range(n))

    positives = [h for h in found if all(x >= 0 for x in h)]
    if len(positives) * 2 != len(found):
        raise ConsistencyFailure("root set is not symmetric under negation")
    positives.sort(key=vector)
    negatives = sorted((tuple(-x for x in h) for h in positives), key=vector)
    ordered = positives + negatives

    roots, coroots, words = [], [], []
    for h in ordered:
        if h not in found:
            raise ConsistencyFailure(f"negative of root {h} missing")
        coroot, word, base = found[h]
        v = vector(h)
        if sum(x * y for x, y in zip(v, coroot)) != 2:
            raise ConsistencyFailure(f"<α, α∨> ≠ 2 for root heights {h}")
        roots.append(v)
        coroots.append(coroot)
        words.append((word, base))

    index = {h: i for i, h in enumerate(ordered)}
    base_indices = tuple(index[tuple(1 if t == s else 0 for t in range(r))] for s in range(r))
    return RootDatum(
        A=A,
        Acheck=Acheck,
        cartan=C,
        roots=tuple(roots),
        coroots=tuple(coroots),
        heights=tuple(ordered),
        root_words=tuple(words),
        base_indices=base_indices,
        name=name,
    )


def adjoint_datum(C, name=None):
    """A = I, Ǎ = C"""
    return build_datum(identity(C.size), C.entries, name)


def sc_datum(C, name=None):
    """Ǎ = I, A = Cᵀ"""
    return build_datum(C.entries.T, identity(C.size), name)


def toric_datum(n, name=None):
    """ルートを持たない階数 n のデータ"""
    return build_datum(ImmutableMatrix.zeros(0, n), ImmutableMatrix.zeros(0, n), name)


def standard_datum(label, rank=None, form="sc"):
    C = standard_cartan(label, rank)
    if form == "sc":
        return sc_datum(C)
    if form == "ad":
        return adjoint_datum(C)
    raise BadParams(f"unknown form {form!r}; use 'sc' or 'ad'")


def dual_datum(D):
    """A と Ǎ を入れ替える（Cartan 行列は転置になる）"""
    name = None
    if D.name:
        name = D.name[5:-1] if D.name.startswith("dual(") else f"dual({D.name})"
    return build_datum(D.Acheck, D.A, name)


def direct_product(D1, D2):
    name = None
    if D1.name and D2.name:
        name = f"{D1.name}×{D2.name}"
    return build_datum(block_diag(D1.A, D2.A), block_diag(D1.Acheck, D2.Acheck), name)


# ---------------------------------------------------------------------------
# Weyl 群
# ---------------------------------------------------------------------------


def weyl_entry_bound(D):
    """W の元（X 上の行列）の成分の絶対値の上界

    w·x = x - Σ ⟨x, β̌⟩·γ（項数は長さ以下）なので 1 + |R⁺|·max|ǎ|·max|a| で抑えられる。
    """
    root_max = max((abs(x) for v in D.roots for x in v), default=0)
    coroot_max = max((abs(x) for v in D.coroots for x in v), default=0)
    return 1 + D.positive_count * root_max * coroot_max


def exact_dtype(bound):
    """途中結果の絶対値が bound 以下に収まる計算の dtype（int64 で溢れうるなら Python の int）"""
    return np.int64 if bound < config.INT64_SAFE else object


def array_key(m):
    """ndarray を辞書のキーにする"""
    if m.dtype == object:
        return tuple(m.ravel().tolist())
    return m.tobytes()


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Weyl 群の全元（X への作用）

    mats[0] は単位元。元は BFS の深さ（= 長さ）順で、同じ長さの中は成分の辞書式順。
    """

    datum: RootDatum
    mats: np.ndarray
    lengths: tuple
    words: tuple
    size_cap: int

    def __len__(self):
        return len(self.lengths)

    @cached_property
    def _lookup(self):
        return {array_key(self.mats[i]): i for i in range(len(self))}

    def element(self, i):
        return ImmutableMatrix(self.mats[i].tolist())

    def find(self, m):
        try:
            key = array_key(np.asarray(to_rows(int_mat(m)), dtype=self.mats.dtype))
        except OverflowError:
            return None
        return self._lookup.get(key)

    def index_of_word(self, word):
        return self.find(self.datum.weyl_matrix(word))

    def length_profile(self):
        profile = [0] * (max(self.lengths) + 1)
        for k in self.lengths:
            profile[k] += 1
        return profile

    @property
    def longest_length(self):
        return max(self.lengths)


def inversion_count(D, w):
    """w が負に送る正ルートの個数"""
    count = 0
    for v in D.roots[: D.positive_count]:
        image = tuple(int(x) for x in w @ np.asarray(v, dtype=w.dtype))
        i = D.root_index(image)
        if i is None:
            raise ConsistencyFailure("Weyl group element does not permute the roots")
        if not D.is_positive(i):
            count += 1
    return count


def weyl_group(D, cap=None):
    """生成元を左から掛ける幅優先探索で W を列挙する

    Raises:
        CapExceeded: |W| が上限を超える（列挙の前に位数公式で判定）
    """
    cap = config.WEYL_CAP if cap is None else cap
    size = weyl_group_order_of(D.cartan) if D.base_size else 1
    if size > cap:
        raise CapExceeded(size, cap)

    n = D.rank
    dtype = exact_dtype(n * weyl_entry_bound(D) ** 2)
    gens = np.array([to_rows(g) for g in D.weyl_gens], dtype=dtype).reshape(D.base_size, n, n)

    start = np.eye(n, dtype=dtype)
    seen = {array_key(start)}
    mats, lengths, words = [start], [0], [()]
    level, level_words = [start], [()]
    depth = 0
    while level:
        depth += 1
        stacked = np.stack(level)
        new = {}
        for parent in range(len(level)):
            products = gens @ stacked[parent]
            for s in range(D.base_size):
                key = array_key(products[s])
                if key in seen or key in new:
                    continue
                new[key] = (products[s], (s,) + level_words[parent])
        seen.update(new)
        ordered = sorted(new.values(), key=lambda item: tuple(item[0].ravel().tolist()))
        level = [m for m, _ in ordered]
        level_words = [w for _, w in ordered]
        mats.extend(level)
        lengths.extend([depth] * len(level))
        words.extend(level_words)
        if len(mats) > cap:
            raise CapExceeded(len(mats), cap)

    if len(mats) != size:
        raise ConsistencyFailure(f"enumerated {len(mats)} Weyl group elements, expected {size}")

    step = max(1, len(mats) // config.LENGTH_SAMPLE)
    for i in range(0, len(mats), step):
        if inversion_count(D, mats[i]) != lengths[i]:
            raise ConsistencyFailure(f"length of Weyl element {words[i]} disagrees with inversions")

    return WeylGroup(D, np.stack(mats), tuple(lengths), tuple(words), cap)


# ---------------------------------------------------------------------------
# 格子 ZC ⊆ L ⊆ Ω
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeSpec:
    cartan: object
    basis: ImmutableMatrix

    def quotient_invariants(self):
        """L/ZC の不変因子"""
        rel = rational_inverse(self.basis) * self.cartan.entries
        if not is_integral(rel):
            raise LatticeNotAboveZC("lattice does not contain the column lattice of C")
        return smith_normal_form(rel).torsion

    def index(self):
        return math.prod(self.quotient_invariants())


def datum_from_lattice(L, name=None):
    """Ǎ = basis, Aᵀ = basis⁻¹·C"""
    basis = int_mat(L.basis)
    At = rational_inverse(basis) * L.cartan.entries
    if not is_integral(At):
        raise LatticeNotAboveZC("basis⁻¹·C is not integral")
    return build_datum(At.T, basis, name)


def enumerate_isogeny_classes(C):
    """Λ(C) = Ω/ZC の部分群ごとに格子 L を1つずつ返す

    U·C·V = S のとき x ↦ Ux が Λ(C) ≅ ⊕ Z/d_i を与える。非自明な座標上の部分格子を
    上三角 Hermite 標準形で列挙する。

    Returns:
        list: (LatticeSpec, L/ZC の不変因子) のリスト（指数の小さい順）
    """
    r = C.size
    snf = smith_normal_form(C.entries)
    d = snf.invariant_factors
    nontrivial = [i for i in range(r) if d[i] > 1]
    k = len(nontrivial)
    exponent = math.lcm(*[d[i] for i in nontrivial]) if k else 1
    divisors = [x for x in range(1, exponent + 1) if exponent % x == 0]
    D = ImmutableMatrix.diag(*[d[i] for i in nontrivial]) if k else None

    lattices = []
    for diagonal in itertools.product(divisors, repeat=k):
        slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
        ranges = [range(diagonal[i]) for i, _ in slots]
        for values in itertools.product(*ranges):
            rows = [[0] * k for _ in range(k)]
            for i in range(k):
                rows[i][i] = diagonal[i]
            for (i, j), v in zip(slots, values):
                rows[i][j] = v
            H = ImmutableMatrix(rows)
            if k and not is_integral(rational_inverse(H) * D):
                continue
            full = block_diag(identity(r - k), H) if k else identity(r)
            basis = lattice_basis(rational_inverse(snf.U) * full)
            lat = LatticeSpec(C, basis)
            lattices.append((lat, lat.quotient_invariants()))
        if not k:
            break

    lattices.sort(key=lambda item: (math.prod(item[1]), to_rows(item[0].basis)))
    return lattices


# ---------------------------------------------------------------------------
# X/ZR と中心
# ---------------------------------------------------------------------------


def x_mod_zr_invariants(D):
    """X/ZR の (自由部分の階数, ねじれ不変因子)"""
    return cokernel_invariants(D.A, ambient=D.rank)


def _is_power_of(d, p):
    if p == 1:
        return d == 1
    while d % p == 0:
        d //= p
    return d == 1


def center_is_connected(D, p):
    """X/ZR に p′-ねじれがないか"""
    _, torsion = x_mod_zr_invariants(D)
    return all(_is_power_of(d, p) for d in torsion)


def center_structure(D, p=1):
    """標数 p での Z(G) ≅ Hom(X/ZR, k^×) の格子的記述"""
    free, torsion = x_mod_zr_invariants(D)
    finite = []
    for d in torsion:
        if p > 1:
            while d % p == 0:
                d //= p
        if d > 1:
            finite.append(d)
    return {"torus_rank": free, "finite": finite, "connected": not finite}


# ---------------------------------------------------------------------------
# 同型判定
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoWitness:
    """P·Bᵀ = Aᵀ·P° かつ P°·B̌ = Ǎ·P を満たす (P, P°)"""

    P: ImmutableMatrix
    Pcirc: ImmutableMatrix
    permutation: tuple

    def to_dict(self):
        return {"P": to_rows(self.P), "Pcirc": to_rows(self.Pcirc), "permutation": list(self.permutation)}


def _permutation_matrix(pi):
    n = len(pi)
    rows = [[0] * n for _ in range(n)]
    for s, t in enumerate(pi):
        rows[s][t] = 1
    return int_mat(rows, cols=n)


def isomorphic(D1, D2):
    """D2 から D1 への同型 (P, P°) を探す

    半単純なら P = Aᵀ·P°·(Bᵀ)⁻¹ で厳密に判定する。半単純でなければ P の整数線形方程式を
    解き、解の格子の有限の箱の中で det P = ±1 となるものを探す。

    Returns:
        IsoWitness、同型でなければ None、判定できなければ Indeterminate
    """
    if D1.A.shape != D2.A.shape:
        return None

    perms = list(cartan_isomorphisms(D1.cartan, D2.cartan))
    if not perms:
        return None

    solvable = False
    for pi in perms:
        witness = lift_permutation(D1, D2, pi)
        if witness is Indeterminate:
            solvable = True
        elif witness is not None:
            return witness
    return Indeterminate if solvable else None


def lift_permutation(D1, D2, pi):
    """Cartan 行列の同型 π を格子の同型 P に持ち上げる

    Returns:
        IsoWitness、持ち上げがなければ None、探索で見つからなければ Indeterminate
    """
    r, n = D1.A.shape
    A, Ac = D1.A, D1.Acheck
    B, Bc = D2.A, D2.Acheck
    Pc = _permutation_matrix(pi) if r else ImmutableMatrix.zeros(0, 0)

    if D1.is_semisimple and D2.is_semisimple:
        P = A.T * Pc * rational_inverse(B.T)
        if not is_integral(P) or abs(det(P)) != 1 or Pc * Bc != Ac * P:
            return None
        return IsoWitness(ImmutableMatrix(P), Pc, tuple(pi))

    system, rhs = _iso_system(A, Ac, B, Bc, Pc)
    solution = solve_integer_system(system, rhs)
    if solution is None:
        return None
    P = _search_unimodular(solution, n)
    if P is None:
        return Indeterminate
    return IsoWitness(P, Pc, tuple(pi))


def _iso_system(A, Ac, B, Bc, Pc):
    """vec(P) に関する線形方程式 P·Bᵀ = Aᵀ·P°, Ǎ·P = P°·B̌"""
    r, n = A.shape
    rows, rhs = [], []
    lhs1 = A.T * Pc
    for i in range(n):
        for s in range(r):
            row = [0] * (n * n)
            for j in range(n):
                row[i * n + j] = int(B[s, j])
            rows.append(row)
            rhs.append(int(lhs1[i, s]))
    lhs2 = Pc * Bc
    for s in range(r):
        for j in range(n):
            row = [0] * (n * n)
            for i in range(n):
                row[i * n + j] = int(Ac[s, i])
            rows.append(row)
            rhs.append(int(lhs2[s, j]))
    if not rows:
        return ImmutableMatrix.zeros(1, n * n), [0]
    return int_mat(rows), rhs


def _search_unimodular(solution, n):
    x0, kernel = solution
    kernel = reduce_basis(kernel)
    x0 = nearest_translate(x0, kernel)
    if not kernel:
        P = ImmutableMatrix(n, n, list(x0))
        return P if abs(det(P)) == 1 else None
    radius = config.ISO_SEARCH_RADIUS
    values = sorted(range(-radius, radius + 1), key=lambda v: (abs(v), v))
    candidates = itertools.product(values, repeat=len(kernel))
    for coeffs in itertools.islice(candidates, config.ISO_SEARCH_LIMIT):
        x = list(x0)
        for c, vec in zip(coeffs, kernel):
            if c:
                for k in range(len(x)):
                    x[k] += c * vec[k]
        P = ImmutableMatrix(n, n, x)
        if abs(det(P)) == 1:
            return P
    return None


# ---------------------------------------------------------------------------
# 階数1の分類とカタログ
# ---------------------------------------------------------------------------


def rank1_classify(D):
    """A1 型のデータを SL2 型・PGL2 型・GL2 型に分ける"""
    types = D.types
    if len(types) != 1 or types[0].name != "A1":
        raise WrongType(f"expected Cartan type A1, got {[t.name for t in types]}")
    a = math.gcd(*[int(x) for x in D.A])
    ac = math.gcd(*[int(x) for x in D.Acheck])
    if a == 2:
        return "SL2-like"
    if ac == 2:
        return "PGL2-like"
    return "GL2-like"


_CATALOG_PATTERN = re.compile(r"^\s*([A-Za-z]+)\s*\(\s*(\d+)\s*\)\s*$")


def gl_datum(n):
    rows = [[0] * n for _ in range(n - 1)]
    for i in range(n - 1):
        rows[i][i] = 1
        rows[i][i + 1] = -1
    A = int_mat(rows, cols=n)
    return build_datum(A, A, f"GL({n})")


def _so_even_datum(n):
    rows = [[0] * n for _ in range(n)]
    rows[0][0], rows[0][1] = 1, 1
    for i in range(1, n):
        rows[i][i - 1] = -1
        rows[i][i] = 1
    A = int_mat(rows)
    return build_datum(A, A, f"SO({2 * n})")


def catalog(name, n=None):
    """古典群のルートデータ

    Args:
        name: "GL(3)" のような文字列、または n と組にする群の名前
        n (int): 群のパラメータ（行列のサイズ）

    Raises:
        BadParams: 名前またはパラメータが不正
    """
    if n is None:
        match = _CATALOG_PATTERN.match(str(name))
        if not match:
            raise BadParams(f"cannot parse catalog entry {name!r}")
        name, n = match.group(1), int(match.group(2))
    key = name.upper()
    label = f"{name}({n})"

    if key == "GL":
        if n < 1:
            raise BadParams("GL(n) needs n ≥ 1")
        return gl_datum(n)
    if key in ("SL", "PGL"):
        if n < 2:
            raise BadParams(f"{key}(n) needs n ≥ 2")
        C = standard_cartan("A", n - 1)
        return sc_datum(C, label) if key == "SL" else adjoint_datum(C, label)
    if key == "SP":
        if n < 2 or n % 2:
            raise BadParams("Sp(2n) needs an even argument ≥ 2")
        m = n // 2
        return sc_datum(standard_cartan("C" if m >= 2 else "A", m), label)
    if key == "SPIN":
        if n < 3:
            raise BadParams("Spin(N) needs N ≥ 3")
        m = n // 2
        if n % 2:
            return sc_datum(standard_cartan("B" if m >= 2 else "A", m), label)
        if m < 3:
            raise BadParams("Spin(2n) needs n ≥ 3")
        return sc_datum(standard_cartan("D", m), label)
    if key == "SO":
        m = n // 2
        if n % 2:
            if m < 1:
                raise BadParams("SO(2n+1) needs n ≥ 1")
            return adjoint_datum(standard_cartan("B" if m >= 2 else "A", m), label)
        if m < 3:
            raise BadParams("SO(2n) needs n ≥ 3")
        return _so_even_datum(m)
    if key == "HSPIN":
        m = n // 2
        if n % 2 or m < 4 or m % 2:
            raise BadParams("HSpin(2n) needs n even and ≥ 4")
        C = standard_cartan("D", m)
        omega1 = ImmutableMatrix([1] + [0] * (m - 1))
        basis = lattice_basis(C.entries.row_join(omega1))
        return datum_from_lattice(LatticeSpec(C, basis), label)
    raise BadParams(f"unknown catalog group {name!r}")
