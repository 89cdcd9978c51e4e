"""
完全ルートデータ（一般有限簡約群）𝔾 = (D, φ₀W)

位数多項式（BN 対による公式と Molien 型の和の2通り）、極大トーラス、Ennola 双対、
完全双対、パラメータ集合 𝒫 の判定、位数表との照合。
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import ImmutableMatrix

import config
from cartan import classify, parse_type, weyl_group_order_of
from errors import (
    BadParams,
    BadType,
    CapExceeded,
    ConsistencyFailure,
    DoesNotNormalizeW,
    MixedRadicand,
    NotFiniteOrder,
    NotSimple,
    NotSteinberg,
    QNotInP,
)
from exact_linalg import (
    ONE,
    QPoly,
    QuadMat,
    QuadNum,
    char_poly,
    cyclotomic_factor,
    identity,
    int_mat,
    poly_eval,
    to_rows,
)
from isogeny import classify_isogeny, exceptional_catalog, from_permutation, isogeny_q, twist_class
from order_tables import normalize_key, table_row
from rootdatum import (
    direct_product,
    dual_datum,
    exact_dtype,
    standard_datum,
    weyl_entry_bound,
    weyl_group,
)


# ---------------------------------------------------------------------------
# CompleteRootDatum
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CompleteRootDatum:
    """ルートデータと基底を保つ代表元 φ₀ = scalar·mat

    φ₀(α_{s†}) = κ_s·α_s。κ がすべて 1 なら case I、そうでなければ case II(p)。
    """

    datum: object
    phi0: QuadMat
    case: str
    radicand: int
    base_perm: tuple
    kappa: tuple
    order: int
    name: str = None

    @property
    def sigma(self):
        return self.base_perm

    @property
    def Qcirc(self):
        r = self.datum.base_size
        rows = [[QuadNum(0)] * r for _ in range(r)]
        for s, t in enumerate(self.base_perm):
            rows[s][t] = self.kappa[s]
        return rows

    def label(self):
        return self.name or type_key(self)

    def to_dict(self):
        return {
            "name": self.name,
            "datum": self.datum.to_dict(),
            "phi0": [[str(x) for x in row] for row in self.phi0.entries()],
            "case": self.case if self.case == "I" else f"II({self.radicand})",
            "base_perm": [s + 1 for s in self.base_perm],
            "kappa": [str(k) for k in self.kappa],
            "order": self.order,
        }


def _as_quadmat(Q):
    if isinstance(Q, QuadMat):
        return Q
    if isinstance(Q, ImmutableMatrix) or hasattr(Q, "is_Matrix"):
        if all(x.is_integer for x in Q):
            return QuadMat.from_int(Q)
        return QuadMat.from_entries(Q.tolist())
    return QuadMat.from_entries(Q)


def _ray_of_image(D, phi, v):
    """φ(v) と正の比例関係にあるルートの番号"""
    image = phi.apply_int(v)
    if phi.scalar.sign() < 0:
        image = tuple(-x for x in image)
    return D.ray_index(image)


def _make_base_preserving(D, phi):
    """φ(R⁺) = R⁺ となるまで単純鏡映を左から掛ける"""
    positives = D.roots[: D.positive_count]
    for _ in range(len(D.roots) + 1):
        images = [_ray_of_image(D, phi, v) for v in positives]
        if any(i is None for i in images):
            raise DoesNotNormalizeW("φ₀ does not map roots to multiples of roots")
        hit = set(images)
        if all(D.is_positive(i) for i in hit):
            return phi
        s = next(s for s, i in enumerate(D.base_indices) if i not in hit)
        phi = QuadMat(phi.scalar, D.weyl_gens[s] * phi.mat)
    raise ConsistencyFailure("base-preserving normalization did not terminate")


def _finite_order(phi):
    n = phi.mat.rows
    if not n:
        return 1
    power = identity(n)
    for k in range(1, config.ORDER_BOUND + 1):
        power = power * phi.mat
        lam = int(power[0, 0])
        if power == identity(n) * lam and phi.scalar**k * lam == ONE:
            return k
    return None


def make_complete(D, Q, name=None):
    """(D, Q) から完全ルートデータを作る

    Q が基底を保たなければ W の元を掛けて基底を保つ代表元に取り替える。

    Raises:
        NotFiniteOrder: 位数が ORDER_BOUND 以下で有限にならない
        DoesNotNormalizeW: Q が W を正規化しない（ルートやコルートを保たない）
        MixedRadicand: κ_s に異なる素数の平方根が混ざる
    """
    phi = _as_quadmat(Q)
    n = D.rank
    if phi.shape != (n, n):
        raise BadParams(f"φ₀ must be {n}×{n}")
    if phi.scalar.is_zero() or int(phi.mat.det()) == 0:
        raise BadParams("φ₀ is not invertible")

    phi = _make_base_preserving(D, phi)
    order = _finite_order(phi)
    if order is None:
        raise NotFiniteOrder(f"φ₀ has no finite order ≤ {config.ORDER_BOUND}")

    r = D.base_size
    base_perm = [None] * r
    for t, i in enumerate(D.base_indices):
        j = _ray_of_image(D, phi, D.roots[i])
        s = D.base_indices.index(j)
        base_perm[s] = t

    for s in range(r):
        if D.weyl_gens[s] * phi.mat != phi.mat * D.weyl_gens[base_perm[s]]:
            raise DoesNotNormalizeW(f"φ₀⁻¹·w_{s + 1}·φ₀ is not a simple reflection")

    a_rows = to_rows(D.A)
    ac_rows = to_rows(D.Acheck)
    kappa = []
    for s in range(r):
        image = phi.apply_int(a_rows[base_perm[s]])
        k = next(j for j in range(n) if a_rows[s][j] != 0)
        value = phi.scalar * QuadNum(image[k], 0, 0, a_rows[s][k])
        if value.sign() <= 0:
            raise ConsistencyFailure("κ_s is not positive after normalization")
        kappa.append(value)
        # Q°·Ǎ = Ǎ·φ₀
        co = [phi.scalar * int(x) for x in ImmutableMatrix([ac_rows[s]]) * phi.mat]
        if co != [value * x for x in ac_rows[base_perm[s]]]:
            raise DoesNotNormalizeW(f"φ₀ does not respect the coroot of generator {s + 1}")

    case, radicand = "I", 0
    if any(k != ONE for k in kappa):
        primes = set()
        for k in kappa:
            if k == ONE:
                continue
            found = k.prime_power_exponent()
            if found is None:
                raise MixedRadicand(f"κ = {k} is not a power of a single prime")
            primes.add(found[0])
        if len(primes) != 1:
            raise MixedRadicand(f"κ values involve several primes {sorted(primes)}")
        case, radicand = "II", primes.pop()

    return CompleteRootDatum(
        datum=D,
        phi0=phi,
        case=case,
        radicand=radicand,
        base_perm=tuple(base_perm),
        kappa=tuple(kappa),
        order=order,
        name=name,
    )


def from_isogeny(f, name=None):
    """Steinberg 型の自己同種写像 P から φ₀ = q⁻¹·P と q を作る

    Raises:
        NotSteinberg: P^d = p^m·I とならない
    """
    info = classify_isogeny(f)
    q = isogeny_q(f) if info.steinberg is not None else None
    if q is None:
        raise NotSteinberg("isogeny is not of Steinberg type")
    crd = make_complete(f.target, QuadMat(q.inverse(), f.P), name)
    if not p_set_contains(crd, q):
        raise ConsistencyFailure(f"q = {q} is not in the parameter set of the induced datum")
    return crd, q


# ---------------------------------------------------------------------------
# 型とねじれ
# ---------------------------------------------------------------------------


def twist_label(crd):
    return twist_class(crd.datum.cartan, crd.base_perm)[0]


def _permutation_order(perm):
    order, current = 1, list(perm)
    identity_perm = list(range(len(perm)))
    while current != identity_perm:
        current = [perm[i] for i in current]
        order += 1
    return order


def type_key(crd):
    """"2A2", "3D4", "2B2" のような位数表のキー（単純なデータのみ）"""
    types = classify(crd.datum.cartan)
    if len(types) != 1:
        raise NotSimple(f"datum has {len(types)} simple components")
    label = types[0]
    twist = _permutation_order(crd.base_perm)
    if twist == 1:
        return normalize_key(label.name)
    return normalize_key(f"{twist}{label.name}")


_DIAGRAM_FLIPS = {
    "A": lambda n: tuple(n - 1 - s for s in range(n)),
    "D": lambda n: (1, 0) + tuple(range(2, n)),
    "E": lambda n: (5, 1, 4, 3, 2, 0),
}


def standard_complete(key, form="sc", m=0):
    """位数表の各行に対応する完全ルートデータ

    Args:
        key (str): "E6", "2A3", "3D4", "2B2" など
        form (str): "sc" か "ad"（非常にねじれた型では無視）
        m (int): 2B2, 2G2, 2F4 の指数
    """
    twist, family, n = parse_type(key)
    if twist == 1:
        D = standard_datum(family, n, form)
        return make_complete(D, QuadMat.identity(D.rank), name=f"{family}{n}")

    name = f"{twist}{family}{n}"
    exceptional = {("B", 2): "C2", ("C", 2): "C2", ("G", 2): "G2", ("F", 4): "F4"}
    if twist == 2 and (family, n) in exceptional:
        crd, _ = from_isogeny(exceptional_catalog(exceptional[(family, n)], m), name)
        return crd

    D = standard_datum(family, n, form)
    if twist == 3 and family == "D" and n == 4:
        pi = (1, 3, 2, 0)
    elif twist == 2 and family == "A" and n >= 2:
        pi = _DIAGRAM_FLIPS["A"](n)
    elif twist == 2 and family == "D" and n >= 4:
        pi = _DIAGRAM_FLIPS["D"](n)
    elif twist == 2 and family == "E" and n == 6:
        pi = _DIAGRAM_FLIPS["E"](n)
    else:
        raise BadType(f"no standard complete root datum of type {key}")
    f = from_permutation(D, pi)
    return make_complete(D, QuadMat.from_int(f.P), name)


# ---------------------------------------------------------------------------
# 位数多項式
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderPolynomial:
    poly: QPoly
    factored: object
    source: str

    def to_dict(self):
        return {
            "poly": self.poly.to_str(),
            "factored": self.factored.to_str(),
            "factors": self.factored.to_dict(),
            "source": self.source,
        }


@lru_cache(maxsize=16)
def _weyl(D, cap):
    return weyl_group(D, cap)


def _check_order_polynomial(crd, poly, source):
    D = crd.datum
    if not poly.is_integral():
        raise ConsistencyFailure(f"{source} order polynomial has non-integer coefficients")
    if poly.degree() != len(D.roots) + D.rank or poly.leading() != ONE:
        raise ConsistencyFailure(f"{source} order polynomial has the wrong degree or leading term")
    factored = cyclotomic_factor(poly)
    if factored.y_power != D.positive_count:
        raise ConsistencyFailure(f"p-part of the {source} order polynomial is not y^{D.positive_count}")
    return OrderPolynomial(poly, factored, source)


def _operator_array(crd, mat, power=1):
    """φ₀ 側の整数行列を W.mats と掛け合わせられる ndarray にする"""
    rows = to_rows(mat)
    entry = max((abs(x) for row in rows for x in row), default=0)
    n = crd.datum.rank
    bound = (max(n, 1) * weyl_entry_bound(crd.datum) * max(entry, 1)) ** power
    return np.array(rows, dtype=exact_dtype(bound)).reshape(n, n)


def fixed_points(crd, W):
    """W^σ = {w : φ₀·w = w·φ₀} の番号"""
    N = _operator_array(crd, crd.phi0.mat)
    left = np.matmul(N, W.mats)
    right = np.matmul(W.mats, N)
    return np.nonzero((left == right).all(axis=(1, 2)))[0]


def order_polynomial_bn(crd, cap=None):
    """|𝔾| = y^{|R|/2}·det(y - φ₀⁻¹)·Σ_{w ∈ W^σ} y^{l(w)}"""
    D = crd.datum
    W = _weyl(D, config.WEYL_CAP if cap is None else cap)
    lengths = [0] * (W.longest_length + 1)
    for i in fixed_points(crd, W):
        lengths[W.lengths[i]] += 1
    poly = QPoly.monomial(D.positive_count) * char_poly(crd.phi0.inverse()) * QPoly.from_coeffs(lengths)
    return _check_order_polynomial(crd, poly, "bn")


def _group_rows(keys):
    """同じ行の最初の番号と個数（行の辞書式順）"""
    if keys.dtype != object and keys.shape[1]:
        _, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
        return first, counts
    groups = {}
    for i, row in enumerate(keys.tolist()):
        entry = groups.setdefault(tuple(row), [i, 0])
        entry[1] += 1
    ordered = [groups[k] for k in sorted(groups)]
    return [i for i, _ in ordered], [c for _, c in ordered]


def _denominator_classes(crd, W):
    """det(y - w·φ₀⁻¹) をトレース列でまとめ、(代表の行列, 個数) を返す"""
    inverse = crd.phi0.inverse()
    n = crd.datum.rank
    N = _operator_array(crd, inverse.mat, max(n, 1))
    M = np.matmul(W.mats, N)
    traces = []
    power = M
    for k in range(n):
        if k:
            power = np.matmul(power, M)
        traces.append(np.trace(power, axis1=1, axis2=2))
    keys = np.stack(traces, axis=1) if traces else np.zeros((len(W), 0), dtype=np.int64)
    first, counts = _group_rows(keys)
    classes = []
    for i, count in zip(first, counts):
        rep = QuadMat(inverse.scalar, ImmutableMatrix(M[i].tolist()))
        classes.append((char_poly(rep), int(count)))
    return classes


def order_polynomial_molien(crd, cap=None):
    """y^{|R|}/|𝔾| = (1/|W|)·Σ_w 1/det(y - w·φ₀⁻¹) を有理関数として足し合わせて逆数を取る"""
    D = crd.datum
    W = _weyl(D, config.WEYL_CAP if cap is None else cap)
    classes = _denominator_classes(crd, W)
    common = classes[0][0]
    for f, _ in classes[1:]:
        common = common.lcm(f)
    numerator = QPoly.constant(0)
    for f, count in classes:
        numerator = numerator + common.exact_div(f) * count
    poly = (QPoly.monomial(len(D.roots)) * common * len(W)).exact_div(numerator)
    return _check_order_polynomial(crd, poly, "molien")


def central_torus_factor(crd):
    """det(y - φ₀⁻¹) / det(y - Q°⁻¹)"""
    whole = char_poly(crd.phi0.inverse())
    if not crd.datum.base_size:
        return whole
    root_part = char_poly(_monomial_inverse(crd.Qcirc))
    return whole.exact_div(root_part)


def _monomial_inverse(rows):
    r = len(rows)
    out = [[QuadNum(0)] * r for _ in range(r)]
    for s in range(r):
        for t in range(r):
            if not rows[s][t].is_zero():
                out[t][s] = rows[s][t].inverse()
    return out


def order_polynomial(crd, method="bn", cap=None):
    """位数多項式

    |W| が上限を超え、単純型で位数表に行があるときは表の行に中心トーラスの因子を掛けて返す。

    Args:
        method (str): "bn", "molien", "both"
    """
    if method not in ("bn", "molien", "both"):
        raise BadParams(f"unknown method {method!r}")
    cap = config.WEYL_CAP if cap is None else cap
    D = crd.datum
    size = weyl_group_order_of(D.cartan) if D.base_size else 1
    if size > cap:
        try:
            poly = table_row(type_key(crd)) * central_torus_factor(crd)
        except (NotSimple, BadType):
            raise CapExceeded(size, cap) from None
        return _check_order_polynomial(crd, poly, "table")

    if method == "bn":
        return order_polynomial_bn(crd, cap)
    if method == "molien":
        return order_polynomial_molien(crd, cap)
    bn = order_polynomial_bn(crd, cap)
    molien = order_polynomial_molien(crd, cap)
    if bn.poly != molien.poly:
        raise ConsistencyFailure(f"bn gives {bn.poly} but Molien gives {molien.poly}")
    return OrderPolynomial(bn.poly, bn.factored, "both")


# ---------------------------------------------------------------------------
# トーラス・Ennola・双対
# ---------------------------------------------------------------------------


def weyl_element(crd, w):
    """語（"121" や (0, 1, 0)）または行列から W の元の行列を得る"""
    D = crd.datum
    if isinstance(w, str):
        word = tuple(int(ch) - 1 for ch in w.strip() if ch.isdigit())
        if any(s < 0 or s >= D.base_size for s in word):
            raise BadParams(f"word {w!r} uses a generator outside 1..{D.base_size}")
        return D.weyl_matrix(word)
    if isinstance(w, (tuple, list)) and (not w or isinstance(w[0], int)):
        return D.weyl_matrix(tuple(w))
    return int_mat(w)


def toric_order(crd, w):
    """|𝔾_w| = det(y - w·φ₀⁻¹)"""
    inverse = crd.phi0.inverse()
    return char_poly(QuadMat(inverse.scalar, weyl_element(crd, w) * inverse.mat))


def tori_count_identity(crd, cap=None):
    """y^{|R|}·|W| = Σ_w |𝔾|/|𝔾_w| を確かめる"""
    D = crd.datum
    W = _weyl(D, config.WEYL_CAP if cap is None else cap)
    order = order_polynomial_bn(crd, cap).poly
    total = QPoly.constant(0)
    for f, count in _denominator_classes(crd, W):
        total = total + order.exact_div(f) * count
    return total == QPoly.monomial(len(D.roots)) * len(W)


def ennola(crd):
    """φ₀ を -φ₀ に取り替えて基底を保つ形に直す"""
    name = None
    if crd.name:
        name = crd.name[:-1] if crd.name.endswith("⁻") else f"{crd.name}⁻"
    return make_complete(crd.datum, -crd.phi0, name)


def dual_complete(crd):
    """双対ルートデータ上の φ₀ᵗʳ"""
    name = f"{crd.name}*" if crd.name else None
    return make_complete(dual_datum(crd.datum), crd.phi0.transpose(), name)


def restriction_of_scalars(crd, r):
    """D^r 上で成分を巡回させ、最後に φ₀ を1回掛ける φ₀′"""
    if r < 1:
        raise BadParams("r must be ≥ 1")
    D = crd.datum
    big = D
    for _ in range(r - 1):
        big = direct_product(big, D)
    n = D.rank
    size = n * r
    zero = QuadNum(0)
    grid = [[zero] * size for _ in range(size)]
    phi_entries = crd.phi0.entries()
    for block in range(r):
        for i in range(n):
            row = block * n + i
            if block < r - 1:
                grid[row][(block + 1) * n + i] = QuadNum(1)
            else:
                for j in range(n):
                    grid[row][j] = phi_entries[i][j]
    name = f"Res{r}({crd.label()})" if crd.name else None
    return make_complete(big, QuadMat.from_entries(grid), name)


def complete_product(crd1, crd2):
    D = direct_product(crd1.datum, crd2.datum)
    return make_complete(D, QuadMat.block_diag(crd1.phi0, crd2.phi0))


# ---------------------------------------------------------------------------
# パラメータ集合と群の位数
# ---------------------------------------------------------------------------


def p_set_contains(crd, q):
    """q ∈ 𝒫 かどうか

    case I: q は素数の正の冪。case II(p): q > 1 かつ q·κ_s がすべて p の非負整数冪。
    """
    q = QuadNum.coerce(q)
    if q.sign() <= 0:
        raise BadParams("q must be positive")
    if crd.case == "I":
        if not q.is_integer:
            return False
        found = q.prime_power_exponent()
        return found is not None and found[1] >= 2 and found[1] % 2 == 0
    if q <= 1:
        return False
    for k in crd.kappa:
        value = q * k
        if not value.is_integer:
            return False
        found = value.prime_power_exponent()
        if int(value) != 1 and (found is None or found[0] != crd.radicand or found[1] % 2):
            return False
    return True


def group_order(crd, q, method="bn", cap=None):
    """|𝔾|(q) を整数で返す

    Raises:
        QNotInP: q がパラメータ集合に入らない
    """
    q = QuadNum.coerce(q)
    if not p_set_contains(crd, q):
        raise QNotInP(f"q = {q.to_power_string()} is not an admissible parameter")
    value = poly_eval(order_polynomial(crd, method, cap).poly, q)
    if not value.is_integer:
        raise ConsistencyFailure(f"|𝔾|({q}) = {value} is not an integer")
    return int(value)


@dataclass(frozen=True)
class TableCheckReport:
    key: str
    match: bool
    computed: QPoly
    expected: QPoly
    central_factor: QPoly

    def to_dict(self):
        return {
            "type": self.key,
            "match": self.match,
            "computed": self.computed.to_str(),
            "expected": self.expected.to_str(),
            "central_factor": self.central_factor.to_str(),
        }


def table_check(crd, method="bn", cap=None):
    """計算した位数多項式を中心トーラスの因子で割って位数表の行と比べる

    Raises:
        NotSimple: 単純成分が1つでない
    """
    key = type_key(crd)
    expected = table_row(key)
    factor = central_torus_factor(crd)
    computed = order_polynomial(crd, method, cap).poly.exact_div(factor)
    return TableCheckReport(key, computed == expected, computed, expected, factor)
