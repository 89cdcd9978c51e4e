"""
ルートデータの p-同種写像 (P, P°)

検証、ルート指数 q_α、Weyl 群への誘導自己同型 σ、分類（中心的・同型・Frobenius・Steinberg・ねじれ）、
例外的同種写像のカタログ、正則埋め込みの判定と構成、双対。
"""

import math
from dataclasses import dataclass

from sympy import ImmutableMatrix, isprime

import config
from cartan import dynkin_diagram, standard_cartan
from errors import (
    BadParams,
    BadType,
    ConsistencyFailure,
    MI1Violation,
    MI2Violation,
    NotEndo,
    NotSemisimple,
)
from exact_linalg import (
    QuadNum,
    cokernel_invariants,
    det,
    identity,
    int_mat,
    is_integral,
    is_monomial,
    rational_inverse,
    smith_normal_form,
    to_rows,
)
from rootdatum import (
    Indeterminate,
    adjoint_datum,
    build_datum,
    center_is_connected,
    dual_datum,
    gl_datum,
    lift_permutation,
    sc_datum,
)


def _is_power_of(value, p):
    """value = p^k (k ≥ 0) なら k、そうでなければ None"""
    if value <= 0:
        return None
    if p == 1:
        return 0 if value == 1 else None
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k if value == 1 else None


@dataclass(frozen=True, eq=False)
class PIsogeny:
    """X′（source）から X（target）への p-同種写像

    dagger[s] = s†（φ(α_{s†}) = q_s·α_s）、root_dagger と root_exponents は target の全ルートについての α† と q_α。
    """

    source: object
    target: object
    p: int
    P: ImmutableMatrix
    Pcirc: ImmutableMatrix
    dagger: tuple
    q_simple: tuple
    root_dagger: tuple
    root_exponents: tuple

    @property
    def is_endo(self):
        return self.source.same_as(self.target)

    def to_dict(self):
        return {
            "p": self.p,
            "P": to_rows(self.P),
            "Pcirc": to_rows(self.Pcirc),
            "dagger": [s + 1 for s in self.dagger],
            "q_simple": list(self.q_simple),
        }


def validate_isogeny(source, target, p, P, Pcirc):
    """(MI1)・(MI2) を確かめ、派生データを埋めた PIsogeny を返す

    Args:
        source: X′ 側のルートデータ（B, B̌）
        target: X 側のルートデータ（A, Ǎ）
        p (int): 素数または 1
        P: X′ → X の行列
        Pcirc: 単項行列 P°

    Raises:
        MI1Violation: P° が単項でない、または成分が p の冪でない
        MI2Violation: det P = 0、または P·Bᵀ = Aᵀ·P°, P°·B̌ = Ǎ·P が成り立たない
    """
    if p != 1 and not isprime(p):
        raise BadParams(f"p = {p} must be a prime or 1")
    P = int_mat(P)
    Pcirc = int_mat(Pcirc, cols=target.base_size)
    n, r = target.rank, target.base_size
    if source.rank != n or P.shape != (n, n):
        raise MI2Violation(f"P must be {n}×{n} for these data, got {P.rows}×{P.cols}")
    if source.base_size != r or Pcirc.shape != (r, r):
        raise MI1Violation(f"P° must be {r}×{r}")

    if r and not is_monomial(Pcirc):
        raise MI1Violation("P° is not monomial")
    dagger, q_simple = [], []
    for s in range(r):
        t = next(j for j in range(r) if Pcirc[s, j] != 0)
        q = int(Pcirc[s, t])
        if _is_power_of(q, p) is None:
            raise MI1Violation(f"entry {q} of P° is not a power of p = {p}")
        dagger.append(t)
        q_simple.append(q)

    if det(P) == 0:
        raise MI2Violation("det P = 0")
    A, Ac = target.A, target.Acheck
    B, Bc = source.A, source.Acheck
    if P * B.T != A.T * Pcirc:
        raise MI2Violation("P·Bᵀ ≠ Aᵀ·P°")
    if Pcirc * Bc != Ac * P:
        raise MI2Violation("P°·B̌ ≠ Ǎ·P")

    C, Cs = target.cartan, source.cartan
    if C.entries * Pcirc != Pcirc * Cs.entries:
        raise ConsistencyFailure("C·P° ≠ P°·C′")
    for s in range(r):
        for t in range(r):
            if q_simple[t] * C.c(s, t) != q_simple[s] * Cs.c(dagger[s], dagger[t]):
                raise ConsistencyFailure(f"q_t·c_st ≠ q_s·c_s†t† at s={s + 1}, t={t + 1}")

    root_dagger, exponents = _transport_roots(source, target, p, P)
    for i, (word, base) in enumerate(target.root_words):
        if exponents[i] != q_simple[base]:
            raise ConsistencyFailure(f"root exponent not constant on the Weyl orbit of root {i}")

    return PIsogeny(
        source=source,
        target=target,
        p=p,
        P=P,
        Pcirc=Pcirc,
        dagger=tuple(dagger),
        q_simple=tuple(q_simple),
        root_dagger=tuple(root_dagger),
        root_exponents=tuple(exponents),
    )


def _transport_roots(source, target, p, P):
    """φ(α†) = q_α·α, φᵗʳ(α∨) = q_α·(α†)∨ となる α† と q_α を全ルートで求める"""
    count = len(target.roots)
    if len(source.roots) != count:
        raise ConsistencyFailure("source and target have different numbers of roots")
    root_dagger = [None] * count
    exponents = [None] * count
    for j, beta in enumerate(source.roots):
        image = tuple(int(x) for x in P * ImmutableMatrix(list(beta)))
        i = target.ray_index(image)
        if i is None or root_dagger[i] is not None:
            raise ConsistencyFailure(f"φ does not map root {beta} onto a multiple of a root")
        alpha = target.roots[i]
        k = next(x for x in range(len(alpha)) if alpha[x] != 0)
        q = image[k] // alpha[k]
        if image != tuple(q * x for x in alpha) or _is_power_of(q, p) is None:
            raise ConsistencyFailure(f"root exponent {q} is not a power of p")
        co_image = tuple(int(x) for x in P.T * ImmutableMatrix(list(target.coroots[i])))
        if co_image != tuple(q * x for x in source.coroots[j]):
            raise ConsistencyFailure(f"φᵗʳ does not send α∨ to q_α·(α†)∨ for root {alpha}")
        root_dagger[i] = j
        exponents[i] = q
    return root_dagger, exponents


# ---------------------------------------------------------------------------
# σ と分類
# ---------------------------------------------------------------------------


def induced_sigma(f):
    """σ(w_s) = w_{s†} を返し、φ·M′_{s†} = M_s·φ を生成元ごとに確かめる"""
    for s, t in enumerate(f.dagger):
        if f.P * f.source.weyl_gens[t] != f.target.weyl_gens[s] * f.P:
            raise ConsistencyFailure(f"φ∘σ(w) ≠ w∘φ for generator {s + 1}")
    return tuple(f.dagger)


def twist_class(cartan, dagger):
    """† から "untwisted" / "twisted" / "very-twisted" と ordinary かどうかを返す"""
    r = len(dagger)
    orbit_of = {}
    for s in range(r):
        if s in orbit_of:
            continue
        orbit, t = [], s
        while t not in orbit:
            orbit.append(t)
            t = dagger[t]
        for t in orbit:
            orbit_of[t] = s
    ordinary = all(
        cartan.c(s, t) * cartan.c(t, s) in (0, 1)
        for s in range(r)
        for t in range(r)
        if s != t and orbit_of[s] == orbit_of[t]
    )
    if all(dagger[s] == s for s in range(r)):
        return "untwisted", ordinary
    return ("twisted" if ordinary else "very-twisted"), ordinary


@dataclass(frozen=True)
class IsogenyClassification:
    central: bool
    isomorphism: bool
    frobenius: int = None
    steinberg: tuple = None
    q: QuadNum = None
    twist: str = None
    ordinary: bool = None

    def to_dict(self):
        return {
            "central": self.central,
            "isomorphism": self.isomorphism,
            "frobenius": self.frobenius,
            "steinberg": None if self.steinberg is None else list(self.steinberg),
            "q": None if self.q is None else self.q.to_power_string(),
            "twist": self.twist,
            "ordinary": self.ordinary,
        }


def is_central(f):
    return all(q == 1 for q in f.root_exponents)


def is_isomorphism(f):
    return is_central(f) and abs(det(f.P)) == 1


def steinberg_exponent(P, p, bound=None):
    """P^d = p^m·I（m ≥ 1）となる最小の d ≤ bound について (d, m)"""
    if p == 1:
        return None
    bound = config.ORDER_BOUND if bound is None else bound
    n = P.rows
    power = identity(n)
    for d in range(1, bound + 1):
        power = power * P
        lam = int(power[0, 0])
        if power != identity(n) * lam:
            continue
        m = _is_power_of(lam, p)
        if m is not None and m >= 1:
            return d, m
    return None


def finite_order(M, bound=None):
    """整数（または有理）行列 M の位数（bound 以下で見つからなければ None）"""
    bound = config.ORDER_BOUND if bound is None else bound
    n = M.rows
    power = identity(n)
    for k in range(1, bound + 1):
        power = power * M
        if power == identity(n):
            return k
    return None


def _permutes(D, M, coroots=False):
    vectors = D.coroots if coroots else D.roots
    lookup = D.coroot_index if coroots else D.root_index
    images = set()
    for v in vectors:
        i = lookup(tuple(int(x) for x in M * ImmutableMatrix(list(v))))
        if i is None:
            return False
        images.add(i)
    return len(images) == len(vectors)


def isogeny_q(f):
    """|det P|^(1/n) を QuadNum で返す（p の半整数冪にならなければ None）"""
    n = f.P.rows
    d = abs(det(f.P))
    k = _is_power_of(d, f.p)
    if k is None:
        return None
    if f.p == 1:
        return QuadNum(1)
    if (2 * k) % n:
        return None
    return QuadNum.prime_power(f.p, 2 * k // n, 2)


def twisted_components(f):
    """† で移り合う既約成分をまとめた S の分割"""
    pending = [set(c) for c in dynkin_diagram(f.target.cartan).components()]
    blocks = []
    while pending:
        block = pending.pop(0)
        grown = True
        while grown:
            image = {f.dagger[s] for s in block}
            hit = [c for c in pending if c & image]
            grown = bool(hit)
            for c in hit:
                block |= c
                pending.remove(c)
        blocks.append(tuple(sorted(block)))
    return sorted(blocks)


def classify_isogeny(f):
    """自己同種写像を分類する

    Raises:
        NotEndo: source と target が異なる
    """
    if not f.is_endo:
        raise NotEndo("classification of Frobenius/Steinberg type needs source = target")
    central = is_central(f)
    isomorphism = central and abs(det(f.P)) == 1

    frobenius = None
    m = None
    if f.p != 1 and len(set(f.q_simple)) == 1:
        m = _is_power_of(f.q_simple[0], f.p)
    elif f.p != 1 and not f.q_simple:
        # ルートのないデータ: P の成分から m を読む
        m = _scalar_power(f.P, f.p)
    if m is not None and m >= 1:
        P0 = f.P / f.p**m
        if (
            is_integral(P0)
            and finite_order(P0) is not None
            and _permutes(f.target, P0)
            and _permutes(f.target, P0.T, coroots=True)
        ):
            frobenius = m

    steinberg = steinberg_exponent(f.P, f.p)
    q = isogeny_q(f) if steinberg is not None else None
    if q is not None:
        for block in twisted_components(f):
            product = QuadNum(math.prod(f.q_simple[s] for s in block))
            if q ** len(block) != product:
                raise ConsistencyFailure(f"q^|S_i| = {q ** len(block)} but ∏ q_s = {product} on {block}")
    twist, ordinary = twist_class(f.target.cartan, f.dagger)
    return IsogenyClassification(central, isomorphism, frobenius, steinberg, q, twist, ordinary)


def _scalar_power(P, p):
    """P の成分の最大公約数から p^m を読む（トーラスの場合）"""
    g = 0
    for x in P:
        g = math.gcd(g, int(x))
    m = 0
    while g and g % p == 0:
        g //= p
        m += 1
    return m


# ---------------------------------------------------------------------------
# 生成ヘルパーと例外的同種写像
# ---------------------------------------------------------------------------


def scalar_isogeny(D, p, m=1):
    """P = p^m·I, P° = p^m·I"""
    q = p**m
    return validate_isogeny(D, D, p, identity(D.rank) * q, identity(D.base_size) * q)


def from_permutation(D, pi, p=1):
    """Dynkin 図形の自己同型 π を D 上の p = 1 の同種写像に持ち上げる"""
    witness = lift_permutation(D, D, pi)
    if witness is None or witness is Indeterminate:
        raise BadParams(f"diagram automorphism {pi} does not lift to this root datum")
    return validate_isogeny(D, D, p, witness.P, witness.Pcirc)


def restriction_matrix_gl_to_sl(n):
    """GL_n の指標を SL_n のトーラスに制限する行列（= GL_n の Ǎ）

    Returns:
        (GL_n のデータ, SL_n のデータ, P)
    """
    gl = gl_datum(n)
    sl = sc_datum(standard_cartan("A", n - 1), f"SL({n})")
    return gl, sl, gl.Acheck


_EXCEPTIONAL_PRIMES = {"C2": 2, "G2": 3, "F4": 2, "BNCN": 2}


def exceptional_catalog(kind, m=0, n=3):
    """例外的同種写像

    Args:
        kind (str): "C2", "G2", "F4", "BnCn"
        m (int): 冪の指数
        n (int): BnCn の階数

    Returns:
        PIsogeny
    """
    key = str(kind).upper()
    if key not in _EXCEPTIONAL_PRIMES:
        raise BadType(f"no exceptional isogeny of type {kind!r}")
    if m < 0:
        raise BadParams("m must be ≥ 0")
    p = _EXCEPTIONAL_PRIMES[key]
    a = p**m

    if key == "BNCN":
        if n < 2:
            raise BadParams("BnCn needs n ≥ 2")
        source = sc_datum(standard_cartan("B", n), f"Spin({2 * n + 1})")
        target = sc_datum(standard_cartan("C", n), f"Sp({2 * n})")
        P = ImmutableMatrix.diag(*([a] + [2 * a] * (n - 1)))
        return validate_isogeny(source, target, p, P, P)

    if key == "F4":
        D = adjoint_datum(standard_cartan("F", 4))
        qs = [a, a, 2 * a, 2 * a]
        rows = [[0] * 4 for _ in range(4)]
        for s in range(4):
            rows[s][3 - s] = qs[s]
        P = int_mat(rows)
    else:
        D = adjoint_datum(standard_cartan(key[0], 2))
        P = int_mat([[0, a], [p * a, 0]])

    square = P * P
    if square != identity(D.rank) * p ** (2 * m + 1):
        raise ConsistencyFailure(f"P_m² ≠ p^(2m+1)·I for {kind}")
    return validate_isogeny(D, D, p, P, P)


def dual_morphism(f):
    """Q = Pᵗʳ, Q° = (P°)ᵗʳ を双対データの間で検証し直す"""
    return validate_isogeny(dual_datum(f.target), dual_datum(f.source), f.p, f.P.T, f.Pcirc.T)


# ---------------------------------------------------------------------------
# 根データの準同型と正則埋め込み
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MorphismCheckReport:
    is_hom_of_root_data: bool
    is_surjective: bool
    cokernel_invariants: tuple
    cokernel_free_rank: int
    no_p_prime_torsion: bool

    @property
    def ok(self):
        return self.is_hom_of_root_data and self.is_surjective and self.no_p_prime_torsion

    def to_dict(self):
        return {
            "is_hom_of_root_data": self.is_hom_of_root_data,
            "is_surjective": self.is_surjective,
            "cokernel_invariants": list(self.cokernel_invariants),
            "cokernel_free_rank": self.cokernel_free_rank,
            "no_p_prime_torsion": self.no_p_prime_torsion,
            "regular_embedding": self.ok,
        }


def _is_hom_of_root_data(source, target, P):
    if len(source.roots) != len(target.roots):
        return False
    hit = set()
    for j, beta in enumerate(source.roots):
        i = target.root_index(tuple(int(x) for x in P * ImmutableMatrix(list(beta))))
        if i is None or i in hit:
            return False
        hit.add(i)
        co = tuple(int(x) for x in P.T * ImmutableMatrix(list(target.coroots[i])))
        if co != source.coroots[j]:
            return False
    return True


def morphism_check(source, target, P, p=1):
    """X′ → X の行列 P が根データの準同型か、全射か、X′/ZR′ に p′-ねじれがないか"""
    P = int_mat(P)
    if P.shape != (target.rank, source.rank):
        raise BadParams(f"P must be {target.rank}×{source.rank}")
    free, torsion = cokernel_invariants(P.T, ambient=target.rank)
    return MorphismCheckReport(
        is_hom_of_root_data=_is_hom_of_root_data(source, target, P),
        is_surjective=free == 0 and not torsion,
        cokernel_invariants=tuple(torsion),
        cokernel_free_rank=free,
        no_p_prime_torsion=center_is_connected(source, p),
    )


def regular_embedding_check(source, target, P, p):
    report = morphism_check(source, target, P, p)
    return report.ok, report


@dataclass(frozen=True)
class RegularEmbedding:
    datum: object
    inclusion: ImmutableMatrix
    report: MorphismCheckReport


def regular_embedding_build(D, p):
    """X′ = {(λ, μ) ∈ X ⊕ X : λ - μ ∈ L_p} で連結中心を持つ D′ を作る

    L_p は X/ZR の p-準素成分の X での逆像。ルートは (α, 0)、包含写像は (λ, μ) ↦ λ。
    """
    if not D.is_semisimple:
        raise NotSemisimple("regular_embedding_build needs a semisimple root datum")
    n = D.rank
    snf = smith_normal_form(D.A.T)
    scale = []
    for d in snf.invariant_factors:
        while p > 1 and d % p == 0:
            d //= p
        scale.append(d)
    Lp = rational_inverse(snf.U) * ImmutableMatrix.diag(*scale)
    if not is_integral(Lp):
        raise ConsistencyFailure("preimage lattice basis is not integral")

    basis = ImmutableMatrix(identity(n).row_join(Lp).col_join(identity(n).row_join(ImmutableMatrix.zeros(n, n))))
    inverse = rational_inverse(basis)
    zeros = [0] * n
    new_A, new_Ac = [], []
    for s in range(D.base_size):
        a = ImmutableMatrix(to_rows(D.A)[s] + zeros)
        ac = ImmutableMatrix(to_rows(D.Acheck)[s] + zeros)
        coords = inverse * a
        if not is_integral(coords):
            raise ConsistencyFailure("root (α, 0) is not in X′")
        new_A.append([int(x) for x in coords])
        new_Ac.append([int(x) for x in basis.T * ac])

    name = f"{D.label()} regular embedding (p={p})"
    big = build_datum(new_A, new_Ac, name)
    inclusion = ImmutableMatrix(identity(n).row_join(ImmutableMatrix.zeros(n, n)) * basis)
    ok, report = regular_embedding_check(big, D, inclusion, p)
    if not ok or not center_is_connected(big, p):
        raise ConsistencyFailure("constructed datum does not give a regular embedding")
    return RegularEmbedding(big, inclusion, report)
