"""
整数・有理数・二次体 Q(√p) 上の厳密な線形代数と一変数多項式

他の全モジュールの演算基盤。行列は sympy の ImmutableMatrix（整数成分）を
IntMat として使い、Smith 標準形・Hermite 標準形・特性多項式・円分多項式は sympy に任せる。
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import (
    ImmutableMatrix,
    Matrix,
    Poly,
    Rational,
    Symbol,
    cyclotomic_poly,
    expand,
    factorint,
    isprime,
    sqrt,
    totient,
    zeros,
)
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from errors import BadParams, ConsistencyFailure, MixedRadicand

Y = Symbol("y")


# ---------------------------------------------------------------------------
# IntMat
# ---------------------------------------------------------------------------

IntMat = ImmutableMatrix


def int_mat(rows, cols=None):
    """整数行列を作る

    Args:
        rows: 行のリスト、または sympy の行列
        cols (int): 行が0本のときの列数

    Returns:
        ImmutableMatrix: 整数成分の行列
    """
    if isinstance(rows, (Matrix, ImmutableMatrix)):
        m = ImmutableMatrix(rows)
    else:
        rows = [list(r) for r in rows]
        if not rows:
            return ImmutableMatrix(0, cols or 0, [])
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise BadParams("ragged matrix rows")
        m = ImmutableMatrix(rows)
    for x in m:
        if not x.is_integer:
            raise BadParams(f"non-integer matrix entry {x}")
    return m


def identity(n):
    return ImmutableMatrix.eye(n)


def to_rows(m):
    """Python の int のリストに変換"""
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def to_vector(m):
    return tuple(int(x) for x in m)


def block_diag(*mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m
        r += m.rows
        c += m.cols
    return ImmutableMatrix(out)


def det(m):
    return int(m.det()) if m.rows else 1


def rational_inverse(m):
    return ImmutableMatrix(m.inv())


def is_integral(m):
    return all(x.is_integer for x in m)


def is_unimodular(m):
    return m.rows == m.cols and abs(det(m)) == 1


def mat_power(m, k):
    result = identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def is_monomial(m):
    """各行・各列にちょうど1つの非零成分があるか"""
    if m.rows != m.cols:
        return False
    rows = to_rows(m)
    for i in range(m.rows):
        if sum(1 for x in rows[i] if x != 0) != 1:
            return False
        if sum(1 for r in rows if r[i] != 0) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Smith normal form と格子
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    S: ImmutableMatrix
    U: ImmutableMatrix
    V: ImmutableMatrix
    shape: tuple

    @property
    def invariant_factors(self):
        return tuple(int(self.S[i, i]) for i in range(min(self.shape)))

    @property
    def rank(self):
        return sum(1 for d in self.invariant_factors if d != 0)

    @property
    def torsion(self):
        return [d for d in self.invariant_factors if d > 1]


def smith_normal_form(m):
    """Smith 標準形 U·M·V = S を求める

    対角成分は非負で d1 | d2 | ... を満たす。U, V はユニモジュラ。
    """
    m = int_mat(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return SmithForm(m, identity(rows), identity(cols), (rows, cols))

    dm = DomainMatrix.from_Matrix(Matrix(m)).convert_to(ZZ)
    smf, s, t = smith_normal_decomp(dm)
    S = Matrix(smf.to_Matrix())
    U = Matrix(s.to_Matrix())
    V = Matrix(t.to_Matrix())
    for i in range(min(rows, cols)):
        if S[i, i] < 0:
            S[i, i] = -S[i, i]
            U[i, :] = -U[i, :]

    S, U, V = ImmutableMatrix(S), ImmutableMatrix(U), ImmutableMatrix(V)
    if U * m * V != S:
        raise ConsistencyFailure("Smith decomposition does not reproduce S")
    return SmithForm(S, U, V, (rows, cols))


def cokernel_invariants(m, ambient=None):
    """行ベクトルが張る部分格子 L ⊆ Z^n について Z^n / L の不変量

    Returns:
        tuple: (自由部分の階数, 1より大きいねじれ不変因子のリスト)
    """
    n = m.cols if ambient is None else ambient
    if m.rows == 0:
        return n, []
    snf = smith_normal_form(m)
    return n - snf.rank, snf.torsion


def kernel_basis(m):
    """整数行列の右核の Z 基底（列ベクトルのリスト）"""
    snf = smith_normal_form(m)
    return [tuple(int(x) for x in snf.V[:, j]) for j in range(snf.rank, m.cols)]


def lattice_basis(generators):
    """列ベクトルで与えた生成系が張る格子の基底（Hermite 標準形）"""
    return ImmutableMatrix(hermite_normal_form(Matrix(generators)))


def solve_integer_system(m, b):
    """整数解 M·x = b をすべて求める

    Returns:
        (特殊解, 核の基底) のタプル。整数解がなければ None。
    """
    snf = smith_normal_form(m)
    c = snf.U * ImmutableMatrix(list(b))
    z = [0] * m.cols
    for i in range(m.rows):
        d = snf.invariant_factors[i] if i < min(m.shape) else 0
        if d == 0:
            if c[i] != 0:
                return None
            continue
        if c[i] % d != 0:
            return None
        z[i] = int(c[i]) // d
    x0 = tuple(int(v) for v in snf.V * ImmutableMatrix(z))
    kernel = [tuple(int(x) for x in snf.V[:, j]) for j in range(snf.rank, m.cols)]
    return x0, kernel


def reduce_basis(vectors):
    """LLL 簡約した格子基底（一次独立なベクトルのリスト）"""
    if not vectors:
        return []
    dm = DomainMatrix([[ZZ(int(x)) for x in v] for v in vectors], (len(vectors), len(vectors[0])), ZZ)
    reduced = dm.lll().to_Matrix()
    return [tuple(int(x) for x in reduced[i, :]) for i in range(reduced.rows)]


def nearest_translate(x0, basis):
    """x0 + Σ c_i b_i のノルムを各基底ベクトルについて順に丸めで小さくする"""
    x = list(x0)
    for _ in range(2):
        for b in basis:
            norm = sum(v * v for v in b)
            if norm == 0:
                continue
            c = round(Fraction(-sum(u * v for u, v in zip(x, b)), norm))
            if c:
                x = [u + c * v for u, v in zip(x, b)]
    return tuple(x)


# ---------------------------------------------------------------------------
# QuadNum: (a + b√p)/d
# ---------------------------------------------------------------------------

_Q_PATTERN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(-?\d+)\s*(?:/\s*([12]))?)?\s*$")


@lru_cache(maxsize=None)
def _check_radicand(p):
    if not isprime(p):
        raise MixedRadicand(f"radicand {p} is not a prime")
    return p


def _common_radicand(p1, p2):
    if p1 and p2 and p1 != p2:
        raise MixedRadicand(f"√{p1} and √{p2} cannot be mixed")
    return p1 or p2


@dataclass(frozen=True, eq=False)
class QuadNum:
    """二次体 Q(√p) の元 (a + b√p)/d"""

    a: int
    b: int = 0
    p: int = 0
    d: int = 1

    def __post_init__(self):
        a, b, p, d = int(self.a), int(self.b), int(self.p), int(self.d)
        if d == 0:
            raise ZeroDivisionError("QuadNum with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        if b == 0:
            p = 0
        elif p == 0:
            raise MixedRadicand("irrational part without radicand")
        else:
            _check_radicand(p)
        g = math.gcd(math.gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)

    # --- 生成 -------------------------------------------------------------

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, 0, x.denominator)
        if hasattr(x, "is_Rational") and x.is_Rational:
            return cls(int(x.p), 0, 0, int(x.q))
        if hasattr(x, "free_symbols"):
            return cls.from_sympy(x)
        raise TypeError(f"cannot convert {x!r} to QuadNum")

    @classmethod
    def sqrt_prime(cls, p):
        return cls(0, 1, p, 1)

    @classmethod
    def prime_power(cls, p, a, b=1):
        """p^(a/b)（b は 1 か 2）"""
        if b not in (1, 2):
            raise BadParams("only exponents a/1 and a/2 are supported")
        if b == 2 and a % 2 == 0:
            a, b = a // 2, 1
        if b == 1:
            return cls(p) ** a
        return cls(p) ** ((a - 1) // 2) * cls.sqrt_prime(p)

    @classmethod
    def parse(cls, text):
        """"7", "2^3", "2^1/2" の形式を読む"""
        match = _Q_PATTERN.match(str(text))
        if not match:
            raise BadParams(f"cannot parse q = {text!r}; expected p^a/b")
        base = int(match.group(1))
        if match.group(2) is None:
            return cls(base)
        exponent = int(match.group(2))
        den = int(match.group(3) or 1)
        if den == 2 and exponent % 2 and not isprime(base):
            raise BadParams(f"√ of non-prime base {base}")
        return cls.prime_power(base, exponent, den)

    @classmethod
    def from_sympy(cls, expr, p=None):
        e = expand(expr)
        if e.is_Rational:
            return cls(int(e.p), 0, 0, int(e.q))
        radicands = [int(s.base) for s in e.atoms() if s.is_Pow and s.exp == Rational(1, 2)]
        if p is None:
            if len(set(radicands)) != 1:
                raise MixedRadicand(f"{expr} is not in a single quadratic field")
            p = radicands[0]
        root = sqrt(p)
        b = e.coeff(root)
        a = expand(e - b * root)
        if not (a.is_Rational and b.is_Rational):
            raise MixedRadicand(f"{expr} is not in Q(√{p})")
        den = math.lcm(int(a.q), int(b.q))
        return cls(int(a.p) * (den // int(a.q)), int(b.p) * (den // int(b.q)), p, den)

    # --- 性質 -------------------------------------------------------------

    @property
    def is_rational(self):
        return self.b == 0

    @property
    def is_integer(self):
        return self.b == 0 and self.d == 1

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def sign(self):
        a, b, p = self.a, self.b, self.p
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        return sa if a * a > b * b * p else sb

    def to_fraction(self):
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.d)

    def to_sympy(self):
        value = Rational(self.a, self.d)
        if self.b:
            value += Rational(self.b, self.d) * sqrt(self.p)
        return value

    def __int__(self):
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.a

    # --- 演算 -------------------------------------------------------------

    def __add__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        p = _common_radicand(self.p, o.p)
        return QuadNum(
            self.a * o.d + o.a * self.d,
            self.b * o.d + o.b * self.d,
            p,
            self.d * o.d,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.p, self.d)

    def __sub__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return QuadNum.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        p = _common_radicand(self.p, o.p)
        return QuadNum(
            self.a * o.a + self.b * o.b * p,
            self.a * o.b + self.b * o.a,
            p,
            self.d * o.d,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        norm = self.a * self.a - self.b * self.b * self.p
        return QuadNum(self.d * self.a, -self.d * self.b, self.p, norm)

    def __truediv__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadNum.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadNum(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # --- 比較 -------------------------------------------------------------

    def _key(self):
        return (self.a, self.b, self.p, self.d)

    def __eq__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        if self.b == 0 and self.d == 1:
            return hash(self.a)
        return hash(self._key())

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # --- 表示 -------------------------------------------------------------

    def prime_power_exponent(self):
        """値が ℓ^(k/2)（ℓ 素数, k 整数）なら (ℓ, k)、それ以外は None"""
        if self.sign() <= 0:
            return None
        if self.b == 0:
            square = Fraction(self.a, self.d) ** 2
        elif self.a == 0:
            square = Fraction(self.b * self.b * self.p, self.d * self.d)
        else:
            return None
        num = factorint(square.numerator)
        den = factorint(square.denominator)
        primes = set(num) | set(den)
        if len(primes) != 1:
            return None
        ell = primes.pop()
        k = num.get(ell, 0) - den.get(ell, 0)
        if self.b and ell != self.p:
            return None
        return ell, k

    def to_power_string(self):
        found = self.prime_power_exponent()
        if found is None or found[1] == 0:
            return str(self)
        ell, k = found
        if k % 2 == 0:
            return f"{ell}^{k // 2}"
        return f"{ell}^{k}/2"

    def __str__(self):
        if self.b == 0:
            return str(self.a) if self.d == 1 else f"{self.a}/{self.d}"
        root = f"√{self.p}" if abs(self.b) == 1 else f"{abs(self.b)}√{self.p}"
        if self.a == 0:
            body = root if self.b > 0 else f"-{root}"
        else:
            body = f"{self.a} {'+' if self.b > 0 else '-'} {root}"
        if self.d == 1:
            return body
        return f"({body})/{self.d}" if self.a else f"{body}/{self.d}"

    def __repr__(self):
        return f"QuadNum({self})"


ZERO = QuadNum(0)
ONE = QuadNum(1)


# ---------------------------------------------------------------------------
# QuadMat: スカラー × 整数行列
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadMat:
    """QuadNum 成分の行列を scalar · mat（mat は整数行列）で保持する

    成分の公約数は scalar に寄せ、mat の最初の非零成分を正にそろえるので表現は一意。
    """

    scalar: QuadNum
    mat: ImmutableMatrix

    def __post_init__(self):
        scalar = QuadNum.coerce(self.scalar)
        mat = int_mat(self.mat)
        entries = [int(x) for x in mat]
        nonzero = [x for x in entries if x]
        if not nonzero or scalar.is_zero():
            scalar, mat = ONE, ImmutableMatrix.zeros(*mat.shape)
        else:
            g = 0
            for x in nonzero:
                g = math.gcd(g, x)
            if nonzero[0] < 0:
                g = -g
            if g != 1:
                mat = ImmutableMatrix(mat.applyfunc(lambda x: x / g))
                scalar = scalar * g
        object.__setattr__(self, "scalar", scalar)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_int(cls, m):
        return cls(ONE, int_mat(m))

    @classmethod
    def identity(cls, n):
        return cls(ONE, identity(n))

    @classmethod
    def from_entries(cls, rows):
        """QuadNum（または整数・分数）の2次元リストから作る

        全成分が1つの QuadNum の有理数倍でなければ MixedRadicand。
        """
        grid = [[QuadNum.coerce(x) for x in row] for row in rows]
        n_rows = len(grid)
        n_cols = len(grid[0]) if grid else 0
        pivot = next((x for row in grid for x in row if not x.is_zero()), None)
        if pivot is None:
            return cls(ONE, ImmutableMatrix.zeros(n_rows, n_cols))
        ratios = []
        for row in grid:
            ratio_row = []
            for x in row:
                r = x / pivot
                if not r.is_rational:
                    raise MixedRadicand(
                        "matrix entries are not rational multiples of one quadratic number"
                    )
                ratio_row.append(r.to_fraction())
            ratios.append(ratio_row)
        den = 1
        for row in ratios:
            for r in row:
                den = math.lcm(den, r.denominator)
        mat = ImmutableMatrix([[int(r * den) for r in row] for row in ratios])
        return cls(pivot / den, mat)

    @property
    def shape(self):
        return self.mat.shape

    @property
    def radicand(self):
        return self.scalar.p

    def entry(self, i, j):
        return self.scalar * int(self.mat[i, j])

    def entries(self):
        return [[self.entry(i, j) for j in range(self.mat.cols)] for i in range(self.mat.rows)]

    def to_sympy(self):
        return ImmutableMatrix(self.mat * self.scalar.to_sympy())

    def is_integral(self):
        return all((self.scalar * int(x)).is_integer for x in self.mat)

    def to_int_matrix(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return ImmutableMatrix(self.mat.applyfunc(lambda x: int(self.scalar * int(x))))

    def __matmul__(self, other):
        if isinstance(other, QuadMat):
            return QuadMat(self.scalar * other.scalar, self.mat * other.mat)
        return QuadMat(self.scalar, self.mat * int_mat(other))

    def __rmatmul__(self, other):
        return QuadMat(self.scalar, int_mat(other) * self.mat)

    def __neg__(self):
        return QuadMat(-self.scalar, self.mat)

    def scaled(self, factor):
        return QuadMat(self.scalar * QuadNum.coerce(factor), self.mat)

    def transpose(self):
        return QuadMat(self.scalar, self.mat.T)

    @property
    def T(self):
        return self.transpose()

    def inverse(self):
        d = det(self.mat)
        if d == 0:
            raise ZeroDivisionError("singular matrix")
        return QuadMat(self.scalar.inverse() / d, ImmutableMatrix(self.mat.adjugate()))

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        return QuadMat(self.scalar**k, mat_power(self.mat, k))

    def is_identity(self):
        n = self.mat.rows
        if self.mat.rows != self.mat.cols:
            return False
        lam = int(self.mat[0, 0]) if n else 1
        if self.mat != identity(n) * lam:
            return False
        return self.scalar * lam == ONE

    def apply_int(self, v):
        """整数部分 mat·v（スカラー倍は呼び出し側で扱う）"""
        return tuple(int(x) for x in self.mat * ImmutableMatrix(list(v)))

    @staticmethod
    def block_diag(first, second):
        ratio = second.scalar / first.scalar
        if not ratio.is_rational:
            raise MixedRadicand("block scalars are not commensurable")
        ratio = ratio.to_fraction()
        u, v = ratio.numerator, ratio.denominator
        return QuadMat(
            first.scalar / v,
            block_diag(first.mat * v, second.mat * u),
        )

    def __str__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.entries()]
        return "[" + ", ".join(rows) + "]"


# ---------------------------------------------------------------------------
# QPoly
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def quad_domain(p):
    """係数体: p = 0 なら Q、素数なら Q(√p)"""
    if p == 0:
        return QQ
    return QQ.algebraic_field(sqrt(p))


@dataclass(frozen=True, eq=False)
class QPoly:
    """Q(√p) 係数の一変数多項式（変数 y）"""

    poly: Poly
    radicand: int = 0

    @classmethod
    def from_coeffs(cls, coeffs, radicand=None):
        """次数の低い順の係数リストから作る"""
        coeffs = [QuadNum.coerce(c) for c in coeffs]
        p = 0 if radicand is None else radicand
        for c in coeffs:
            p = _common_radicand(p, c.p)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        domain = quad_domain(p)
        if not coeffs:
            return cls(Poly(0, Y, domain=domain), p)
        poly = Poly([c.to_sympy() for c in reversed(coeffs)], Y, domain=domain)
        return cls(poly, p)

    @classmethod
    def from_poly(cls, poly, radicand=0):
        return cls(Poly(poly, Y, domain=quad_domain(radicand)), radicand)

    @classmethod
    def constant(cls, c):
        return cls.from_coeffs([c])

    @classmethod
    def monomial(cls, k, c=1):
        return cls.from_coeffs([0] * k + [c])

    @classmethod
    def linear_power(cls, root, k):
        """(y - root)^k"""
        return cls.from_coeffs([-QuadNum.coerce(root), 1]) ** k

    def coeffs(self):
        """次数の低い順の QuadNum 係数"""
        if self.poly.is_zero:
            return []
        return [
            QuadNum.from_sympy(c, self.radicand or None)
            for c in reversed(self.poly.all_coeffs())
        ]

    def degree(self):
        return -1 if self.poly.is_zero else int(self.poly.degree())

    def is_zero(self):
        return self.poly.is_zero

    def leading(self):
        cs = self.coeffs()
        return cs[-1] if cs else ZERO

    def is_integral(self):
        return all(c.is_integer for c in self.coeffs())

    def int_coeffs(self):
        return [int(c) for c in self.coeffs()]

    def _unify(self, other):
        if not isinstance(other, QPoly):
            other = QPoly.constant(other)
        p = _common_radicand(self.radicand, other.radicand)
        domain = quad_domain(p)
        return self.poly.set_domain(domain), other.poly.set_domain(domain), p

    def __add__(self, other):
        a, b, p = self._unify(other)
        return QPoly(a + b, p)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, p = self._unify(other)
        return QPoly(a - b, p)

    def __rsub__(self, other):
        return QPoly.constant(other) - self

    def __neg__(self):
        return QPoly(-self.poly, self.radicand)

    def __mul__(self, other):
        a, b, p = self._unify(other)
        return QPoly(a * b, p)

    __rmul__ = __mul__

    def __pow__(self, k):
        return QPoly(self.poly**k, self.radicand)

    def __divmod__(self, other):
        a, b, p = self._unify(other)
        q, r = a.div(b)
        return QPoly(q, p), QPoly(r, p)

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ConsistencyFailure(f"{other.to_str()} does not divide {self.to_str()}")
        return q

    def divides(self, other):
        """self が other を割り切るか"""
        return divmod(other, self)[1].is_zero()

    def lcm(self, other):
        a, b, p = self._unify(other)
        return QPoly(a.lcm(b), p)

    def compose_neg(self):
        """f(-y)"""
        return QPoly.from_coeffs(
            [c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs())], self.radicand
        )

    def compose_power(self, r):
        """f(y^r)"""
        out = []
        for c in self.coeffs():
            out.extend([c] + [ZERO] * (r - 1))
        return QPoly.from_coeffs(out, self.radicand)

    def evaluate(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            try:
                other = QPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(tuple(self.coeffs()))

    def to_str(self):
        return str(self.poly.as_expr()).replace("**", "^")

    __str__ = to_str

    def __repr__(self):
        return f"QPoly({self.to_str()})"


def poly_eval(f, x):
    """Horner 法による厳密な評価"""
    x = QuadNum.coerce(x)
    acc = ZERO
    for c in reversed(f.coeffs()):
        acc = acc * x + c
    return acc


def char_poly(m):
    """det(y·I - M)

    Args:
        m: IntMat, QuadMat、または QuadNum 成分の2次元リスト
    """
    if isinstance(m, QuadMat):
        n = m.mat.rows
        base = DomainMatrix.from_Matrix(Matrix(m.mat)).convert_to(ZZ).charpoly() if n else [1]
        coeffs = [QuadNum(int(base[k])) * m.scalar**k for k in range(n + 1)]
        return QPoly.from_coeffs(list(reversed(coeffs)), m.radicand)
    if isinstance(m, (Matrix, ImmutableMatrix)) and is_integral(m):
        return char_poly(QuadMat.from_int(m))
    grid = [[QuadNum.coerce(x) for x in row] for row in (m.tolist() if hasattr(m, "tolist") else m)]
    try:
        return char_poly(QuadMat.from_entries(grid))
    except MixedRadicand:
        pass
    p = 0
    for row in grid:
        for x in row:
            p = _common_radicand(p, x.p)
    domain = quad_domain(p)
    n = len(grid)
    dm = DomainMatrix(
        [[domain.from_sympy(x.to_sympy()) for x in row] for row in grid], (n, n), domain
    )
    coeffs = [QuadNum.from_sympy(domain.to_sympy(c), p or None) for c in dm.charpoly()]
    return QPoly.from_coeffs(list(reversed(coeffs)), p)


# ---------------------------------------------------------------------------
# 円分多項式による分解
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(d):
    return Poly(cyclotomic_poly(d, Y, polys=True), Y, domain=ZZ)


@dataclass(frozen=True)
class CyclotomicFactorization:
    """f = scalar · y^y_power · ∏ Φ_d · remainder"""

    y_power: int
    factors: tuple
    scalar: int = 1
    remainder: object = None

    def multiplicities(self):
        counts = {}
        for d in self.factors:
            counts[d] = counts.get(d, 0) + 1
        return counts

    def expand(self):
        result = QPoly.monomial(self.y_power, self.scalar)
        for d in self.factors:
            result = result * QPoly.from_poly(cyclotomic(d))
        if self.remainder is not None:
            result = result * self.remainder
        return result

    def to_str(self):
        parts = []
        if self.scalar != 1:
            parts.append(str(self.scalar))
        if self.y_power:
            parts.append("y" if self.y_power == 1 else f"y^{self.y_power}")
        for d, k in sorted(self.multiplicities().items()):
            parts.append(f"Φ{d}" if k == 1 else f"Φ{d}^{k}")
        if self.remainder is not None:
            parts.append(f"({self.remainder.to_str()})")
        return "·".join(parts) or "1"

    def to_dict(self):
        return {
            "y_power": self.y_power,
            "cyclotomic": {str(d): k for d, k in sorted(self.multiplicities().items())},
            "scalar": self.scalar,
            "remainder": None if self.remainder is None else self.remainder.to_str(),
        }


def cyclotomic_factor(f):
    """整数係数多項式を y の冪と円分多項式 Φ_d の積に分解する

    Φ_d の試し割りは d ≤ 2·deg(f) まで。割り切れずに残った部分は remainder として返す。
    """
    if f.is_zero():
        raise BadParams("cannot factor the zero polynomial")
    if not f.is_integral():
        raise BadParams("cyclotomic_factor needs integer coefficients")
    coeffs = f.int_coeffs()
    y_power = 0
    while coeffs[y_power] == 0:
        y_power += 1
    g = Poly(list(reversed(coeffs[y_power:])), Y, domain=ZZ)
    bound = max(2 * f.degree(), 1)

    factors = []
    for d in range(1, bound + 1):
        phi = cyclotomic(d)
        deg = int(totient(d))
        while g.degree() >= deg and g.rem(phi).is_zero:
            g = g.quo(phi)
            factors.append(d)

    if g.degree() == 0:
        return CyclotomicFactorization(y_power, tuple(factors), int(g.LC()), None)
    content, primitive = g.primitive()
    if primitive.LC() < 0:
        content, primitive = -content, -primitive
    return CyclotomicFactorization(
        y_power, tuple(factors), int(content), QPoly.from_poly(primitive)
    )
