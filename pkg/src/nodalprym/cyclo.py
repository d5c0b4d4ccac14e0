"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) with
rational coefficients (``gmpy2.mpq``).  Mixed-level arithmetic embeds both
operands at the lcm of their levels.
"""
from __future__ import annotations

import re
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

__all__ = [
    "CycloNum",
    "DivisionByZero",
    "NonDivisibleLevel",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "embed",
    "inverse",
    "minimal_polynomial",
    "rational",
    "descend",
    "format_cyclo",
    "parse_cyclo",
]


class DivisionByZero(ZeroDivisionError):
    pass


class NonDivisibleLevel(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _upoly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; ascending coefficient lists
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as an ascending tuple of integer coefficients."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly, rem = _upoly_divmod_int(poly, list(cyclotomic_polynomial(d)))
        assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[mpq, ...], ...]:
    """Power-basis coordinates of zeta_n^k for 0 <= k < n."""
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    vec = [mpq(0)] * phi
    vec[0] = mpq(1)
    for _ in range(n):
        rows.append(tuple(vec))
        # multiply by zeta: shift, then fold the top coefficient with Phi_n
        top = vec[-1]
        vec = [mpq(0)] + vec[:-1]
        if top:
            for j in range(phi):
                vec[j] -= top * cyc[j]
    return tuple(rows)


def _zero(n: int) -> tuple[mpq, ...]:
    return (mpq(0),) * euler_phi(n)


class CycloNum:
    """An element of Q(zeta_level); immutable."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs):
        coeffs = tuple(mpq(c) for c in coeffs)
        if len(coeffs) != euler_phi(level):
            raise ValueError(f"level {level} needs {euler_phi(level)} coefficients, got {len(coeffs)}")
        self.level = level
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, level: int, coeffs: tuple) -> "CycloNum":
        obj = object.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, value, level: int = 1) -> "CycloNum":
        return cls._raw(level, (mpq(value),) + (mpq(0),) * (euler_phi(level) - 1))

    @classmethod
    def coerce(cls, value) -> "CycloNum":
        if isinstance(value, CycloNum):
            return value
        return cls._raw(1, (mpq(value),))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- level handling ----------------------------------------------------
    def _lift(self, other: "CycloNum") -> tuple["CycloNum", "CycloNum"]:
        if self.level == other.level:
            return self, other
        m = _lcm(self.level, other.level)
        return embed(self, m), embed(other, m)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, CycloNum):
            other = CycloNum.coerce(other)
        a, b = self._lift(other)
        if a.level == 1:
            return CycloNum._raw(1, (a.coeffs[0] + b.coeffs[0],))
        return CycloNum._raw(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, CycloNum):
            other = CycloNum.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return CycloNum.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloNum):
            other = mpq(other)
            return CycloNum._raw(self.level, tuple(c * other for c in self.coeffs))
        a, b = self._lift(other)
        if a.level == 1:
            return CycloNum._raw(1, (a.coeffs[0] * b.coeffs[0],))
        n = a.level
        phi = len(a.coeffs)
        prod = [mpq(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        table = _reduction_table(n)
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                row = table[k % n]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNum._raw(n, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycloNum):
            other = mpq(other)
            if not other:
                raise DivisionByZero("division by zero")
            return CycloNum._raw(self.level, tuple(c / other for c in self.coeffs))
        if other.level == 1:
            d = other.coeffs[0]
            if not d:
                raise DivisionByZero("division by zero")
            return CycloNum._raw(self.level, tuple(c / d for c in self.coeffs))
        return self * inverse(other)

    def __rtruediv__(self, other):
        return CycloNum.coerce(other) * inverse(self)

    def __pow__(self, e: int):
        if e < 0:
            return inverse(self) ** (-e)
        result = CycloNum.from_rational(1, self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycloNum):
            try:
                other = CycloNum.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._lift(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            low = descend(self)
            self._hash = hash((low.level, low.coeffs))
        return self._hash

    def __repr__(self):
        return f"CycloNum({format_cyclo(self)})"

    __str__ = lambda self: format_cyclo(self)  # noqa: E731


def rational(value) -> CycloNum:
    return CycloNum.coerce(value)


def root_of_unity(n: int, j: int = 1) -> CycloNum:
    """zeta_n^j at level n."""
    if n < 1:
        raise ValueError("root of unity order must be positive")
    return CycloNum._raw(n, _reduction_table(n)[j % n])


def embed(x: CycloNum, m: int) -> CycloNum:
    """Image of x under zeta_N -> zeta_m^(m/N)."""
    if m % x.level:
        raise NonDivisibleLevel(f"level {x.level} does not divide {m}")
    if m == x.level:
        return x
    step = m // x.level
    table = _reduction_table(m)
    out = [mpq(0)] * euler_phi(m)
    for i, c in enumerate(x.coeffs):
        if c:
            row = table[(i * step) % m]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return CycloNum._raw(m, tuple(out))


def _solve_rational(columns: list[tuple], target: tuple):
    """Solve sum_j x_j * columns[j] = target over Q; None when inconsistent."""
    rows = len(target)
    ncols = len(columns)
    mat = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, rows) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][-1] for i in range(r, rows)):
        return None
    sol = [mpq(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][-1]
    return sol


@lru_cache(maxsize=None)
def _subfield_basis(m: int, n: int) -> list[tuple]:
    return [embed(root_of_unity(m, i), n).coeffs for i in range(euler_phi(m))]


def descend(x: CycloNum) -> CycloNum:
    """Rewrite x at the smallest level M | N whose field contains it."""
    if x.level == 1:
        return x
    if x.is_rational():
        return CycloNum._raw(1, (x.coeffs[0],))
    for m in _divisors(x.level)[1:-1]:
        sol = _solve_rational(_subfield_basis(m, x.level), x.coeffs)
        if sol is not None:
            return CycloNum._raw(m, tuple(sol))
    return x


def _upoly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, d in enumerate(b):
                a[k + j] -= c * d
    return _upoly_trim(q), _upoly_trim(a[: len(b) - 1])


def _upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _upoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _upoly_trim([mpq(c) for c in out])


def inverse(x: CycloNum) -> CycloNum:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
    if x.is_zero():
        raise DivisionByZero("zero has no inverse")
    if x.level == 1:
        return CycloNum._raw(1, (1 / x.coeffs[0],))
    phi = euler_phi(x.level)
    r0 = [mpq(c) for c in cyclotomic_polynomial(x.level)]
    r1 = _upoly_trim(list(x.coeffs))
    s0, s1 = [], [mpq(1)]
    while len(r1) > 1:
        q, r = _upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
    # r1 is a nonzero constant since Phi_N is irreducible
    c = r1[0]
    s = [v / c for v in s1]
    _, s = _upoly_divmod(s, [mpq(v) for v in cyclotomic_polynomial(x.level)])
    s = s + [mpq(0)] * (phi - len(s))
    return CycloNum._raw(x.level, tuple(s))


def minimal_polynomial(x: CycloNum) -> tuple[mpq, ...]:
    """Monic minimal polynomial over Q, ascending coefficients."""
    powers = [CycloNum.from_rational(1, x.level).coeffs]
    p = CycloNum.from_rational(1, x.level)
    while True:
        p = p * x
        sol = _solve_rational(powers, p.coeffs)
        if sol is not None:
            return tuple(-c for c in sol) + (mpq(1),)
        powers.append(p.coeffs)


# -- canonical text form -------------------------------------------------------

def _fmt_rat(q: mpq) -> str:
    return str(q)


def format_cyclo(x: CycloNum) -> str:
    """Canonical form ``(c0 + c1*z{N} + ...)`` at the minimal level."""
    x = descend(x)
    parts = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        if i == 0:
            body = _fmt_rat(c)
        else:
            root = f"z{x.level}" if i == 1 else f"z{x.level}^{i}"
            if c == 1:
                body = root
            elif c == -1:
                body = "-" + root
            else:
                body = f"{_fmt_rat(c)}*{root}"
        parts.append(body)
    if not parts:
        return "(0)"
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return f"({text})"


_TERM = re.compile(r"^(?:(?P<coef>-?\d+(?:/\d+)?)\*?)?(?:(?P<neg>-)?z(?P<lev>\d+)(?:\^(?P<exp>\d+))?)?$")


def parse_cyclo(text: str) -> CycloNum:
    """Inverse of :func:`format_cyclo` (also accepts bare rationals)."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = body.replace(" ", "")
    if not body:
        raise ValueError("empty coefficient")
    chunks = re.findall(r"[+-]?[^+-]+", body)
    total = CycloNum.coerce(0)
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        chunk = chunk.lstrip("+-")
        m = _TERM.match(chunk)
        if not m or (m.group("coef") is None and m.group("lev") is None):
            raise ValueError(f"bad coefficient term {chunk!r}")
        c = mpq(m.group("coef")) if m.group("coef") is not None else mpq(1)
        if m.group("lev") is not None:
            val = root_of_unity(int(m.group("lev")), int(m.group("exp") or 1)) * c
        else:
            val = CycloNum.coerce(c)
        total = total + val * sign
    return total
