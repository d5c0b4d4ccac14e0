"""Elimination toolkit: exact division, reduction by monic relations,
resultants, discriminants, univariate gcds and linear algebra over Q(zeta_N).
"""
from __future__ import annotations

from gmpy2 import mpq

from .cyclo import CycloNum
from .mpoly import MPoly, _norm

__all__ = [
    "NotDivisible",
    "ZeroLeadingCoefficient",
    "exact_divide",
    "reduce_monic",
    "normal_form",
    "sylvester_matrix",
    "bareiss_det",
    "resultant",
    "discriminant",
    "upoly_gcd",
    "gcd_univariate",
    "squarefree_part",
    "distinct_root_count",
    "solve_linear",
    "rank",
    "nullspace",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a remainder; carries the witness."""

    def __init__(self, remainder, message="nonzero remainder"):
        super().__init__(message)
        self.remainder = remainder


class ZeroLeadingCoefficient(ValueError):
    pass


def _main_var(g: MPoly) -> str:
    # prefer the variable in which g has the smallest positive degree: cheap steps
    best = None
    for name in g.vars:
        d = g.degree(name)
        if best is None or d < best[0]:
            best = (d, name)
    return best[1]


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    """q with f = q*g, by recursive division on a main variable of g."""
    if g.is_zero():
        raise ZeroDivisionError("exact_divide by zero")
    if f.is_zero():
        return MPoly()
    if g.is_const():
        return f.scale(1 / CycloNum.coerce(g.const_value()))
    v = _main_var(g)
    d = g.degree(v)
    lc = g.coeff(v, d)
    q = MPoly()
    r = f
    while not r.is_zero():
        k = r.degree(v)
        if k < d:
            raise NotDivisible(r)
        try:
            c = exact_divide(r.coeff(v, k), lc)
        except NotDivisible:
            raise NotDivisible(r) from None
        term = c.shift_var(v, k - d)
        q = q + term
        r = r - term * g
    return q


def reduce_monic(f: MPoly, rel: MPoly, var: str) -> MPoly:
    """Remainder of f modulo rel, which must have a constant leading coefficient in var."""
    d = rel.degree(var)
    if d <= 0:
        raise ValueError(f"relation has no positive degree in {var}")
    lc = rel.coeff(var, d)
    if not lc.is_const():
        raise ZeroLeadingCoefficient(f"relation is not monic in {var}")
    inv = 1 / CycloNum.coerce(lc.const_value())
    tail = {j: -c.scale(inv) for j, c in rel.coeffs_in(var).items() if j < d}
    if f.degree(var) < d:
        return f
    F = f.coeffs_in(var)
    top = max(F)
    for k in range(top, d - 1, -1):
        c = F.pop(k, None)
        if c is None or c.is_zero():
            continue
        for j, t in tail.items():
            idx = k - d + j
            prev = F.get(idx)
            F[idx] = c * t if prev is None else prev + c * t
    out = MPoly()
    for k, c in F.items():
        if not c.is_zero():
            out = out + c.shift_var(var, k)
    return out


def normal_form(f: MPoly, relations) -> MPoly:
    """Successive reduction by (relation, main variable) pairs, in order."""
    for rel, var in relations:
        f = reduce_monic(f, rel, var)
    return f


# -- resultants -----------------------------------------------------------------

def sylvester_matrix(f: MPoly, g: MPoly, var: str) -> list[list[MPoly]]:
    m, n = f.degree(var), g.degree(var)
    fc = [f.coeff(var, k) for k in range(m, -1, -1)]
    gc = [g.coeff(var, k) for k in range(n, -1, -1)]
    size = m + n
    zero = MPoly()
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(mat: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant; every division is exact."""
    n = len(mat)
    if n == 0:
        return MPoly.const(1)
    a = [list(row) for row in mat]
    sign = 1
    prev = MPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return MPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if not prev.is_const() else num.scale(
                    1 / CycloNum.coerce(prev.const_value())
                )
            a[i][k] = MPoly()
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Sylvester resultant res_var(f, g)."""
    if f.degree(var) <= 0 and g.degree(var) <= 0:
        raise ValueError("resultant needs positive degree in var")
    if f.degree(var) <= 0:
        return f ** g.degree(var)
    if g.degree(var) <= 0:
        return g ** f.degree(var)
    return bareiss_det(sylvester_matrix(f, g, var))


def discriminant(f: MPoly, var: str) -> MPoly:
    """(-1)^(d(d-1)/2) * res(f, f') / lc(f)."""
    d = f.degree(var)
    lc = f.coeff(var, d)
    if lc.is_zero() or d <= 0:
        raise ZeroLeadingCoefficient("no leading coefficient")
    r = resultant(f, f.derivative(var), var)
    q = exact_divide(r, lc)
    return q if (d * (d - 1) // 2) % 2 == 0 else -q


# -- univariate arithmetic over Q(zeta_N) -----------------------------------------

def _trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def upoly_divmod(a: list, b: list) -> tuple[list, list]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = 1 / CycloNum.coerce(b[-1])
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = _norm(a[k + len(b) - 1] * inv)
        q[k] = c
        if c:
            for j, d in enumerate(b):
                a[k + j] = _norm(a[k + j] - c * d)
    return _trim(q), _trim(a[: len(b) - 1])


def _monic(p: list) -> list:
    inv = 1 / CycloNum.coerce(p[-1])
    return [_norm(c * inv) for c in p]


def upoly_gcd(a: list, b: list) -> list:
    """Monic gcd of coefficient lists (ascending)."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return _monic(a) if a else []


def upoly_deriv(p: list) -> list:
    return [_norm(c * k) for k, c in enumerate(p)][1:]


def squarefree_part(p: list) -> list:
    g = upoly_gcd(p, upoly_deriv(p))
    return _monic(upoly_divmod(p, g)[0])


def distinct_root_count(p: list) -> int:
    """Number of distinct roots over an algebraic closure."""
    p = _trim(p)
    if len(p) <= 1:
        return 0
    return len(squarefree_part(p)) - 1


def gcd_univariate(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Monic gcd; f and g must be fully specialized except for var."""
    return MPoly.from_univariate(upoly_gcd(f.univariate(var), g.univariate(var)), var)


def upoly_eval(p: list, x):
    acc = mpq(0)
    for c in reversed(p):
        acc = _norm(acc * x + c)
    return acc


# -- dense linear algebra over Q(zeta_N) --------------------------------------------

def _rref(rows: list[list], ncols: int):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / CycloNum.coerce(m[r][c])
        m[r] = [_norm(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [_norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: list[list]) -> int:
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]))[1])


def solve_linear(rows: list[list], rhs: list):
    """One solution of A x = b, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = _rref(aug, ncols)
    if any(m[i][-1] for i in range(len(pivots), len(m))):
        return None
    sol = [mpq(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def nullspace(rows: list[list], ncols: int) -> list[list]:
    m, pivots = _rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [mpq(0)] * ncols
        vec[fcol] = mpq(1)
        for i, pc in enumerate(pivots):
            vec[pc] = _norm(-m[i][fcol])
        basis.append(vec)
    return basis
