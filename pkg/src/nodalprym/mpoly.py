"""Sparse multivariate polynomials over cyclotomic fields.

Monomials are packed into a single Python int: every variable owns a fixed
bit field in a process-wide registry, so multiplying monomials is one integer
addition.  Coefficients are ``mpq`` when rational and :class:`CycloNum`
otherwise; both live in the same field Q(zeta_N), the split only avoids
object overhead on the (very common) rational case.
"""
from __future__ import annotations

import ast
import re
from functools import reduce as _fold

from gmpy2 import mpq

from .cyclo import CycloNum, format_cyclo, root_of_unity

__all__ = [
    "MPoly",
    "RationalExpr",
    "GEOMETRY_VARS",
    "var_key",
    "parse_poly",
    "parse_expr",
    "format_poly",
    "symbols",
]

GEOMETRY_VARS = (
    "x", "y", "z", "w", "u", "v", "s", "t", "X", "Y", "U", "W",
    "x1", "s1", "t1", "T1", "T2",
)

_BITS = 20
_MASK = (1 << _BITS) - 1
_GUARD = 1 << (_BITS - 1)

_PARAM = re.compile(r"^a(\d+)$")
_ROOT = re.compile(r"^z(\d+)$")
_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def var_key(name: str):
    """Global variable order: geometry variables, then others, then a2, a3, ..."""
    if name in GEOMETRY_VARS:
        return (0, GEOMETRY_VARS.index(name), "")
    m = _PARAM.match(name)
    if m:
        return (2, int(m.group(1)), "")
    return (1, 0, name)


class _Registry:
    def __init__(self):
        self.slot: dict[str, int] = {}
        self.names: list[str] = []
        for v in GEOMETRY_VARS:
            self.add(v)
        for i in range(2, 9):
            self.add(f"a{i}")

    def add(self, name: str) -> int:
        if name not in self.slot:
            if not _NAME.match(name) or _ROOT.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            self.slot[name] = len(self.names)
            self.names.append(name)
        return self.slot[name]

    def shift(self, name: str) -> int:
        return _BITS * self.add(name)


_REG = _Registry()


def _unpack(e: int) -> dict[str, int]:
    out = {}
    i = 0
    while e:
        d = e & _MASK
        if d:
            out[_REG.names[i]] = d
        e >>= _BITS
        i += 1
    return out


def _tdeg(e: int) -> int:
    total = 0
    while e:
        total += e & _MASK
        e >>= _BITS
    return total


def _divides(a: int, b: int) -> bool:
    """Monomial a divides monomial b."""
    nfields = max(a.bit_length(), b.bit_length()) // _BITS + 1
    guards = sum(_GUARD << (_BITS * i) for i in range(nfields))
    return ((b | guards) - a) & guards == guards


def _norm(c):
    if isinstance(c, CycloNum):
        if c.level == 1 or c.is_rational():
            return c.coeffs[0]
        return c
    return mpq(c)


def _is_scalar(obj) -> bool:
    return isinstance(obj, (int, CycloNum)) or type(obj) is type(mpq(0))


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "MPoly":
        c = _norm(c)
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls({power << _REG.shift(name): mpq(1)})

    @classmethod
    def monomial(cls, coeff, exps: dict) -> "MPoly":
        c = _norm(coeff)
        if not c:
            return cls()
        e = 0
        for name, k in exps.items():
            e += k << _REG.shift(name)
        return cls({e: c})

    @classmethod
    def coerce(cls, obj) -> "MPoly":
        if isinstance(obj, MPoly):
            return obj
        if isinstance(obj, str):
            return parse_poly(obj)
        return cls.const(obj)

    # -- predicates and accessors -----------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, mpq(0))

    def __len__(self):
        return len(self.terms)

    @property
    def vars(self) -> tuple[str, ...]:
        acc = 0
        for e in self.terms:
            acc |= e
        return tuple(sorted(_unpack(acc), key=var_key))

    def degree(self, name: str) -> int:
        """Degree in ``name``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        sh = _REG.shift(name)
        return max((e >> sh) & _MASK for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(_tdeg(e) for e in self.terms)

    def coeffs_in(self, name: str) -> dict[int, "MPoly"]:
        """Split as sum_k c_k * name^k; returns {k: c_k}."""
        sh = _REG.shift(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = (e >> sh) & _MASK
            out.setdefault(k, {})[e - (k << sh)] = c
        return {k: MPoly(t) for k, t in out.items()}

    def coeff(self, name: str, k: int) -> "MPoly":
        sh = _REG.shift(name)
        return MPoly({e - (k << sh): c for e, c in self.terms.items() if (e >> sh) & _MASK == k})

    def leading_coeff(self, name: str) -> "MPoly":
        return self.coeff(name, self.degree(name))

    def items(self):
        """Yield (exponent dict, coefficient) pairs in canonical order."""
        for e in _sorted_monomials(self.terms):
            yield _unpack(e), self.terms[e]

    def univariate(self, name: str) -> list:
        """Ascending coefficient list; the polynomial must involve only ``name``."""
        sh = _REG.shift(name)
        deg = self.degree(name)
        out = [mpq(0)] * (deg + 1)
        for e, c in self.terms.items():
            k = (e >> sh) & _MASK
            if e != k << sh:
                raise ValueError(f"polynomial involves variables other than {name}")
            out[k] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, name: str) -> "MPoly":
        sh = _REG.shift(name)
        return cls({k << sh: _norm(c) for k, c in enumerate(coeffs) if c})

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RationalExpr):
                return NotImplemented
            other = MPoly.const(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = _norm(v) if isinstance(v, CycloNum) else v
                else:
                    del out[e]
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RationalExpr):
                return NotImplemented
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = _norm(c)
        if not c:
            return MPoly()
        out = {}
        for e, v in self.terms.items():
            p = v * c
            if isinstance(p, CycloNum):
                p = _norm(p)
            out[e] = p
        return MPoly(out)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, RationalExpr):
                return NotImplemented
            return self.scale(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                k = e1 + e2
                v = get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
        res = {}
        for e, c in out.items():
            if c:
                res[e] = _norm(c) if isinstance(c, CycloNum) else c
        return MPoly(res)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_const() and other:
                return self.scale(1 / CycloNum.coerce(other.const_value()))
            return RationalExpr(self, other)
        if isinstance(other, RationalExpr):
            return RationalExpr(self) / other
        return self.scale(1 / CycloNum.coerce(other))

    def __rtruediv__(self, other):
        return RationalExpr(MPoly.coerce(other), self)

    def __pow__(self, k: int):
        if k < 0:
            return RationalExpr(MPoly.const(1), self ** (-k))
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return MPoly({e * k: _norm(c ** k)})
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RationalExpr):
            return NotImplemented
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(format_poly(self))

    def __repr__(self):
        text = format_poly(self)
        if len(text) > 200:
            text = text[:200] + " ..."
        return f"MPoly({text})"

    def __str__(self):
        return format_poly(self)

    # -- calculus and substitution ------------------------------------------
    def derivative(self, name: str) -> "MPoly":
        sh = _REG.shift(name)
        one = 1 << sh
        out = {}
        for e, c in self.terms.items():
            k = (e >> sh) & _MASK
            if k:
                out[e - one] = c * k
        return MPoly(out)

    def shift_var(self, name: str, k: int) -> "MPoly":
        """Multiply by name^k."""
        d = k << _REG.shift(name)
        return MPoly({e + d: c for e, c in self.terms.items()})

    def subs(self, bindings: dict) -> "MPoly":
        """Simultaneous polynomial substitution; values are MPoly or scalars."""
        r = substitute(self, {k: RationalExpr(MPoly.coerce(v)) for k, v in bindings.items()})
        return r.as_poly()

    def evaluate(self, point: dict) -> "MPoly":
        return self.subs(point)

    def map_coeffs(self, fn) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            v = _norm(fn(c))
            if v:
                out[e] = v
        return MPoly(out)

    def content_denominator(self) -> int:
        """lcm of the rational denominators, a convenience for printing."""
        from math import lcm

        dens = []
        for c in self.terms.values():
            for q in (c.coeffs if isinstance(c, CycloNum) else (c,)):
                dens.append(int(q.denominator))
        return lcm(*dens) if dens else 1


class RationalExpr:
    """num/den with no automatic cancellation."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = MPoly.coerce(num)
        self.den = MPoly.const(1) if den is None else MPoly.coerce(den)
        if self.den.is_zero():
            from .cyclo import DivisionByZero

            raise DivisionByZero("zero denominator")
        if self.den.is_const() and self.den.const_value() != 1:
            self.num = self.num.scale(1 / CycloNum.coerce(self.den.const_value()))
            self.den = MPoly.const(1)

    @classmethod
    def coerce(cls, obj) -> "RationalExpr":
        if isinstance(obj, RationalExpr):
            return obj
        return cls(MPoly.coerce(obj))

    def is_polynomial(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> MPoly:
        if not self.is_polynomial():
            from .elim import exact_divide

            return exact_divide(self.num, self.den)
        return self.num

    def __add__(self, other):
        o = RationalExpr.coerce(other)
        if self.den == o.den:
            return RationalExpr(self.num + o.num, self.den)
        return RationalExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalExpr.coerce(other))

    def __rsub__(self, other):
        return RationalExpr.coerce(other) - self

    def __mul__(self, other):
        o = RationalExpr.coerce(other)
        return RationalExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalExpr.coerce(other)
        if o.num.is_zero():
            from .cyclo import DivisionByZero

            raise DivisionByZero("division by zero rational expression")
        return RationalExpr(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalExpr.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalExpr(self.den ** (-k), self.num ** (-k))
        return RationalExpr(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = RationalExpr.coerce(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RationalExpr(({self.num}) / ({self.den}))"


def symbols(names: str) -> tuple[MPoly, ...]:
    return tuple(MPoly.var(n) for n in names.replace(",", " ").split())


# -- substitution --------------------------------------------------------------

def substitute(f: MPoly, bindings: dict) -> RationalExpr:
    """Simultaneous substitution of rational expressions into f.

    The denominator is the product of each binding denominator raised to the
    degree of f in that variable.
    """
    bound = {name: RationalExpr.coerce(val) for name, val in bindings.items()}
    names = [n for n in bound if f.degree(n) > 0]
    if not names:
        return RationalExpr(f)
    shifts = {n: _REG.shift(n) for n in names}
    degs = {n: f.degree(n) for n in names}
    # group terms by the exponents of the substituted variables
    groups: dict[tuple, dict] = {}
    for e, c in f.terms.items():
        key = tuple((e >> shifts[n]) & _MASK for n in names)
        rest = e
        for n, k in zip(names, key):
            rest -= k << shifts[n]
        groups.setdefault(key, {})[rest] = c
    num_pow: dict = {}
    den_pow: dict = {}

    def npow(n, k):
        if (n, k) not in num_pow:
            num_pow[(n, k)] = bound[n].num ** k
        return num_pow[(n, k)]

    def dpow(n, k):
        if (n, k) not in den_pow:
            den_pow[(n, k)] = bound[n].den ** k
        return den_pow[(n, k)]

    total = MPoly()
    for key, rest in groups.items():
        term = MPoly(rest)
        factors = []
        for n, k in zip(names, key):
            if k:
                factors.append(npow(n, k))
            if degs[n] - k and not bound[n].den.is_const():
                factors.append(dpow(n, degs[n] - k))
        factors.sort(key=len)
        for fac in factors:
            term = term * fac
        total = total + term
    den = MPoly.const(1)
    for n in names:
        if not bound[n].den.is_const():
            den = den * dpow(n, degs[n])
    return RationalExpr(total, den)


# -- text forms ----------------------------------------------------------------

def _sorted_monomials(terms) -> list[int]:
    acc = 0
    for e in terms:
        acc |= e
    order = [_REG.shift(n) for n in sorted(_unpack(acc), key=var_key)]

    def key(e):
        vec = tuple((e >> sh) & _MASK for sh in order)
        return (sum(vec), vec)

    return sorted(terms, key=key, reverse=True)


def format_poly(f: MPoly) -> str:
    """Canonical one-line form: descending graded-lex terms joined by ' + '."""
    if f.is_zero():
        return "0"
    parts = []
    for e in _sorted_monomials(f.terms):
        c = f.terms[e]
        coeff = format_cyclo(CycloNum.coerce(c))
        ex = _unpack(e)
        mono = [n if ex[n] == 1 else f"{n}^{ex[n]}" for n in sorted(ex, key=var_key)]
        parts.append("*".join([coeff] + mono))
    return " + ".join(parts)


class _Eval(ast.NodeVisitor):
    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"unsupported literal {node.value!r}")
        return RationalExpr(MPoly.const(node.value))

    def visit_Name(self, node):
        m = _ROOT.match(node.id)
        if m:
            return RationalExpr(MPoly.const(root_of_unity(int(m.group(1)))))
        return RationalExpr(MPoly.var(node.id))

    def visit_UnaryOp(self, node):
        val = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ValueError("unsupported unary operator")

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            exp = self.visit(node.right)
            if exp.is_polynomial() and exp.num.is_const():
                k = exp.num.const_value()
                if k.denominator == 1:
                    return left ** int(k)
            raise ValueError("exponents must be integer literals")
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        raise ValueError("unsupported operator")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {type(node).__name__}")


def parse_expr(text: str) -> RationalExpr:
    """Parse an arithmetic expression; '^' is accepted for powers."""
    tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    return _Eval().visit(tree)


def parse_poly(text: str) -> MPoly:
    r = parse_expr(text)
    if not r.is_polynomial():
        raise ValueError("expression has a non-constant denominator")
    return r.num


def prod(items) -> MPoly:
    return _fold(lambda a, b: a * b, items, MPoly.const(1))
