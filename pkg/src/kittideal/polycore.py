"""Exact multivariate polynomials over QQ or GF(p).

Polynomials are immutable maps from exponent tuples to nonzero field
elements.  The monomial order only matters for sorting, printing and
Groebner computations; arithmetic never depends on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "PolyMatrix",
    "ParseError",
    "RingMismatch",
    "parse_poly",
    "poly_arith",
    "determinant",
    "minors",
]


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Malformed polynomial text; carries the 1-based column of the problem."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# ---------------------------------------------------------------- fields


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rationals" | "prime-field"
    p: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p != 0:
                raise ValueError("rationals take no modulus")
        elif self.kind == "prime-field":
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, c):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(c, str):
            c = Fraction(c)
        if self.p:
            if isinstance(c, Fraction):
                num = c.numerator % self.p
                den = c.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(c) % self.p
        if isinstance(c, Fraction):
            return c
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def is_zero(self, c) -> bool:
        return not c

    def to_str(self, c) -> str:
        return str(c)

    def __str__(self):
        return "QQ" if not self.p else f"GF({self.p})"


QQ = FieldSpec("rationals")


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or a block order eliminating the first `block_split` variables.

    `key(e)` is a sort key: larger key means larger monomial.
    """

    kind: str = "grevlex"
    block_split: int | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block-elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "block-elimination") != (self.block_split is not None):
            raise ValueError("block_split is required exactly for block-elimination")

    def check(self, nvars: int):
        if self.kind == "block-elimination" and not 0 < self.block_split < nvars:
            raise ValueError("block_split must lie strictly between 0 and nvars")

    def key(self, e: tuple):
        return _order_key(self.kind, self.block_split, e)


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=1 << 20)
def _order_key(kind, split, e):
    if kind == "grevlex":
        return _grevlex_key(e)
    if kind == "lex":
        return e
    return (_grevlex_key(e[:split]), _grevlex_key(e[split:]))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------- rings

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PolyRing:
    """k[vars] under a monomial order, optionally modulo explicit polynomials.

    The modulus is stored but never applied by arithmetic; Groebner
    operations absorb it.
    """

    def __init__(self, field: FieldSpec, vars: Sequence[str],
                 order: MonomialOrder | str = "grevlex", modulus: Iterable = ()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError("variable names must be distinct")
        for v in vars:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if isinstance(order, str):
            order = MonomialOrder(order)
        order.check(len(vars))
        self.field = field
        self.vars = vars
        self.nvars = len(vars)
        self.order = order
        self._index = {v: i for i, v in enumerate(vars)}
        mods = []
        for q in modulus:
            if isinstance(q, str):
                q = parse_poly(q, self)
            self._check(q)
            q = Polynomial(self, q._d)
            if q:
                mods.append(q)
        self.modulus = tuple(mods)

    # identity ignores the modulus: polynomials of R and R/(Q) interoperate
    def same_base(self, other: "PolyRing") -> bool:
        return self is other or (self.field == other.field and self.vars == other.vars)

    def _check(self, f: "Polynomial"):
        if not self.same_base(f.ring):
            raise RingMismatch(f"{f.ring} vs {self}")

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.same_base(other)
                and self.order == other.order and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.field, self.vars, self.order))

    def __repr__(self):
        s = f"{self.field}[{','.join(self.vars)}]"
        if self.modulus:
            s += "/(" + ", ".join(map(str, self.modulus)) + ")"
        return s

    # constructors
    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            self._check(x)
            return Polynomial(self, x._d)
        if isinstance(x, str):
            return parse_poly(x, self)
        return self.const(x)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, e, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def index(self, name: str) -> int:
        return self._index[name]

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.vars, order, self.modulus)

    def with_modulus(self, modulus: Iterable) -> "PolyRing":
        return PolyRing(self.field, self.vars, self.order, modulus)

    def base(self) -> "PolyRing":
        """Same ring without modulus."""
        if not self.modulus:
            return self
        return PolyRing(self.field, self.vars, self.order)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable polynomial.  `_d` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    @property
    def terms(self) -> list:
        """[(coefficient, exponents)], strictly decreasing in the ring order."""
        if self._terms is None:
            key = self.ring.order.key
            self._terms = [(self._d[e], e) for e in sorted(self._d, key=key, reverse=True)]
        return self._terms

    def items(self):
        return self._d.items()

    def monomials(self):
        return list(self._d)

    def coefficient(self, e) -> object:
        return self._d.get(tuple(e), 0)

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def lm(self) -> tuple:
        return self.terms[0][1]

    def lc(self):
        return self.terms[0][0]

    def degree(self) -> int:
        return max((sum(e) for e in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._d}) <= 1

    def support_vars(self) -> set:
        return {i for e in self._d for i, x in enumerate(e) if x}

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.ring._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add(self._d, other._d, self.ring.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: p - c for e, c in self._d.items()})
        return Polynomial(self.ring, {e: -c for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _mul(self._d, other._d, self.ring.field.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._d.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self._d.items()})

    def mul_monomial(self, m: tuple, c=1) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        d = {}
        for e, v in self._d.items():
            v = v * c
            if p:
                v %= p
            d[tuple(a + b for a, b in zip(e, m))] = v
        return Polynomial(self.ring, d)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def change_ring(self, ring: PolyRing, var_map: Sequence[int] | None = None) -> "Polynomial":
        """Re-embed into `ring`; variable i goes to position var_map[i] (default: by name)."""
        if var_map is None:
            var_map = [ring.index(v) for v in self.ring.vars]
        n = ring.nvars
        d = {}
        for e, c in self._d.items():
            new = [0] * n
            for i, x in enumerate(e):
                if x:
                    new[var_map[i]] = x
            d[tuple(new)] = ring.field(c) if ring.field != self.ring.field else c
        return Polynomial(ring, {e: c for e, c in d.items() if c})

    def subs(self, values: dict) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables given by name."""
        ring = self.ring
        images = [ring.gen(i) for i in range(ring.nvars)]
        for k, v in values.items():
            images[ring.index(k)] = ring(v) if not isinstance(v, Polynomial) else v
        out = ring.zero()
        for c, e in self.terms:
            t = ring.const(c)
            for i, x in enumerate(e):
                if x:
                    t = t * images[i] ** x
            out = out + t
        return out

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same_base(other.ring) and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == self.ring.const(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._d:
            return "0"
        names = self.ring.vars
        out = []
        for k, (c, e) in enumerate(self.terms):
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            neg = False
            if not self.ring.field.p and c < 0:
                neg, c = True, -c
            if mono:
                body = mono if c == 1 else f"{c}*{mono}"
            else:
                body = str(c)
            if k == 0:
                out.append("-" + body if neg else body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


def _add(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    d = dict(a)
    for e, c in b.items():
        v = d.get(e)
        if v is None:
            d[e] = c
        else:
            v = v + c
            if p:
                v %= p
            if v:
                d[e] = v
            else:
                del d[e]
    return d


def _mul(a: dict, b: dict, p: int) -> dict:
    d = {}
    get = d.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple([x + y for x, y in zip(e1, e2)])
            d[e] = get(e, 0) + c1 * c2
    if p:
        return {e: c % p for e, c in d.items() if c % p}
    return {e: c for e, c in d.items() if c}


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if not a.ring.same_base(b.ring):
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, sym = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            toks.append(("num", int(num), col))
        elif name is not None:
            toks.append(("name", name, col))
        else:
            toks.append(("sym", sym, col))
        pos = m.end()
    toks.append(("end", None, len(text) + 1))
    return toks


class _Parser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := factor ('*' factor)*
    # factor := atom ['^' integer]
    # atom := integer | name | '(' expr ')'

    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 1)
        f = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            if kind == "sym" and val == "/":
                raise ParseError("division is not supported", col)
            raise ParseError(f"unexpected {val!r}", col)
        return f

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val, col = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "sym" and val == "/":
                raise ParseError("division is not supported", col)
            elif kind in ("num", "name") or (kind == "sym" and val == "("):
                raise ParseError("implicit multiplication; use '*'", col)
            else:
                return f

    def factor(self):
        base = self.atom()
        kind, val, col = self.peek()
        if kind == "sym" and val in ("^",):
            self.take()
            kind, val, col = self.take()
            if kind == "sym" and val == "-":
                raise ParseError("negative exponent", col)
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", col)
            return base ** val
        if kind == "sym" and val == "*" and self.toks[self.i + 1][1] == "*":
            raise ParseError("use '^' for powers", col)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "sym" and nxt[1] == "/" and self.toks[self.i + 1][0] == "num":
                # a/b between integer literals is a rational constant
                self.take()
                _, den, dcol = self.take()
                if den == 0:
                    raise ParseError("zero denominator", dcol)
                return self.ring.const(Fraction(val, den))
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", col)
            return self.ring.gen(val)
        if kind == "sym" and val == "(":
            f = self.expr()
            kind, v, c = self.take()
            if not (kind == "sym" and v == ")"):
                raise ParseError("expected ')'", c)
            return f
        if kind == "end":
            raise ParseError("unexpected end of input", col)
        raise ParseError(f"unexpected {val!r}", col)


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse integer or rational literals, ring variables, + - * ^ and parentheses.

    ``3/4*x`` is a rational coefficient; any other use of ``/`` is rejected.
    """
    f = _Parser(text, ring).parse()
    return Polynomial(ring, f._d)


# ---------------------------------------------------------------- matrices


class PolyMatrix:
    """Dense row-major matrix of polynomials over one ring."""

    def __init__(self, ring: PolyRing, rows: int, cols: int, entries: Sequence[Polynomial]):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        entries = [ring(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def from_rows(cls, ring: PolyRing, rows) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, ring: PolyRing, cols, nrows: int | None = None) -> "PolyMatrix":
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(ring, nrows, len(cols),
                   [cols[j][i] for i in range(nrows) for j in range(len(cols))])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, n, n, [ring.one() if i == j else ring.zero()
                                for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        return cls(ring, rows, cols, [ring.zero()] * (rows * cols))

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, len(rows), len(cols),
                          [self[i, j] for i in rows for j in cols])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows(self.ring, self.columns())

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return PolyMatrix.from_rows(self.ring, [self.row(i) + other.row(i)
                                                for i in range(self.rows)])

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return PolyMatrix.from_rows(self.ring, self.tolist() + other.tolist())

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, self.rows, self.cols,
                          [a + b for a, b in zip(self.entries, other.entries)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        R = self.ring
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = R.zero()
                for k in range(self.cols):
                    a = self[i, k]
                    if a:
                        b = other[k, j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(R, self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(e) for e in r] for r in self.tolist()]) + ")"


def determinant(M: PolyMatrix) -> Polynomial:
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    R = M.ring
    if n == 0:
        return R.one()
    memo = {}

    def det(row: int, cols: tuple) -> Polynomial:
        # minor on rows row..n-1 and the given columns
        if row == n - 1:
            return M[row, cols[0]]
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = R.zero()
        for k, c in enumerate(cols):
            a = M[row, c]
            if not a:
                continue
            sub = det(row + 1, cols[:k] + cols[k + 1:])
            if sub:
                term = a * sub
                acc = acc - term if k % 2 else acc + term
        memo[cols] = acc
        return acc

    return det(0, tuple(range(n)))


def minors(M: PolyMatrix, k: int) -> list:
    """All k x k minors, ordered lexicographically by (rows, columns).

    Empty when k exceeds either dimension, so I_k(M) is then the zero ideal.
    """
    if k < 1:
        raise ValueError(f"minor size must be positive, got {k}")
    out = []
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            out.append(determinant(M.submatrix(rows, cols)))
    return out
