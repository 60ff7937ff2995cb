"""Exact fields (rationals, prime fields) and sparse matrices with rank/kernel.

Scalars are plain Python numbers: over the rationals an element is an int
whenever it is integral and a fractions.Fraction otherwise (the two mix
exactly and compare/hash equal); over F_p an element is an int in [0, p).
No floating point is used anywhere.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import lcm

from .errors import FormatError


class LinAlgError(ValueError):
    """Shape mismatch or malformed scalar/field input."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface of the exact ground fields."""

    zero = 0
    one = 1

    def parse(self, value):
        """Read a scalar from JSON: an int or a "p/q" string."""
        raise NotImplementedError

    def to_json(self, value):
        raise NotImplementedError

    def spec(self):
        """The field's JSON form ("Q" or {"Fp": p})."""
        raise NotImplementedError


class Rationals(Field):
    """The field of rational numbers."""

    name = "Q"

    # int/Fraction arithmetic is exact, so the operators are the field ops.
    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        f = Fraction(1, 1) / a
        return int(f) if f.denominator == 1 else f

    @staticmethod
    def from_int(n: int):
        return n

    def parse(self, value):
        if isinstance(value, bool) or isinstance(value, float):
            raise FormatError(f"not an exact rational: {value!r}")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            try:
                f = Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad rational literal {value!r}") from exc
            return int(f) if f.denominator == 1 else f
        raise FormatError(f"bad rational entry {value!r}")

    def to_json(self, value):
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return int(value)
            return f"{value.numerator}/{value.denominator}"
        return value

    def spec(self):
        return "Q"

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """The prime field F_p; elements are ints reduced into [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise FormatError(f"prime-field modulus must be prime, got {p!r}")
        if p >= 2**31:
            raise FormatError(f"prime-field modulus too large: {p}")
        self.p = p
        self.name = f"F{p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, value):
        if isinstance(value, bool) or isinstance(value, float):
            raise FormatError(f"not an exact field element: {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            try:
                f = Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad scalar literal {value!r}") from exc
            if f.denominator % self.p == 0:
                raise FormatError(f"{value!r} has no meaning in F_{self.p}")
            return f.numerator % self.p * self.inv(f.denominator % self.p) % self.p
        raise FormatError(f"bad scalar entry {value!r}")

    def to_json(self, value):
        return value

    def spec(self):
        return {"Fp": self.p}

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = Rationals()


def field_from_json(obj) -> Field:
    """Parse a field spec: "Q" or {"Fp": p}."""
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return PrimeField(obj["Fp"])
    raise FormatError(f'bad field spec {obj!r} (expected "Q" or {{"Fp": p}})')


def field_from_text(text: str) -> Field:
    """Parse a field given on the command line: "Q" or "F<p>"."""
    if text == "Q":
        return QQ
    if text.startswith("F") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise FormatError(f"bad field {text!r} (expected Q or F<p>)")


class Matrix:
    """Sparse matrix over an exact field.

    entries maps (row, col) to a nonzero scalar; absent means zero. Matrices
    are immutable after construction, so they are safe to share across
    threads; rank is cached on first use.
    """

    __slots__ = ("field", "rows", "cols", "entries", "_rank", "_row_index")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise LinAlgError("negative matrix dimension")
        self.field = field
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise LinAlgError(f"entry ({r},{c}) outside {rows}x{cols}")
                if v != 0:
                    clean[(r, c)] = v
        self.entries = clean
        self._rank = None
        self._row_index = None

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {(i, i): field.one for i in range(n)})

    @classmethod
    def from_rows(cls, field, rows_data, rows=None, cols=None):
        """Build from a dense list of rows (entries already field scalars)."""
        if rows is None:
            rows = len(rows_data)
        if cols is None:
            cols = len(rows_data[0]) if rows_data else 0
        entries = {}
        for r, row in enumerate(rows_data):
            if len(row) != cols:
                raise LinAlgError("ragged rows")
            for c, v in enumerate(row):
                if v != 0:
                    entries[(r, c)] = v
        return cls(field, rows, cols, entries)

    def get(self, r, c):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise LinAlgError(f"index ({r},{c}) outside {self.rows}x{self.cols}")
        return self.entries.get((r, c), self.field.zero)

    def to_rows(self):
        zero = self.field.zero
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Matrix({self.field.name}, {self.rows}x{self.cols}, nnz={len(self.entries)})"

    def _same_shape(self, other):
        if self.field != other.field:
            raise LinAlgError("field mismatch")
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other):
        self._same_shape(other)
        add = self.field.add
        out = dict(self.entries)
        for k, v in other.entries.items():
            cur = out.get(k)
            out[k] = v if cur is None else add(cur, v)
        return Matrix(self.field, self.rows, self.cols, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field.neg
        return Matrix(
            self.field, self.rows, self.cols,
            {k: neg(v) for k, v in self.entries.items()},
        )

    def scale(self, scalar):
        if scalar == 0:
            return Matrix(self.field, self.rows, self.cols)
        mul = self.field.mul
        return Matrix(
            self.field, self.rows, self.cols,
            {k: mul(scalar, v) for k, v in self.entries.items()},
        )

    def transpose(self):
        return Matrix(
            self.field, self.cols, self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def _by_row(self):
        # cached row -> [(col, val)] grouping, used by __matmul__
        if self._row_index is None:
            idx = {}
            for (r, c), v in self.entries.items():
                idx.setdefault(r, []).append((c, v))
            self._row_index = idx
        return self._row_index

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise LinAlgError("field mismatch")
        if self.cols != other.rows:
            raise LinAlgError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        rows_of_b = other._by_row()
        add = self.field.add
        mul = self.field.mul
        acc = {}
        for (r, k), av in self.entries.items():
            hits = rows_of_b.get(k)
            if hits is None:
                continue
            for c, bv in hits:
                key = (r, c)
                cur = acc.get(key)
                term = mul(av, bv)
                acc[key] = term if cur is None else add(cur, term)
        return Matrix(self.field, self.rows, other.cols, acc)

    def rank(self) -> int:
        """Rank over the field, by exact elimination (Bareiss over Q)."""
        if self._rank is None:
            m = self.transpose() if self.rows > self.cols else self
            if isinstance(self.field, PrimeField):
                self._rank = _rank_prime(m)
            else:
                self._rank = _rank_bareiss(m)
        return self._rank

    def kernel_dim(self) -> int:
        return self.cols - self.rank()


def matrix_product(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_dim(m: Matrix) -> int:
    return m.kernel_dim()


def _sparse_rows(m: Matrix):
    rows = [{} for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    return [row for row in rows if row]


def _rank_prime(m: Matrix) -> int:
    """Plain sparse Gaussian elimination over F_p."""
    p = m.field.p
    rows = _sparse_rows(m)
    rk = 0
    for col in range(m.cols):
        pivot = None
        for idx, row in enumerate(rows):
            if col in row:
                pivot = idx
                break
        if pivot is None:
            continue
        prow = rows.pop(pivot)
        rk += 1
        pinv = pow(prow[col], -1, p)
        for row in rows:
            a = row.pop(col, 0)
            if a:
                factor = a * pinv % p
                for c, v in prow.items():
                    if c == col:
                        continue
                    nv = (row.get(c, 0) - factor * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        rows = [row for row in rows if row]
    return rk


def _clear_denominators(row: dict) -> dict:
    mult = 1
    for v in row.values():
        if isinstance(v, Fraction):
            mult = lcm(mult, v.denominator)
    if mult == 1:
        return {c: int(v) if isinstance(v, Fraction) else v for c, v in row.items()}
    return {c: int(v * mult) for c, v in row.items()}


def _rank_bareiss(m: Matrix) -> int:
    """Fraction-free (Bareiss) elimination over the rationals.

    Rows are rescaled to integers first (rank-preserving); every intermediate
    entry is then a minor of the integer matrix, so the division by the
    previous pivot is exact and entry growth stays polynomial.
    """
    rows = [_clear_denominators(row) for row in _sparse_rows(m)]
    rk = 0
    prev = 1
    for col in range(m.cols):
        pivot = None
        for idx, row in enumerate(rows):
            if col in row:
                pivot = idx
                break
        if pivot is None:
            continue
        prow = rows.pop(pivot)
        piv = prow[col]
        rk += 1
        new_rows = []
        for row in rows:
            a = row.pop(col, 0)
            new = {}
            if a:
                for c in row.keys() | prow.keys():
                    if c == col:
                        continue
                    val = piv * row.get(c, 0) - a * prow.get(c, 0)
                    q, rem = divmod(val, prev)
                    assert rem == 0, "Bareiss division not exact"
                    if q:
                        new[c] = q
            else:
                for c, v in row.items():
                    val = piv * v
                    q, rem = divmod(val, prev)
                    assert rem == 0, "Bareiss division not exact"
                    new[c] = q
            if new:
                new_rows.append(new)
        rows = new_rows
        prev = piv
    return rk
