"""Exact Gaussian-rational scalars and a small dense/sparse linear-algebra kernel.

Everything here is exact: vectors are tuples of :class:`Scalar`, subspaces are
stored by their canonical reduced row-echelon basis, so two subspaces are equal
exactly when their bases are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DimensionError, ScalarSyntaxError

__all__ = [
    "Scalar", "ZERO", "ONE", "I", "Vector", "Matrix", "Subspace", "EchelonBuilder",
    "rank", "kernel", "solve_homogeneous", "subspace_sum", "subspace_intersect",
    "subspace_contains", "subspace_equal", "zero_vector", "basis_vector",
    "vadd", "vsub", "vscale", "vlincomb", "is_zero_vector", "as_vector",
]


class Scalar:
    """A Gaussian rational ``(a + b i) / d`` held with one common denominator.

    ``d > 0`` and ``gcd(a, b, d) == 1``, which makes the representation
    canonical. The per-component reduced fractions are exposed as
    ``re_num/re_den`` and ``im_num/im_den``.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Union[int, Fraction, str, "Scalar"] = 0, im: Union[int, Fraction] = 0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("cannot combine a Scalar real part with an imaginary part")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        if isinstance(re, str):
            if im:
                raise TypeError("string scalars carry their own imaginary part")
            s = Scalar.parse(re)
            self._a, self._b, self._d = s._a, s._b, s._d
            return
        fr = Fraction(re)
        fi = Fraction(im)
        d = fr.denominator * fi.denominator // gcd(fr.denominator, fi.denominator)
        self._set(fr.numerator * (d // fr.denominator), fi.numerator * (d // fi.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Scalar":
        s = object.__new__(cls)
        s._set(a, b, d)
        return s

    # -- component access ---------------------------------------------------
    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def re_num(self) -> int:
        return self.real.numerator

    @property
    def re_den(self) -> int:
        return self.real.denominator

    @property
    def im_num(self) -> int:
        return self.imag.numerator

    @property
    def im_den(self) -> int:
        return self.imag.denominator

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._a, -self._b, self._d)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar._raw(x, 0, 1)
        return Scalar(x)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Scalar._raw(self._a + other._a, self._b + other._b, d1)
        return Scalar._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Scalar._raw(self._a - other._a, self._b - other._b, d1)
        return Scalar._raw(self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                return Scalar._raw(self._a * other, self._b * other, self._d)
            if not isinstance(other, Fraction):
                return NotImplemented
            other = Scalar.coerce(other)
        a, b, c, e = self._a, self._b, other._a, other._b
        if b == 0 and e == 0:
            return Scalar._raw(a * c, 0, self._d * other._d)
        return Scalar._raw(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b, d = self._a, self._b, self._d
        if a == 0 and b == 0:
            raise ZeroDivisionError("Scalar division by zero")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        return Scalar._raw(d * a, -d * b, a * a + b * b)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return self.format()

    # -- text form ----------------------------------------------------------
    def format(self) -> str:
        """Render as ``"a/b+c/d i"`` (components omitted when zero)."""
        re_part, im_part = self.real, self.imag
        if not im_part:
            return _fmt_fraction(re_part)
        mag = abs(im_part)
        im_txt = "i" if mag == 1 else f"{_fmt_fraction(mag)} i"
        if not re_part:
            return ("-" if im_part < 0 else "") + im_txt
        sign = "-" if im_part < 0 else "+"
        return f"{_fmt_fraction(re_part)}{sign}{im_txt}"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"3"``, ``"-1/2"``, ``"i"``, ``"2/3 i"``, ``"1/2-3/4 i"`` and similar."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ScalarSyntaxError(f"empty scalar {text!r}")
        m = _SCALAR_RE.fullmatch(s)
        if m is None:
            raise ScalarSyntaxError(f"malformed scalar {text!r}")
        try:
            if m.group("imonly") is not None:
                return cls(0, _parse_coeff(m.group("imonly")))
            re_part = _parse_fraction(m.group("re"))
            im_txt = m.group("im")
            im_part = Fraction(0) if im_txt is None else _parse_coeff(im_txt)
        except ZeroDivisionError:
            raise ScalarSyntaxError(f"zero denominator in scalar {text!r}") from None
        return cls(re_part, im_part)


_NUM = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<imonly>[+-]?(?:{_NUM})?)i"
    rf"|(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)i)?"
)


def _parse_fraction(txt: str) -> Fraction:
    if "/" in txt:
        num, den = txt.split("/")
        if int(den) == 0:
            raise ZeroDivisionError
        return Fraction(int(num), int(den))
    return Fraction(int(txt))


def _parse_coeff(txt: str) -> Fraction:
    if txt in ("", "+"):
        return Fraction(1)
    if txt == "-":
        return Fraction(-1)
    return _parse_fraction(txt)


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

Vector = tuple  # tuple[Scalar, ...]


# -- vector helpers -----------------------------------------------------------

def as_vector(values: Iterable) -> Vector:
    return tuple(Scalar.coerce(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def _check_len(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} != {len(v)}")


def vadd(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    _check_len(u, v)
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    _check_len(u, v)
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence[Scalar]) -> Vector:
    c = Scalar.coerce(c)
    return tuple(c * x for x in v)


def vlincomb(coeffs: Sequence, vectors: Sequence[Sequence[Scalar]], n: int) -> Vector:
    """``sum(c * v)`` over paired coefficients and vectors of length ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        c = Scalar.coerce(c)
        for k, x in enumerate(v):
            if x:
                out[k] = out[k] + c * x
    return tuple(out)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


# -- matrices -----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of scalars."""

    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("matrix entries do not match its shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(as_vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(basis_vector(n, i) for i in range(n)))

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"expected vector of length {self.cols}, got {len(v)}")
        return tuple(_dot(row, v) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


# -- incremental reduced row echelon ------------------------------------------

class EchelonBuilder:
    """Streaming reduced row-echelon form.

    Rows are kept sparse (``{column: Scalar}``) with pivot 1 and zeros in every
    other pivot column, so reducing a new vector against the basis is a single
    pass over its pivot-column entries.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, Scalar]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _sparse(self, row) -> dict[int, Scalar]:
        if isinstance(row, dict):
            return {c: Scalar.coerce(x) for c, x in row.items() if x}
        if len(row) != self.ncols:
            raise DimensionError(f"row of length {len(row)} in a {self.ncols}-column system")
        return {c: Scalar.coerce(x) for c, x in enumerate(row) if x}

    def _reduce(self, v: dict[int, Scalar]) -> dict[int, Scalar]:
        rows = self._rows
        for col in [c for c in v if c in rows]:
            f = v.get(col)
            if not f:
                continue
            for c, x in rows[col].items():
                nv = v.get(c, ZERO) - f * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
        return v

    def reduces_to_zero(self, row) -> bool:
        return not self._reduce(self._sparse(row))

    def add(self, row) -> bool:
        """Insert a row; return True when the rank grows."""
        v = self._reduce(self._sparse(row))
        if not v:
            return False
        piv = min(v)
        inv = v[piv].inverse()
        if inv != ONE:
            v = {c: x * inv for c, x in v.items()}
        for other in self._rows.values():
            f = other.get(piv)
            if f:
                for c, x in v.items():
                    nv = other.get(c, ZERO) - f * x
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self._rows[piv] = v
        return True

    def extend(self, rows: Iterable) -> "EchelonBuilder":
        for r in rows:
            self.add(r)
        return self

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> tuple:
        out = []
        for piv in sorted(self._rows):
            dense = [ZERO] * self.ncols
            for c, x in self._rows[piv].items():
                dense[c] = x
            out.append(tuple(dense))
        return tuple(out)

    def subspace(self) -> "Subspace":
        return Subspace(self.ncols, self.basis())

    def kernel(self) -> "Subspace":
        """Solution space of ``row . v = 0`` for every inserted row."""
        pivots = set(self._rows)
        vecs = []
        for free in range(self.ncols):
            if free in pivots:
                continue
            v = [ZERO] * self.ncols
            v[free] = ONE
            for piv, row in self._rows.items():
                x = row.get(free)
                if x:
                    v[piv] = -x
            vecs.append(v)
        # free-column vectors are already in reduced echelon form up to ordering
        return Subspace.span(vecs, self.ncols)


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of the coordinate space of dimension ``ambient_dim``.

    ``basis`` is the canonical reduced row-echelon basis, so ``==`` on two
    subspaces is exact subspace equality.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        return EchelonBuilder(ambient_dim).extend(vectors).subspace()

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(basis_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def builder(self) -> EchelonBuilder:
        b = EchelonBuilder(self.ambient_dim)
        for row in self.basis:
            piv = next(c for c, x in enumerate(row) if x)
            b._rows[piv] = {c: x for c, x in enumerate(row) if x}
        return b

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return self.builder().reduces_to_zero(v)

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def annihilator(self) -> "Subspace":
        """Vectors ``w`` with ``w . v = 0`` for all ``v`` in this subspace (bilinear pairing)."""
        return self.builder().kernel()


def _rows_of(m) -> tuple[list, int]:
    if isinstance(m, Matrix):
        return list(m.entries), m.cols
    rows = [list(r) for r in m]
    if not rows:
        raise DimensionError("column count of an empty row list is unknown; pass a Matrix")
    return rows, len(rows[0])


def rank(m) -> int:
    rows, cols = _rows_of(m)
    return EchelonBuilder(cols).extend(rows).rank


def kernel(m) -> Subspace:
    rows, cols = _rows_of(m)
    return EchelonBuilder(cols).extend(rows).kernel()


def solve_homogeneous(constraints: Iterable, ncols: int) -> Subspace:
    """Kernel of a constraint system fed row by row (rows may be dense or ``{col: value}``)."""
    return EchelonBuilder(ncols).extend(constraints).kernel()


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return a.builder().extend(b.basis).subspace()


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    constraints = a.annihilator().builder().extend(b.annihilator().basis)
    return constraints.kernel()


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _same_ambient(a, b)
    builder = a.builder()
    return all(builder.reduces_to_zero(row) for row in b.basis)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _same_ambient(a, b)
    return a.basis == b.basis
