"""Finite-dimensional unital associative algebras and bimodules via structure constants.

Conventions
-----------
* ``Algebra.structure[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
* ``Bimodule.left[i][j][k]`` is the coefficient of ``m_k`` in ``e_i m_j`` and
  ``Bimodule.right[j][i][k]`` the coefficient of ``m_k`` in ``m_j e_i``.
* Builders use matrix-unit bases ``E11, E12, ...`` in row-major order.
"""

from __future__ import annotations

import re
from dataclasses import InitVar, dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Sequence

from .certificate import Certificate, Outcome
from .errors import AxiomError, DimensionError
from .linalg import (
    ONE, ZERO, Matrix, Scalar, Vector, as_vector, basis_vector, vadd,
)

__all__ = [
    "Algebra", "Bimodule", "LinearMap", "BilinearMap",
    "multiply", "jordan", "act", "module_jordan", "bracket_amb", "bracket_abm",
    "verify_algebra", "verify_bimodule",
    "matrix_algebra", "triangular_algebra", "block_triangular", "matrix_unit_algebra",
    "regular_bimodule", "ambient_matrix_bimodule", "remark_bimodule", "matrix_units",
]


def _tensor(data, shape) -> tuple:
    n0, n1, n2 = shape
    if len(data) != n0 or any(len(row) != n1 for row in data) or any(
        len(cell) != n2 for row in data for cell in row
    ):
        raise DimensionError(f"structure tensor does not have shape {shape}")
    return tuple(tuple(as_vector(cell) for cell in row) for row in data)


def _sparse_table(t: tuple) -> tuple:
    return tuple(
        tuple(tuple((k, c) for k, c in enumerate(cell) if c) for cell in row) for row in t
    )


@dataclass(frozen=True)
class Algebra:
    """Unital associative algebra of dimension ``dim`` given by structure constants.

    Construction verifies the axioms on all basis triples and raises
    :class:`AxiomError` (with the offending triple) unless ``check=False``.
    """

    dim: int
    labels: tuple
    structure: tuple
    unit: Vector
    name: str = field(default="", compare=False)
    check: InitVar[bool] = True

    def __post_init__(self, check):
        n = self.dim
        if n < 1:
            raise DimensionError("an algebra needs dimension at least 1")
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.labels) != n:
            raise DimensionError(f"{len(self.labels)} labels for dimension {n}")
        object.__setattr__(self, "structure", _tensor(self.structure, (n, n, n)))
        object.__setattr__(self, "unit", as_vector(self.unit))
        if len(self.unit) != n:
            raise DimensionError("unit has the wrong length")
        if check:
            cert = verify_algebra(self)
            if not cert.certified:
                raise AxiomError(f"not a unital associative algebra: {cert.details['law']}",
                                 cert.witness)

    @cached_property
    def table(self) -> tuple:
        """Sparse products: ``table[i][j]`` lists ``(k, c)`` with ``c != 0``."""
        return _sparse_table(self.structure)

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def element(self, coords: Sequence) -> Vector:
        v = as_vector(coords)
        if len(v) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def vec(self, **coeffs) -> Vector:
        """Element from label keywords, e.g. ``A.vec(E11=1, E12=2)``."""
        v = [ZERO] * self.dim
        for label, c in coeffs.items():
            v[self.index(label)] = Scalar.coerce(c)
        return tuple(v)

    def left_matrix(self, a: Sequence[Scalar]) -> Matrix:
        """Matrix of ``x -> a x``."""
        cols = [multiply(self, a, self.basis(j)) for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(zip(*cols)))

    def right_matrix(self, a: Sequence[Scalar]) -> Matrix:
        """Matrix of ``x -> x a``."""
        cols = [multiply(self, self.basis(j), a) for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(zip(*cols)))

    def describe(self, v: Sequence[Scalar]) -> str:
        terms = []
        for k, c in enumerate(v):
            if c == 1:
                terms.append(self.labels[k])
            elif c == -1:
                terms.append(f"-{self.labels[k]}")
            elif c:
                terms.append(f"({c})*{self.labels[k]}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Bimodule:
    """Unital ``A``-bimodule of dimension ``dim`` given by action tensors."""

    algebra: Algebra
    dim: int
    left: tuple
    right: tuple
    labels: tuple = ()
    name: str = field(default="", compare=False)
    check: InitVar[bool] = True

    def __post_init__(self, check):
        n, m = self.algebra.dim, self.dim
        if m < 1:
            raise DimensionError("a bimodule needs dimension at least 1")
        object.__setattr__(self, "left", _tensor(self.left, (n, m, m)))
        object.__setattr__(self, "right", _tensor(self.right, (m, n, m)))
        labels = tuple(str(x) for x in self.labels) or tuple(f"m{k + 1}" for k in range(m))
        if len(labels) != m:
            raise DimensionError(f"{len(labels)} labels for bimodule dimension {m}")
        object.__setattr__(self, "labels", labels)
        if check:
            cert = verify_bimodule(self)
            if not cert.certified:
                raise AxiomError(f"not a unital bimodule: {cert.details['law']}", cert.witness)

    @cached_property
    def left_table(self) -> tuple:
        return _sparse_table(self.left)

    @cached_property
    def right_table(self) -> tuple:
        return _sparse_table(self.right)

    @cached_property
    def left_basis_matrices(self) -> tuple:
        """``L[i]``: matrix of ``m -> e_i m``."""
        return tuple(self.left_matrix(self.algebra.basis(i)) for i in range(self.algebra.dim))

    @cached_property
    def right_basis_matrices(self) -> tuple:
        """``R[i]``: matrix of ``m -> m e_i``."""
        return tuple(self.right_matrix(self.algebra.basis(i)) for i in range(self.algebra.dim))

    def left_matrix(self, a: Sequence[Scalar]) -> Matrix:
        cols = [act(self, a, basis_vector(self.dim, j), "left") for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(zip(*cols)))

    def right_matrix(self, a: Sequence[Scalar]) -> Matrix:
        cols = [act(self, a, basis_vector(self.dim, j), "right") for j in range(self.dim)]
        return Matrix(self.dim, self.dim, tuple(zip(*cols)))

    def element(self, coords: Sequence) -> Vector:
        v = as_vector(coords)
        if len(v) != self.dim:
            raise DimensionError(f"expected {self.dim} module coordinates, got {len(v)}")
        return v


@dataclass(frozen=True)
class LinearMap:
    """Linear map from an ``n``-dimensional algebra into an ``m``-dimensional space.

    ``matrix`` is ``m x n``; column ``j`` holds the coordinates of ``D(e_j)``.
    """

    source_dim: int
    target_dim: int
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(as_vector(r) for r in self.matrix))
        if len(self.matrix) != self.target_dim or any(len(r) != self.source_dim for r in self.matrix):
            raise DimensionError("linear map matrix does not match its shape")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], target_dim: int) -> "LinearMap":
        cols = [as_vector(c) for c in columns]
        return cls(len(cols), target_dim, tuple(zip(*cols)) if cols else ((),) * target_dim)

    @classmethod
    def from_function(cls, A: Algebra, f: Callable, target_dim: int) -> "LinearMap":
        return cls.from_columns([f(A.basis(j)) for j in range(A.dim)], target_dim)

    @classmethod
    def from_vector(cls, v: Sequence, source_dim: int, target_dim: int) -> "LinearMap":
        """Inverse of :meth:`to_vector` (column-major: ``D(e_1)`` first)."""
        if len(v) != source_dim * target_dim:
            raise DimensionError("vectorized map has the wrong length")
        cols = [v[j * target_dim:(j + 1) * target_dim] for j in range(source_dim)]
        return cls.from_columns(cols, target_dim)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.matrix)

    def to_vector(self) -> Vector:
        return tuple(x for j in range(self.source_dim) for x in self.column(j))

    def __call__(self, a: Sequence[Scalar]) -> Vector:
        if len(a) != self.source_dim:
            raise DimensionError(f"expected argument of length {self.source_dim}")
        out = [ZERO] * self.target_dim
        for j, aj in enumerate(a):
            if aj:
                for k in range(self.target_dim):
                    x = self.matrix[k][j]
                    if x:
                        out[k] = out[k] + aj * x
        return tuple(out)


@dataclass(frozen=True)
class BilinearMap:
    """Bilinear map ``A x A -> X`` with ``coeffs[i][j] = phi(e_i, e_j)`` in ``X`` (dim ``target_dim``)."""

    source_dim: int
    target_dim: int
    coeffs: tuple

    def __post_init__(self):
        n, t = self.source_dim, self.target_dim
        object.__setattr__(self, "coeffs", _tensor(self.coeffs, (n, n, t)))

    @classmethod
    def from_function(cls, A: Algebra, f: Callable, target_dim: int) -> "BilinearMap":
        n = A.dim
        return cls(n, target_dim, [[f(A.basis(i), A.basis(j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_vector(cls, v: Sequence, source_dim: int, target_dim: int) -> "BilinearMap":
        """Coordinates are ordered ``(i * n + j) * t + s``."""
        n, t = source_dim, target_dim
        if len(v) != n * n * t:
            raise DimensionError("vectorized bilinear map has the wrong length")
        return cls(n, t, [[v[(i * n + j) * t:(i * n + j + 1) * t] for j in range(n)] for i in range(n)])

    def to_vector(self) -> Vector:
        return tuple(x for row in self.coeffs for cell in row for x in cell)

    def __call__(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
        n, t = self.source_dim, self.target_dim
        if len(a) != n or len(b) != n:
            raise DimensionError(f"bilinear map expects arguments of length {n}")
        out = [ZERO] * t
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for s, x in enumerate(self.coeffs[i][j]):
                    if x:
                        out[s] = out[s] + c * x
        return tuple(out)


# -- products -----------------------------------------------------------------

def _bilinear(table, u: Sequence[Scalar], v: Sequence[Scalar], size: int) -> Vector:
    # Accumulate unreduced integer triples (re, im, den) and normalise once per
    # coordinate; building a reduced Scalar per term dominated the run time.
    acc: dict = {}
    nz_v = [(j, y._a, y._b, y._d) for j, y in enumerate(v) if y]
    for i, x in enumerate(u):
        if not x:
            continue
        row = table[i]
        xa, xb, xd = x._a, x._b, x._d
        for j, ya, yb, yd in nz_v:
            cell = row[j]
            if not cell:
                continue
            pa, pb, pd = xa * ya - xb * yb, xa * yb + xb * ya, xd * yd
            for k, c in cell:
                ca, cb, cd = c._a, c._b, c._d
                ta, tb, td = pa * ca - pb * cb, pa * cb + pb * ca, pd * cd
                old = acc.get(k)
                if old is None:
                    acc[k] = (ta, tb, td)
                elif old[2] == td:
                    acc[k] = (old[0] + ta, old[1] + tb, td)
                else:
                    acc[k] = (old[0] * td + ta * old[2], old[1] * td + tb * old[2], old[2] * td)
    out = [ZERO] * size
    for k, (a, b, d) in acc.items():
        if a or b:
            out[k] = Scalar._raw(a, b, d)
    return tuple(out)


def multiply(A: Algebra, a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
    if len(a) != A.dim or len(b) != A.dim:
        raise DimensionError(f"multiply expects elements of length {A.dim}")
    return _bilinear(A.table, a, b, A.dim)


def jordan(A: Algebra, a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
    """Jordan product ``a o b = ab + ba``."""
    return vadd(multiply(A, a, b), multiply(A, b, a))


def act(M: Bimodule, a: Sequence[Scalar], m: Sequence[Scalar], side: str = "left") -> Vector:
    """``a m`` (``side="left"``) or ``m a`` (``side="right"``)."""
    if len(a) != M.algebra.dim or len(m) != M.dim:
        raise DimensionError("act: element/module dimension mismatch")
    if side == "left":
        return _bilinear(M.left_table, a, m, M.dim)
    if side == "right":
        return _bilinear(M.right_table, m, a, M.dim)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def module_jordan(M: Bimodule, a: Sequence[Scalar], m: Sequence[Scalar]) -> Vector:
    """``a . m = m . a = am + ma``."""
    return vadd(act(M, a, m, "left"), act(M, a, m, "right"))


def _amb(M: Bimodule, a, m, b) -> Vector:
    return act(M, b, act(M, a, m, "left"), "right")


def bracket_amb(M: Bimodule, a, m, b) -> Vector:
    """``[a, m, b] = amb + bma``."""
    return vadd(_amb(M, a, m, b), _amb(M, b, m, a))


def bracket_abm(M: Bimodule, a, b, m) -> Vector:
    """``[a, b, m] = [m, b, a] = abm + mba``."""
    A = M.algebra
    return vadd(act(M, multiply(A, a, b), m, "left"), act(M, multiply(A, b, a), m, "right"))


# -- axiom verification -------------------------------------------------------

def verify_algebra(A: Algebra) -> Certificate:
    """Check associativity and the unit law on every basis triple."""
    n = A.dim
    for i in range(n):
        ei = A.basis(i)
        if multiply(A, A.unit, ei) != ei or multiply(A, ei, A.unit) != ei:
            return Certificate(Outcome.REFUTED, witness={"basis": [A.labels[i]]},
                               details={"law": "unit"})
    products = [[multiply(A, A.basis(i), A.basis(j)) for j in range(n)] for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        lhs = multiply(A, products[i][j], A.basis(k))
        rhs = multiply(A, A.basis(i), products[j][k])
        if lhs != rhs:
            return Certificate(
                Outcome.REFUTED,
                witness={"triple": [A.labels[i], A.labels[j], A.labels[k]], "lhs": lhs, "rhs": rhs},
                details={"law": "associativity"},
            )
    return Certificate(Outcome.CERTIFIED, details={"law": "all", "triples_checked": n ** 3})


def verify_bimodule(M: Bimodule) -> Certificate:
    """Check ``(ab)m = a(bm)``, ``m(ab) = (ma)b``, ``(am)b = a(mb)`` and unitality on basis triples."""
    A = M.algebra
    n, m = A.dim, M.dim
    E = [A.basis(i) for i in range(n)]
    F = [basis_vector(m, k) for k in range(m)]

    def fail(law, labels):
        return Certificate(Outcome.REFUTED, witness={"triple": labels}, details={"law": law})

    for k in range(m):
        if act(M, A.unit, F[k], "left") != F[k] or act(M, A.unit, F[k], "right") != F[k]:
            return fail("unit", [M.labels[k]])
    for i, j, k in product(range(n), range(n), range(m)):
        ab = multiply(A, E[i], E[j])
        labels = [A.labels[i], A.labels[j], M.labels[k]]
        if act(M, ab, F[k], "left") != act(M, E[i], act(M, E[j], F[k], "left"), "left"):
            return fail("left associativity", labels)
        if act(M, ab, F[k], "right") != act(M, E[j], act(M, E[i], F[k], "right"), "right"):
            return fail("right associativity", labels)
        if _amb(M, E[i], F[k], E[j]) != act(M, E[i], act(M, E[j], F[k], "right"), "left"):
            return fail("middle associativity", labels)
    return Certificate(Outcome.CERTIFIED, details={"law": "all", "triples_checked": 3 * n * n * m})


# -- builders -----------------------------------------------------------------

def _unit_label(i: int, j: int, size: int) -> str:
    return f"E{i + 1}{j + 1}" if size < 10 else f"E{i + 1},{j + 1}"


def matrix_unit_algebra(size: int, positions: Sequence[tuple], name: str = "") -> Algebra:
    """Subalgebra of ``M_size`` spanned by the given matrix units (must contain the diagonal)."""
    positions = sorted(set(positions))
    index = {p: k for k, p in enumerate(positions)}
    n = len(positions)
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                if (i, l) not in index:
                    raise ValueError(f"positions are not closed under multiplication at {(i, l)}")
                c[a][b][index[(i, l)]] = ONE
    unit = [ONE if i == j else ZERO for (i, j) in positions]
    if sum(1 for (i, j) in positions if i == j) != size:
        raise ValueError("matrix-unit algebra must contain every diagonal unit")
    labels = [_unit_label(i, j, size) for (i, j) in positions]
    return Algebra(n, labels, c, unit, name=name)


def matrix_algebra(n: int) -> Algebra:
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    return matrix_unit_algebra(n, [(i, j) for i in range(n) for j in range(n)], f"matrix({n})")


def triangular_algebra(n: int) -> Algebra:
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    return matrix_unit_algebra(n, [(i, j) for i in range(n) for j in range(i, n)], f"triangular({n})")


def block_triangular(partition: Sequence[int]) -> Algebra:
    """Block upper-triangular matrices for the given block sizes (a finite nest algebra)."""
    if not partition or any(int(p) < 1 for p in partition):
        raise ValueError("partition entries must be positive integers")
    block = [b for b, size in enumerate(partition) for _ in range(int(size))]
    size = len(block)
    positions = [(i, j) for i in range(size) for j in range(size) if block[i] <= block[j]]
    return matrix_unit_algebra(size, positions, f"block({list(partition)})")


_UNIT_RE = re.compile(r"E(\d+),?(\d+)")


def matrix_units(A: Algebra):
    """Recognize a matrix-unit basis from the labels.

    Returns ``(size, positions)`` when every label is ``Eij`` and the structure
    constants follow ``Eij Ekl = [j == k] Eil``; otherwise ``None``.
    """
    positions = []
    for lab in A.labels:
        m = _UNIT_RE.fullmatch(lab)
        if m is None:
            return None
        positions.append((int(m.group(1)) - 1, int(m.group(2)) - 1))
    if len(set(positions)) != len(positions) or min(min(p) for p in positions) < 0:
        return None
    size = max(max(p) for p in positions) + 1
    index = {p: k for k, p in enumerate(positions)}
    for a, (i, j) in enumerate(positions):
        for b, (k, l) in enumerate(positions):
            expected = [ZERO] * A.dim
            if j == k:
                if (i, l) not in index:
                    return None
                expected[index[(i, l)]] = ONE
            if A.structure[a][b] != tuple(expected):
                return None
    return size, tuple(positions)


def regular_bimodule(A: Algebra) -> Bimodule:
    n = A.dim
    right = [[A.structure[j][i] for i in range(n)] for j in range(n)]
    return Bimodule(A, n, A.structure, right, labels=A.labels, name="regular")


def ambient_matrix_bimodule(A: Algebra) -> Bimodule:
    """Full matrix space ``M_s`` as a bimodule over a matrix-unit subalgebra ``A`` of ``M_s``."""
    units = matrix_units(A)
    if units is None:
        raise ValueError("ambient bimodule needs an algebra with a matrix-unit basis")
    size, positions = units
    full = [(i, j) for i in range(size) for j in range(size)]
    index = {p: k for k, p in enumerate(full)}
    m = len(full)
    left = [[[ZERO] * m for _ in range(m)] for _ in positions]
    right = [[[ZERO] * m for _ in positions] for _ in range(m)]
    for a, (i, j) in enumerate(positions):
        for b, (k, l) in enumerate(full):
            if j == k:
                left[a][b][index[(i, l)]] = ONE
            if l == i:
                right[b][a][index[(k, j)]] = ONE
    labels = [_unit_label(i, j, size) for (i, j) in full]
    return Bimodule(A, m, left, right, labels=labels, name="ambient")


def remark_bimodule() -> tuple[Algebra, Bimodule]:
    """``T_2`` acting on ``C`` by ``a g = a22 g`` and ``g a = g a11``."""
    A = triangular_algebra(2)
    a11, a22 = A.index("E11"), A.index("E22")
    left = [[[ONE if i == a22 else ZERO]] for i in range(A.dim)]
    right = [[[ONE if i == a11 else ZERO] for i in range(A.dim)]]
    M = Bimodule(A, 1, left, right, labels=("1",), name="remark")
    return A, M

