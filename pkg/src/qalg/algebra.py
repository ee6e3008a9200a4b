"""Finite-dimensional associative unital algebras over the rationals.

An algebra is given by structure constants: ``structure[i][j]`` is the
coordinate vector of the basis product e_i * e_j. Elements are plain tuples of
Fractions relative to the algebra's basis; there is no element wrapper class.
All derived objects (center, quotients, subalgebras) use reduced row echelon
bases so equal inputs always produce identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AlgebraMismatchError,
    MalformedTableError,
    NotAnIdealError,
    ValidationError,
)
from .linalg import Mat, as_vector, kernel_basis, rat, rat_from_str, rat_to_str, rref, solve_linear

Vec = tuple[Fraction, ...]


class Subspace:
    """Subspace of Q^n with a canonical reduced-row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence] | Mat):
        if ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        if isinstance(vectors, Mat):
            m = vectors
        else:
            rows = [as_vector(v, ambient_dim) for v in vectors]
            m = Mat(rows) if rows else Mat.zeros(0, ambient_dim)
        if m.cols != ambient_dim and m.rows > 0:
            raise ValueError("vector length does not match the ambient dimension")
        ech, pivots = rref(m if m.rows else Mat.zeros(0, ambient_dim))
        kept = [ech.data[i] for i in range(len(pivots))]
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", Mat(kept) if kept else Mat.zeros(0, ambient_dim))
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains(self, v: Sequence) -> bool:
        w = list(as_vector(v, self.ambient_dim))
        for row, p in zip(self.basis.data, self.pivots):
            c = w[p]
            if c != 0:
                for idx in range(self.ambient_dim):
                    w[idx] -= c * row[idx]
        return all(x == 0 for x in w)

    def coordinates(self, v: Sequence) -> Vec:
        """Coordinates of v in the echelon basis. Raises ValueError when v
        is outside the subspace; with a reduced echelon basis the coordinates
        are just the pivot entries."""
        vv = as_vector(v, self.ambient_dim)
        if not self.contains(vv):
            raise ValueError("vector lies outside the subspace")
        return tuple(vv[p] for p in self.pivots)

    def vectors(self) -> tuple[Vec, ...]:
        return self.basis.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


class FDAlgebra:
    """Associative unital algebra over Q given by structure constants."""

    __slots__ = ("dim", "structure", "unit", "_hash", "_center")

    def __init__(self, structure: Sequence[Sequence[Sequence]], unit: Sequence):
        dim = len(structure)
        if dim < 1:
            raise ValueError("algebra dimension must be at least 1")
        table = []
        for i, row in enumerate(structure):
            if len(row) != dim:
                raise ValueError(f"structure row {i} has length {len(row)}, expected {dim}")
            table.append(tuple(as_vector(v, dim) for v in row))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "structure", tuple(table))
        object.__setattr__(self, "unit", as_vector(unit, dim))
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_center", None)

    def __setattr__(self, name, value):
        raise AttributeError("FDAlgebra is immutable")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, FDAlgebra)
            and self.dim == other.dim
            and self.unit == other.unit
            and self.structure == other.structure
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dim, self.unit, self.structure))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"FDAlgebra(dim={self.dim})"

    # -- elements ----------------------------------------------------------

    def zero(self) -> Vec:
        return tuple(Fraction(0) for _ in range(self.dim))

    def basis_element(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def element(self, values: Sequence) -> Vec:
        return as_vector(values, self.dim)

    def multiply(self, x: Sequence, y: Sequence) -> Vec:
        x = as_vector(x, self.dim)
        y = as_vector(y, self.dim)
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.structure[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                for k, s in enumerate(row[j]):
                    if s != 0:
                        out[k] += c * s
        return tuple(out)

    def power(self, x: Sequence, n: int) -> Vec:
        if n < 0:
            raise ValueError("negative powers are not defined")
        acc = self.unit
        base = as_vector(x, self.dim)
        for _ in range(n):
            acc = self.multiply(acc, base)
        return acc

    def is_idempotent(self, x: Sequence) -> bool:
        x = as_vector(x, self.dim)
        return self.multiply(x, x) == x

    def left_regular_matrix(self, x: Sequence) -> Mat:
        """Matrix of y -> x*y on column coordinate vectors."""
        x = as_vector(x, self.dim)
        cols = []
        for j in range(self.dim):
            col = [Fraction(0)] * self.dim
            for i, xi in enumerate(x):
                if xi != 0:
                    for k, s in enumerate(self.structure[i][j]):
                        if s != 0:
                            col[k] += xi * s
            cols.append(col)
        return Mat(cols).transpose()

    def right_regular_matrix(self, x: Sequence) -> Mat:
        """Matrix of y -> y*x on column coordinate vectors."""
        x = as_vector(x, self.dim)
        cols = []
        for j in range(self.dim):
            col = [Fraction(0)] * self.dim
            for i, xi in enumerate(x):
                if xi != 0:
                    for k, s in enumerate(self.structure[j][i]):
                        if s != 0:
                            col[k] += xi * s
            cols.append(col)
        return Mat(cols).transpose()

    # -- global structure ----------------------------------------------------

    def validate(self) -> None:
        """Check associativity on all basis triples and the unit laws.

        Raises ValidationError carrying the first violated triple (i, j, k),
        or with triple None for a unit law failure.
        """
        n = self.dim
        s = self.structure
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = [Fraction(0)] * n
                    for m, c in enumerate(s[i][j]):
                        if c != 0:
                            for t, d in enumerate(s[m][k]):
                                if d != 0:
                                    left[t] += c * d
                    right = [Fraction(0)] * n
                    for m, c in enumerate(s[j][k]):
                        if c != 0:
                            for t, d in enumerate(s[i][m]):
                                if d != 0:
                                    right[t] += c * d
                    if left != right:
                        raise ValidationError(
                            f"associativity fails on basis triple ({i}, {j}, {k})",
                            triple=(i, j, k),
                        )
        for i in range(n):
            e = self.basis_element(i)
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise ValidationError(f"unit law fails on basis element {i}")

    def is_commutative(self) -> bool:
        s = self.structure
        return all(s[i][j] == s[j][i] for i in range(self.dim) for j in range(i))

    def center(self) -> Subspace:
        """Elements commuting with the whole algebra, as a subspace."""
        cached = self._center
        if cached is not None:
            return cached
        blocks = []
        for j in range(self.dim):
            ej = self.basis_element(j)
            diff = self.left_regular_matrix(ej) - self.right_regular_matrix(ej)
            blocks.extend(diff.data)
        ker = kernel_basis(Mat(blocks))
        out = Subspace(self.dim, ker)
        object.__setattr__(self, "_center", out)
        return out

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "unit": [rat_to_str(c) for c in self.unit],
            "structure": [
                [[rat_to_str(c) for c in vec] for vec in row] for row in self.structure
            ],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "FDAlgebra":
        if not isinstance(obj, dict):
            raise ValueError("algebra JSON must be an object")
        for key in ("dim", "unit", "structure"):
            if key not in obj:
                raise ValueError(f"algebra JSON missing key {key!r}")
        dim = obj["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValueError("dim must be a positive integer")
        structure = obj["structure"]
        unit = obj["unit"]
        if len(structure) != dim or any(len(row) != dim for row in structure):
            raise ValueError("structure must be a dim x dim array of vectors")
        parsed = [
            [[rat_from_str(c) for c in vec] for vec in row] for row in structure
        ]
        if any(len(vec) != dim for row in parsed for vec in row):
            raise ValueError("structure vectors must have length dim")
        if len(unit) != dim:
            raise ValueError("unit must have length dim")
        return FDAlgebra(parsed, [rat_from_str(c) for c in unit])


def subalgebra_on(a: FDAlgebra, sub: Subspace, unit_vec: Sequence) -> FDAlgebra:
    """Algebra structure induced on a multiplicatively closed subspace with
    the given unit element. Coordinates are taken in the echelon basis."""
    if sub.ambient_dim != a.dim:
        raise AlgebraMismatchError("subspace does not live in the algebra")
    unit_vec = as_vector(unit_vec, a.dim)
    if not sub.contains(unit_vec):
        raise ValueError("designated unit lies outside the subspace")
    rows = sub.vectors()
    structure = []
    for bi in rows:
        row = []
        for bj in rows:
            prod = a.multiply(bi, bj)
            if not sub.contains(prod):
                raise ValueError("subspace is not closed under multiplication")
            row.append(sub.coordinates(prod))
        structure.append(row)
    return FDAlgebra(structure, sub.coordinates(unit_vec))


@dataclass(frozen=True)
class QuotientPresentation:
    """Quotient algebra with explicit projection and linear section.

    projection maps ambient coordinates to quotient coordinates (as a matrix
    acting on column vectors); section is a right inverse picking the
    representative supported on the stored complement basis.
    """

    algebra: FDAlgebra
    ideal: Subspace
    quotient: FDAlgebra
    projection: Mat
    section: Mat

    def project(self, x: Sequence) -> Vec:
        return self.projection.apply(as_vector(x, self.algebra.dim))

    def lift(self, y: Sequence) -> Vec:
        return self.section.apply(as_vector(y, self.quotient.dim))


def quotient_by_ideal(a: FDAlgebra, n: Subspace) -> QuotientPresentation:
    """Quotient of a by a proper two-sided ideal given as a subspace.

    Raises NotAnIdealError when the subspace is not a two-sided ideal, and
    ValueError when the ideal is the whole algebra (the quotient would be
    zero-dimensional, which is outside this package's algebra type).
    """
    if n.ambient_dim != a.dim:
        raise AlgebraMismatchError("ideal does not live in the algebra")
    for u in n.vectors():
        for i in range(a.dim):
            e = a.basis_element(i)
            if not n.contains(a.multiply(e, u)) or not n.contains(a.multiply(u, e)):
                raise NotAnIdealError("subspace is not a two-sided ideal")
    if n.dim == a.dim:
        raise ValueError("ideal is the whole algebra; quotient would have dimension 0")

    # Pivot-greedy completion: extend the ideal basis by standard basis
    # vectors in index order.
    echelon: list[tuple[int, list[Fraction]]] = [
        (p, list(row)) for p, row in zip(n.pivots, n.basis.data)
    ]
    complement: list[int] = []
    for i in range(a.dim):
        w = [Fraction(0)] * a.dim
        w[i] = Fraction(1)
        for p, row in echelon:
            c = w[p]
            if c != 0:
                for idx in range(a.dim):
                    w[idx] -= c * row[idx]
        lead = next((idx for idx, x in enumerate(w) if x != 0), None)
        if lead is None:
            continue
        inv = Fraction(1) / w[lead]
        w = [x * inv for x in w]
        echelon.append((lead, w))
        echelon.sort(key=lambda pr: pr[0])
        complement.append(i)
    qdim = len(complement)
    assert qdim == a.dim - n.dim

    comp_rows = [a.basis_element(i) for i in complement]
    basis_change = Mat(list(comp_rows) + list(n.basis.data)).transpose()
    inverse = solve_linear(basis_change, Mat.identity(a.dim))
    projection = Mat(inverse.data[:qdim])
    section = Mat(comp_rows).transpose()

    structure = []
    for ci in comp_rows:
        row = []
        for cj in comp_rows:
            row.append(projection.apply(a.multiply(ci, cj)))
        structure.append(row)
    quotient = FDAlgebra(structure, projection.apply(a.unit))
    qp = QuotientPresentation(
        algebra=a, ideal=n, quotient=quotient, projection=projection, section=section
    )
    assert projection * section == Mat.identity(qdim)
    return qp


# ---------------------------------------------------------------------------
# Constructors


def group_algebra(table: Sequence[Sequence[int]]) -> FDAlgebra:
    """Group algebra of a finite group given by its multiplication table.

    table[i][j] is the index of the product of elements i and j. The table
    must be a Latin square with a two-sided identity and associative
    composition; anything else raises MalformedTableError.
    """
    n = len(table)
    if n == 0:
        raise MalformedTableError("empty table")
    rows = []
    for i, row in enumerate(table):
        r = list(row)
        if len(r) != n:
            raise MalformedTableError(f"row {i} has length {len(r)}, expected {n}")
        if any(not isinstance(x, int) or x < 0 or x >= n for x in r):
            raise MalformedTableError(f"row {i} has entries outside 0..{n - 1}")
        rows.append(r)
    for i in range(n):
        if sorted(rows[i]) != list(range(n)):
            raise MalformedTableError(f"row {i} is not a permutation")
        if sorted(rows[j][i] for j in range(n)) != list(range(n)):
            raise MalformedTableError(f"column {i} is not a permutation")
    identity = None
    for e in range(n):
        if all(rows[e][j] == j for j in range(n)) and all(rows[j][e] == j for j in range(n)):
            identity = e
            break
    if identity is None:
        raise MalformedTableError("no two-sided identity element")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if rows[rows[i][j]][k] != rows[i][rows[j][k]]:
                    raise MalformedTableError(
                        f"composition is not associative at ({i}, {j}, {k})"
                    )
    zero = Fraction(0)
    one = Fraction(1)
    structure = [
        [tuple(one if k == rows[i][j] else zero for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    unit = tuple(one if k == identity else zero for k in range(n))
    return FDAlgebra(structure, unit)


def matrix_algebra(n: int) -> FDAlgebra:
    """Full matrix algebra of n x n rational matrices, basis E_pq in row-major
    order."""
    return matrix_over(None, n)


def matrix_over(base: FDAlgebra | None, n: int) -> FDAlgebra:
    """Matrix algebra of size n over a coefficient algebra (rationals when
    base is None). Basis: E_pq tensor b_t, ordered by (p, q, t)."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    bdim = 1 if base is None else base.dim
    dim = n * n * bdim
    zero = Fraction(0)

    def idx(p: int, q: int, t: int) -> int:
        return (p * n + q) * bdim + t

    structure = [[None] * dim for _ in range(dim)]
    for p in range(n):
        for q in range(n):
            for t in range(bdim):
                i = idx(p, q, t)
                for r in range(n):
                    for s_col in range(n):
                        for u in range(bdim):
                            j = idx(r, s_col, u)
                            vec = [zero] * dim
                            if q == r:
                                coeffs = (
                                    (Fraction(1),)
                                    if base is None
                                    else base.structure[t][u]
                                )
                                for w, c in enumerate(coeffs):
                                    if c != 0:
                                        vec[idx(p, s_col, w)] = c
                            structure[i][j] = tuple(vec)
    unit = [zero] * dim
    if base is None:
        for p in range(n):
            unit[idx(p, p, 0)] = Fraction(1)
    else:
        for p in range(n):
            for t, c in enumerate(base.unit):
                unit[idx(p, p, t)] = c
    return FDAlgebra(structure, unit)


def upper_triangular(n: int) -> FDAlgebra:
    """Upper triangular n x n matrices, basis E_pq for p <= q in lexicographic
    order."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    pairs = [(p, q) for p in range(n) for q in range(p, n)]
    index = {pq: i for i, pq in enumerate(pairs)}
    dim = len(pairs)
    zero = Fraction(0)
    structure = []
    for (p, q) in pairs:
        row = []
        for (r, s) in pairs:
            vec = [zero] * dim
            if q == r:
                vec[index[(p, s)]] = Fraction(1)
            row.append(tuple(vec))
        structure.append(row)
    unit = [zero] * dim
    for p in range(n):
        unit[index[(p, p)]] = Fraction(1)
    return FDAlgebra(structure, unit)


def dual_numbers() -> FDAlgebra:
    """Q[t]/(t^2): basis (1, t)."""
    zero, one = Fraction(0), Fraction(1)
    structure = [
        [(one, zero), (zero, one)],
        [(zero, one), (zero, zero)],
    ]
    return FDAlgebra(structure, (one, zero))


def quaternions(a, b) -> FDAlgebra:
    """Quaternion algebra with i^2 = a, j^2 = b, ij = k = -ji. Basis 1, i, j, k."""
    a = rat(a)
    b = rat(b)
    if a == 0 or b == 0:
        raise ValueError("quaternion parameters must be nonzero")
    zero, one = Fraction(0), Fraction(1)

    def v(c0=zero, c1=zero, c2=zero, c3=zero):
        return (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    structure = [
        [v(one), v(0, 1), v(0, 0, 1), v(0, 0, 0, 1)],
        [v(0, 1), v(a), v(0, 0, 0, 1), v(0, 0, a)],
        [v(0, 0, 1), v(0, 0, 0, -1), v(b), v(0, -b)],
        [v(0, 0, 0, 1), v(0, 0, -a), v(0, b), v(-a * b)],
    ]
    return FDAlgebra(structure, v(one))


def direct_product(algebras: Sequence[FDAlgebra]) -> FDAlgebra:
    """Direct product with componentwise operations; bases concatenate."""
    if not algebras:
        raise ValueError("direct product needs at least one algebra")
    dim = sum(a.dim for a in algebras)
    offsets = []
    off = 0
    for a in algebras:
        offsets.append(off)
        off += a.dim
    zero = Fraction(0)
    structure = [[tuple([zero] * dim) for _ in range(dim)] for _ in range(dim)]
    unit = [zero] * dim
    for a, off in zip(algebras, offsets):
        for i in range(a.dim):
            for j in range(a.dim):
                vec = [zero] * dim
                for k, c in enumerate(a.structure[i][j]):
                    vec[off + k] = c
                structure[off + i][off + j] = tuple(vec)
        for k, c in enumerate(a.unit):
            unit[off + k] = c
    return FDAlgebra(structure, unit)
