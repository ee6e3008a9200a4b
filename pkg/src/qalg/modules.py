"""Idempotent lifting and projective modules given by idempotent matrices.

Lifting refines p to 3p^2 - 2p^3, which squares the error term p^2 - p inside
the nilpotent ideal, so at most ceil(log2(nilpotency index)) passes are ever
needed. A projective right module is presented by an idempotent matrix P over
the algebra; its image in each simple factor of the semisimple quotient has a
well-defined rational rank, and two presentations give isomorphic modules
exactly when their rank vectors agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import FDAlgebra, QuotientPresentation, Subspace, Vec, subalgebra_on
from .errors import AlgebraMismatchError, NotIdempotentError, UnknownIndexError
from .linalg import Mat, rank, rat_from_str, rat_to_str
from .structure import (
    WedderburnReport,
    _corner_subspace,
    _ideal_nilpotency_index,
    jacobson_radical,
    wedderburn_decomposition,
)

AMatEntries = tuple[tuple[Vec, ...], ...]


def _vec_add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def _vec_scale(c: Fraction, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def amat_entries(a: FDAlgebra, rows: Sequence[Sequence[Sequence]]) -> AMatEntries:
    size = len(rows)
    out = []
    for row in rows:
        if len(row) != size:
            raise ValueError("algebra-valued matrix must be square")
        out.append(tuple(a.element(entry) for entry in row))
    return tuple(out)


def amat_mul(a: FDAlgebra, x: AMatEntries, y: AMatEntries) -> AMatEntries:
    size = len(x)
    out = []
    for u in range(size):
        row = []
        for v in range(size):
            acc = a.zero()
            for w in range(size):
                acc = _vec_add(acc, a.multiply(x[u][w], y[w][v]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def amat_combine(coeff_x: int, x: AMatEntries, coeff_y: int, y: AMatEntries) -> AMatEntries:
    cx, cy = Fraction(coeff_x), Fraction(coeff_y)
    return tuple(
        tuple(_vec_add(_vec_scale(cx, ex), _vec_scale(cy, ey)) for ex, ey in zip(rx, ry))
        for rx, ry in zip(x, y)
    )


class IdempotentMatrix:
    """Square matrix over an algebra with P*P = P, presenting the projective
    right module P * A^size (columns)."""

    __slots__ = ("algebra", "size", "entries")

    def __init__(self, algebra: FDAlgebra, entries: Sequence[Sequence[Sequence]]):
        ents = amat_entries(algebra, entries)
        if amat_mul(algebra, ents, ents) != ents:
            raise NotIdempotentError("matrix is not idempotent over the algebra")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "size", len(ents))
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("IdempotentMatrix is immutable")

    @staticmethod
    def diagonal(algebra: FDAlgebra, diagonal_elements: Sequence[Sequence]) -> "IdempotentMatrix":
        size = len(diagonal_elements)
        zero = algebra.zero()
        rows = [
            [diagonal_elements[u] if u == v else zero for v in range(size)]
            for u in range(size)
        ]
        return IdempotentMatrix(algebra, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IdempotentMatrix)
            and self.algebra == other.algebra
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.entries))

    def to_json_lists(self) -> list[list[list[str]]]:
        """Nested arrays of coordinate vectors with rationals as strings."""
        return [
            [[rat_to_str(c) for c in entry] for entry in row] for row in self.entries
        ]

    @staticmethod
    def from_json_lists(algebra: FDAlgebra, obj) -> "IdempotentMatrix":
        if not isinstance(obj, list) or any(not isinstance(row, list) for row in obj):
            raise ValueError("idempotent matrix JSON must be a nested array")
        rows = [
            [[rat_from_str(c) for c in entry] for entry in row] for row in obj
        ]
        return IdempotentMatrix(algebra, rows)

    def __repr__(self) -> str:
        return f"IdempotentMatrix(size={self.size}, algebra_dim={self.algebra.dim})"


@dataclass(frozen=True)
class ProjectiveModuleDescriptor:
    """Presentation together with its per-factor rank vector. uniform_rank is
    the common value when every factor has the same rank, else None."""

    algebra: FDAlgebra
    presentation: IdempotentMatrix
    rank_vector: tuple[Fraction, ...]
    uniform_rank: Fraction | None


def _check_nilpotent_ideal(qp: QuotientPresentation) -> int:
    return _ideal_nilpotency_index(qp.algebra, qp.ideal)


def _refine_idempotent_element(a: FDAlgebra, p: Vec, max_steps: int) -> tuple[Vec, int]:
    steps = 0
    while a.multiply(p, p) != p:
        if steps >= max_steps:
            raise AssertionError("idempotent refinement exceeded its guaranteed bound")
        p2 = a.multiply(p, p)
        p3 = a.multiply(p2, p)
        p = tuple(3 * b - 2 * c for b, c in zip(p2, p3))
        steps += 1
    return p, steps


def lift_idempotent_with_count(q: Sequence, qp: QuotientPresentation) -> tuple[Vec, int]:
    """Lift an idempotent of the quotient through the nilpotent ideal,
    returning the lifted element and the number of refinement passes."""
    q = qp.quotient.element(q)
    if not qp.quotient.is_idempotent(q):
        raise NotIdempotentError("element is not idempotent in the quotient")
    index = _check_nilpotent_ideal(qp)
    bound = (index - 1).bit_length()
    p, steps = _refine_idempotent_element(qp.algebra, qp.lift(q), bound)
    assert qp.project(p) == q
    return p, steps


def lift_idempotent(q: Sequence, qp: QuotientPresentation) -> Vec:
    """Idempotent of the ambient algebra projecting onto q."""
    return lift_idempotent_with_count(q, qp)[0]


def refine_to_idempotent(qp: QuotientPresentation, p: Sequence) -> tuple[Vec, int]:
    """Refine an ambient element that is idempotent modulo the ideal into a
    true idempotent with the same class, returning it and the pass count.

    Unlike lift_idempotent this starts from the given representative, not
    from the section of its class.
    """
    a = qp.algebra
    p = a.element(p)
    q = qp.project(p)
    if not qp.quotient.is_idempotent(q):
        raise NotIdempotentError("element is not idempotent modulo the ideal")
    index = _check_nilpotent_ideal(qp)
    bound = (index - 1).bit_length()
    out, steps = _refine_idempotent_element(a, p, bound)
    assert qp.project(out) == q
    return out, steps


def lift_idempotent_matrix(q: IdempotentMatrix, qp: QuotientPresentation) -> IdempotentMatrix:
    """Entrywise lift of an idempotent matrix over the quotient, refined until
    idempotent over the ambient algebra."""
    if q.algebra != qp.quotient:
        raise AlgebraMismatchError("matrix is not defined over the quotient algebra")
    index = _check_nilpotent_ideal(qp)
    bound = (index - 1).bit_length()
    a = qp.algebra
    current: AMatEntries = tuple(
        tuple(qp.lift(entry) for entry in row) for row in q.entries
    )
    steps = 0
    while amat_mul(a, current, current) != current:
        if steps >= bound:
            raise AssertionError("matrix refinement exceeded its guaranteed bound")
        sq = amat_mul(a, current, current)
        cube = amat_mul(a, sq, current)
        current = amat_combine(3, sq, -2, cube)
        steps += 1
    for u in range(q.size):
        for v in range(q.size):
            assert qp.project(current[u][v]) == q.entries[u][v]
    return IdempotentMatrix(a, current)


def _factor_rank(
    s: FDAlgebra,
    factor_space: Subspace,
    projected: AMatEntries,
    idempotent: Vec,
) -> Fraction:
    """dim of the image of the presentation acting on factor^size, divided by
    the factor dimension."""
    size = len(projected)
    m = factor_space.dim
    if m == 0:
        raise ValueError("empty factor")
    blocks: list[list[Mat]] = []
    for u in range(size):
        row = []
        for v in range(size):
            entry = s.multiply(idempotent, projected[u][v])
            cols = []
            for b in factor_space.vectors():
                prod = s.multiply(entry, b)
                assert factor_space.contains(prod)
                cols.append(factor_space.coordinates(prod))
            row.append(Mat(cols).transpose())
        blocks.append(row)
    big_rows = []
    for u in range(size):
        for r_idx in range(m):
            big_rows.append(
                tuple(
                    blocks[u][v].data[r_idx][c] for v in range(size) for c in range(m)
                )
            )
    image_dim = rank(Mat(big_rows))
    return Fraction(image_dim, m)


def projective_module(presentation: IdempotentMatrix) -> ProjectiveModuleDescriptor:
    """Rank data of the projective module presented by an idempotent matrix."""
    a = presentation.algebra
    report = jacobson_radical(a)
    w = wedderburn_decomposition(a)
    s = w.semisimple_quotient
    projected: AMatEntries = tuple(
        tuple(report.quotient.project(entry) for entry in row)
        for row in presentation.entries
    )
    ranks = []
    for factor in w.factors:
        factor_space = Subspace(
            s.dim, [s.multiply(factor.central_idempotent, s.basis_element(i)) for i in range(s.dim)]
        )
        ranks.append(
            _factor_rank(s, factor_space, projected, factor.central_idempotent)
        )
    rank_vec = tuple(ranks)
    uniform = rank_vec[0] if all(r == rank_vec[0] for r in rank_vec) else None
    return ProjectiveModuleDescriptor(
        algebra=a,
        presentation=presentation,
        rank_vector=rank_vec,
        uniform_rank=uniform,
    )


def rank_vector(presentation: IdempotentMatrix) -> tuple[Fraction, ...]:
    """Per-factor ranks of the module presented by an idempotent matrix,
    ordered like the factors of the Wedderburn report."""
    return projective_module(presentation).rank_vector


def modules_isomorphic(m1: ProjectiveModuleDescriptor, m2: ProjectiveModuleDescriptor) -> bool:
    """Projective modules over the same algebra are isomorphic exactly when
    their rank vectors agree."""
    if m1.algebra != m2.algebra:
        raise AlgebraMismatchError("modules live over different algebras")
    return m1.rank_vector == m2.rank_vector


def rank_realizable(w: WedderburnReport, r: Fraction) -> bool:
    """Whether rank r is realized by a module over the algebra: n_i * r must
    be an integer for every factor's matrix size n_i. Raises UnknownIndexError
    when some factor's matrix size is uncertified."""
    r = Fraction(r)
    for i, factor in enumerate(w.factors):
        if factor.matrix_size is None:
            raise UnknownIndexError(
                f"factor {i} has an uncertified matrix size; assert an index first"
            )
        if (factor.matrix_size * r).denominator != 1:
            return False
    return True


def peirce_corner(a: FDAlgebra, p: Sequence) -> FDAlgebra:
    """Corner algebra p*a*p with unit p. p must be idempotent."""
    p = a.element(p)
    if not a.is_idempotent(p):
        raise NotIdempotentError("corner element is not idempotent")
    return subalgebra_on(a, _corner_subspace(a, p), p)
