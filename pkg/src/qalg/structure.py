"""Structure theory: radical, semisimple quotient, simple factor data.

The radical is the kernel of the trace form (characteristic zero makes the
trace criterion exact); the semisimple quotient is then split into simple
factors by refining central idempotents until every block center is certified
to be a field. All searches walk deterministic candidate lists, so repeated
runs produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import isqrt
from typing import Iterator, Sequence

from .algebra import (
    FDAlgebra,
    QuotientPresentation,
    Subspace,
    Vec,
    quotient_by_ideal,
    subalgebra_on,
)
from .errors import NotNilpotentError, NotSemisimpleError, NotSimpleError
from .linalg import Mat, kernel_basis, minimal_polynomial
from .poly import Poly
from .polyfactor import factor_rational


@dataclass(frozen=True)
class RadicalReport:
    """Radical subspace, its nilpotency index (1 means the radical is zero),
    and the presentation of the semisimple quotient."""

    radical: Subspace
    nilpotency_index: int
    quotient: QuotientPresentation


@dataclass(frozen=True)
class SimpleFactorData:
    """One simple factor of the semisimple quotient.

    central_idempotent lives in the semisimple quotient's coordinates.
    degree_over_center is the integer with degree^2 * center_dim = factor_dim.
    matrix_size is the certified size n with factor = n x n matrices over a
    division algebra, or None when the search could not certify one.
    """

    central_idempotent: Vec
    factor_dim: int
    center_dim: int
    degree_over_center: int
    matrix_size: int | None


@dataclass(frozen=True)
class WedderburnReport:
    semisimple_quotient: FDAlgebra
    factors: tuple[SimpleFactorData, ...]


def _subspace_product(a: FDAlgebra, u: Subspace, v: Subspace) -> Subspace:
    products = [a.multiply(x, y) for x in u.vectors() for y in v.vectors()]
    return Subspace(a.dim, products)


def _ideal_nilpotency_index(a: FDAlgebra, n: Subspace) -> int:
    """Least t with n^t = 0, by direct powering. Raises NotNilpotentError when
    the powers stabilize at a nonzero subspace."""
    current = n
    t = 1
    while current.dim > 0:
        nxt = _subspace_product(a, current, n)
        if nxt.dim >= current.dim and nxt == current:
            raise NotNilpotentError("subspace powers stabilize at a nonzero subspace")
        if t > a.dim + 1:
            raise NotNilpotentError("subspace powers do not reach zero")
        current = nxt
        t += 1
    return t


@cache
def jacobson_radical(a: FDAlgebra) -> RadicalReport:
    """Radical as the kernel of the trace form B(x, y) = tr(L_{xy})."""
    n = a.dim
    s = a.structure
    basis_traces = [
        sum((s[k][j][j] for j in range(n)), Fraction(0)) for k in range(n)
    ]
    gram = Mat(
        [
            [
                sum((s[i][j][k] * basis_traces[k] for k in range(n)), Fraction(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
    )
    radical = Subspace(n, kernel_basis(gram))
    index = _ideal_nilpotency_index(a, radical)
    quotient = quotient_by_ideal(a, radical)
    return RadicalReport(radical=radical, nilpotency_index=index, quotient=quotient)


def is_semisimple(a: FDAlgebra) -> bool:
    return jacobson_radical(a).radical.dim == 0


def _splitting_candidates(rows: Sequence[Vec]) -> Iterator[Vec]:
    """Deterministic candidate elements: basis vectors, then two-term
    combinations with coefficients 1..3, then three-term combinations."""
    for row in rows:
        yield row
    m = len(rows)
    small = (Fraction(1), Fraction(2), Fraction(3))
    for i in range(m):
        for j in range(i + 1, m):
            for ca in small:
                for cb in small:
                    yield tuple(ca * x + cb * y for x, y in zip(rows[i], rows[j]))
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                for ca in small:
                    for cb in small:
                        for cc in small:
                            yield tuple(
                                ca * x + cb * y + cc * z
                                for x, y, z in zip(rows[i], rows[j], rows[k])
                            )


def _evaluate_poly_at_element(a: FDAlgebra, p: Poly, z: Vec, one: Vec) -> Vec:
    """Evaluate p at the element z, with x^0 meaning the given unit element."""
    out = [Fraction(0)] * a.dim
    power = one
    for i, c in enumerate(p.coeffs):
        if i > 0:
            power = a.multiply(power, z)
        if c != 0:
            for k, x in enumerate(power):
                out[k] += c * x
    return tuple(out)


def _mult_matrix_on_subspace(a: FDAlgebra, z: Vec, sub: Subspace) -> Mat:
    """Matrix of left multiplication by z restricted to an invariant subspace,
    in the subspace's echelon coordinates."""
    cols = []
    for b in sub.vectors():
        prod = a.multiply(z, b)
        assert sub.contains(prod), "subspace is not invariant under the element"
        cols.append(sub.coordinates(prod))
    return Mat(cols).transpose()


def _partial_fraction_idempotents(
    a: FDAlgebra, z: Vec, one: Vec, minpoly: Poly, moduli: list[Poly]
) -> list[Vec]:
    """Orthogonal idempotents summing to `one`, one per pairwise coprime
    modulus of the minimal polynomial, evaluated at z."""
    out = []
    for q in moduli:
        g = minpoly // q
        _, s, _ = (g % q).extended_gcd(q)
        u = (g * (s % q)) % minpoly
        e = _evaluate_poly_at_element(a, u, z, one)
        assert a.multiply(e, e) == e, "partial fraction idempotent failed"
        out.append(e)
    return out


@cache
def central_primitive_idempotents(s: FDAlgebra) -> tuple[Vec, ...]:
    """Central primitive idempotents of a semisimple algebra.

    Blocks are refined by splitting minimal polynomials of candidate central
    elements; a block is final once some candidate's minimal polynomial is
    irreducible of degree equal to the block center's dimension, which
    certifies that the block center is a field.
    """
    if jacobson_radical(s).radical.dim != 0:
        raise NotSemisimpleError("algebra has a nonzero radical")
    center = s.center()
    queue: list[Vec] = [s.unit]
    final: list[Vec] = []
    while queue:
        e = queue.pop(0)
        block_center = Subspace(
            s.dim, [s.multiply(e, z) for z in center.vectors()]
        )
        m = block_center.dim
        if m == 1:
            final.append(e)
            continue
        resolved = False
        for z in _splitting_candidates(block_center.vectors()):
            mult_matrix = _mult_matrix_on_subspace(s, z, block_center)
            minpoly = minimal_polynomial(mult_matrix)
            fac = factor_rational(minpoly)
            assert all(mult == 1 for _, mult in fac.factors), (
                "center of a semisimple algebra must be etale"
            )
            irreducibles = [f for f, _ in fac.factors]
            if len(irreducibles) == 1:
                if irreducibles[0].degree() == m:
                    final.append(e)
                    resolved = True
                    break
                continue
            queue.extend(
                _partial_fraction_idempotents(s, z, e, minpoly, irreducibles)
            )
            resolved = True
            break
        if not resolved:
            raise RuntimeError(
                "candidate list exhausted without certifying or splitting a block"
            )
    return tuple(final)


def _corner_subspace(a: FDAlgebra, p: Vec) -> Subspace:
    vectors = [
        a.multiply(p, a.multiply(a.basis_element(i), p)) for i in range(a.dim)
    ]
    return Subspace(a.dim, vectors)


def _find_nontrivial_idempotent(f: FDAlgebra) -> Vec | None:
    """First nontrivial idempotent found by splitting minimal polynomials of
    deterministic candidates, or None when every candidate's minimal
    polynomial is a power of a single irreducible."""
    rows = [f.basis_element(i) for i in range(f.dim)]
    for z in _splitting_candidates(rows):
        minpoly = minimal_polynomial(f.left_regular_matrix(z))
        fac = factor_rational(minpoly)
        if len(fac.factors) < 2:
            continue
        first_modulus = _poly_power(fac.factors[0][0], fac.factors[0][1])
        e = _partial_fraction_idempotents(f, z, f.unit, minpoly, [first_modulus])[0]
        assert e != f.zero() and e != f.unit
        return e
    return None


def _poly_power(p: Poly, n: int) -> Poly:
    out = Poly([1])
    for _ in range(n):
        out = out * p
    return out


def _matrix_size_search(f: FDAlgebra) -> int | None:
    """Certified matrix size of a simple algebra, or None (unknown).

    A commutative simple algebra is a field, size 1. Otherwise split off an
    idempotent and recurse on both diagonal corners; sizes add because all
    primitive idempotents of a simple algebra are equivalent.
    """
    if f.is_commutative():
        return 1
    e = _find_nontrivial_idempotent(f)
    if e is None:
        return None
    complement = tuple(u - x for u, x in zip(f.unit, e))
    left = subalgebra_on(f, _corner_subspace(f, e), e)
    right = subalgebra_on(f, _corner_subspace(f, complement), complement)
    n_left = _matrix_size_search(left)
    if n_left is None:
        return None
    n_right = _matrix_size_search(right)
    if n_right is None:
        return None
    return n_left + n_right


def try_matrix_size(factor: FDAlgebra) -> int | None:
    """Matrix size n of a simple algebra isomorphic to n x n matrices over a
    division algebra, or None when no certificate was found.

    None is honest ignorance: it never certifies that the factor is a
    division algebra, only that the deterministic search found no splitting
    idempotent.
    """
    if jacobson_radical(factor).radical.dim != 0:
        raise NotSimpleError("algebra is not semisimple")
    if len(central_primitive_idempotents(factor)) != 1:
        raise NotSimpleError("algebra has more than one simple factor")
    return _matrix_size_search(factor)


@cache
def wedderburn_decomposition(a: FDAlgebra) -> WedderburnReport:
    """Simple factor data for the semisimple quotient of a."""
    report = jacobson_radical(a)
    s = report.quotient.quotient
    idempotents = central_primitive_idempotents(s)
    center = s.center()
    factors = []
    for e in idempotents:
        factor_space = Subspace(
            s.dim, [s.multiply(e, s.basis_element(i)) for i in range(s.dim)]
        )
        factor_alg = subalgebra_on(s, factor_space, e)
        factor_dim = factor_space.dim
        center_dim = Subspace(
            s.dim, [s.multiply(e, z) for z in center.vectors()]
        ).dim
        degree = isqrt(factor_dim // center_dim)
        assert degree * degree * center_dim == factor_dim, (
            "factor dimension is not a square multiple of its center dimension"
        )
        size = _matrix_size_search(factor_alg)
        assert size is None or degree % size == 0
        factors.append(
            SimpleFactorData(
                central_idempotent=e,
                factor_dim=factor_dim,
                center_dim=center_dim,
                degree_over_center=degree,
                matrix_size=size,
            )
        )
    total = sum(f.factor_dim for f in factors)
    assert total == s.dim
    return WedderburnReport(semisimple_quotient=s, factors=tuple(factors))
