"""Dense exact linear algebra over Q(i).

Matrices are lists of rows of ``Scalar``; vectors are lists of ``Scalar``.
Everything here is plain Gaussian elimination with exact arithmetic — ranks,
solves, nullspaces, determinants, characteristic polynomials — plus the one
place the library leans on sympy: factoring a characteristic polynomial over
Q(i) to extract exact eigenvalues.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import UnsupportedSpectrum
from .scalars import Scalar, ZERO, ONE

Matrix = list
Vector = list


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_copy(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rb = len(b)
    cb = len(b[0]) if rb else 0
    out = zeros(len(a), cb)
    for i, arow in enumerate(a):
        orow = out[i]
        for k, aik in enumerate(arow):
            if not aik:
                continue
            brow = b[k]
            for j in range(cb):
                if brow[j]:
                    orow[j] = orow[j] + aik * brow[j]
    return out


def mat_vec(a: Matrix, x: Vector) -> Vector:
    out = [ZERO] * len(a)
    for i, arow in enumerate(a):
        acc = ZERO
        for k, aik in enumerate(arow):
            if aik and x[k]:
                acc = acc + aik * x[k]
        out[i] = acc
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s: Scalar) -> Matrix:
    return [[x * s for x in row] for row in a]


def trace(a: Matrix) -> Scalar:
    t = ZERO
    for i in range(len(a)):
        t = t + a[i][i]
    return t


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix) -> list[Vector]:
    """Deterministic basis of ker(a): one vector per free column, with a 1 in
    the free coordinate and the pivot coordinates solved from rref."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [ZERO] * cols
        v[free] = ONE
        for k, pc in enumerate(pivots):
            v[pc] = -r[k][free]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of a x = b (free coordinates set to 0), or None."""
    rows = len(a)
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    cols = len(a[0]) if rows else 0
    r, pivots = rref(aug)
    if cols in pivots:
        return None  # inconsistent: pivot in the augmented column
    x = [ZERO] * cols
    for k, pc in enumerate(pivots):
        x[pc] = r[k][cols]
    return x


def det(a: Matrix) -> Scalar:
    n = len(a)
    m = mat_copy(a)
    d = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return ZERO
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d = d * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def is_invertible(a: Matrix) -> bool:
    return len(a) == (len(a[0]) if a else 0) and bool(det(a))


def inverse(a: Matrix) -> Optional[Matrix]:
    """Exact inverse of a square matrix, or None when singular."""
    n = len(a)
    aug = [a[i][:] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def charpoly(a: Matrix) -> list[Scalar]:
    """Coefficients of det(t*I - a), leading coefficient first.

    Faddeev-LeVerrier: exact, division only by integers, O(n^4).
    """
    n = len(a)
    coeffs = [ONE]
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        c = -(trace(am) / k)
        coeffs.append(c)
        if k < n:
            m = mat_add(am, mat_scale(identity(n), c))
    return coeffs


# ---------------------------------------------------------------------------
# eigenvalues over Q(i), via sympy factorization
# ---------------------------------------------------------------------------


def _scalar_to_sympy(s: Scalar):
    import sympy

    return sympy.Rational(s.re.numerator, s.re.denominator) + sympy.Rational(
        s.im.numerator, s.im.denominator
    ) * sympy.I


def _sympy_to_scalar(x) -> Scalar:
    import sympy

    xr, xi = sympy.re(x), sympy.im(x)
    if not (xr.is_rational and xi.is_rational):
        raise UnsupportedSpectrum(f"non-Gaussian-rational value {x}")
    return Scalar(
        Fraction(int(xr.p), int(xr.q)), Fraction(int(xi.p), int(xi.q))
    )


def poly_roots_qi(coeffs: Sequence[Scalar]) -> list[tuple[Scalar, int]]:
    """All roots in Q(i) of the polynomial with the given coefficients
    (leading first), with multiplicities, sorted for determinism.

    Raises UnsupportedSpectrum when the polynomial does not split over Q(i):
    results beyond that field cannot be represented exactly by this library.
    """
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([_scalar_to_sympy(c) for c in coeffs], t, domain="QQ_I")
    degree = poly.degree()
    _, factors = poly.factor_list()
    roots: list[tuple[Scalar, int]] = []
    covered = 0
    for fac, mult in factors:
        d = fac.degree()
        if d == 0:
            continue
        if d > 1:
            raise UnsupportedSpectrum(
                f"irreducible factor of degree {d} over Q(i): {fac.as_expr()}"
            )
        lead, const = fac.all_coeffs()
        roots.append((_sympy_to_scalar(-const / lead), mult))
        covered += mult
    if covered != degree:
        raise UnsupportedSpectrum("factorization did not account for all roots")
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots


def eigenvalues(a: Matrix) -> list[tuple[Scalar, int]]:
    """Exact eigenvalues with algebraic multiplicities, sorted."""
    if not a:
        return []
    return poly_roots_qi(charpoly(a))
