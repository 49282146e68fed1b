"""Finite quotients E/b^N E, isomorphism testing, and the lifting machinery
behind the finite-determination property.

A finite quotient carries the pair of matrices (A, B) of a and b on the
basis e_i * b^j.  A quotient isomorphism is an invertible matrix commuting
with both actions; because commuting with B forces the block-Toeplitz
shape, the search reduces to the same order-by-order intertwiner solver
used for whole modules, so quotient and module isomorphism testing share
one engine.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    BadParameter,
    HypothesisViolated,
    NoLift,
    NonUniqueLift,
    NotFound,
    NotRegular,
    PrecisionExhausted,
    UnsupportedSpectrum,
)
from .invariants import (
    is_regular,
    n0_bound,
    regularity_order,
    saturate,
    spectrum,
    width_table,
)
from .module import AbModule
from .morphisms import (
    CONST,
    IntertwinerSystem,
    find_invertible,
    verify_intertwiner,
)
from .scalars import ONE, ZERO, Scalar
from .series import Series

__all__ = [
    "FiniteAbQuotient",
    "Intertwiner",
    "identity_truncation_iso",
    "lift_truncation_iso",
    "module_iso",
    "quotient_iso",
    "recover_Eb_from_truncation",
    "truncate",
    "verify_fd",
]


@dataclass(frozen=True)
class FiniteAbQuotient:
    """The actions of a and b on E/b^N E, basis e_i b^j (index i*N + j)."""

    dim: int
    A: tuple
    B: tuple
    rank: int
    level: int


@dataclass(frozen=True)
class Intertwiner:
    """A verified intertwining map.

    kind "quotient": matrix is a dim x dim Scalar matrix at truncation
    level ``order``; kind "module": matrix is a rank x rank Series matrix
    at precision ``order``.
    """

    kind: str
    matrix: tuple
    order: int


def _freeze(mat) -> tuple:
    return tuple(tuple(row) for row in mat)


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------


def truncate(module: AbModule, N: int) -> FiniteAbQuotient:
    """The finite quotient E/b^N E with its a and b matrices."""
    if N < 1:
        raise BadParameter("truncation level must be at least 1")
    if N > module.precision:
        raise PrecisionExhausted(
            "truncation level exceeds the module's working precision"
        )
    p = module.rank
    dim = p * N
    a = [[ZERO] * dim for _ in range(dim)]
    b = [[ZERO] * dim for _ in range(dim)]
    for i in range(p):
        for j in range(N):
            c = i * N + j
            if j + 1 < N:
                b[i * N + j + 1][c] = ONE
                a[i * N + j + 1][c] = a[i * N + j + 1][c] + Scalar(j)
            for l in range(p):
                entry = module.matrix[l][i]
                for t in range(N - j):
                    v = entry.coefficient(t)
                    if not v.is_zero():
                        r = l * N + t + j
                        a[r][c] = a[r][c] + v
    return FiniteAbQuotient(dim, _freeze(a), _freeze(b), p, N)


# ---------------------------------------------------------------------------
# standard-basis recovery for arbitrary (A, B) pairs
# ---------------------------------------------------------------------------


def _extend_basis(rows, vec) -> bool:
    """Reduce vec against an rref-maintained row list; insert if independent."""
    v = list(vec)
    for row, piv in rows:
        if not v[piv].is_zero():
            f = v[piv]
            v = [x - f * y for x, y in zip(v, row)]
    piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
    if piv is None:
        return False
    inv = v[piv].inverse()
    v = [x * inv for x in v]
    rows.append((v, piv))
    return True


def _standard_form(q: FiniteAbQuotient):
    """Recover (rank, level, structure coefficients, change of basis).

    Finds a basis on which B is the standard shift and A the standard
    truncated action; raises BadParameter when the pair is not the
    truncation of a free module on any basis.
    """
    dim = q.dim
    b = [list(row) for row in q.B]
    a = [list(row) for row in q.A]
    power = linalg.identity(dim)
    level = None
    for t in range(1, dim + 1):
        power = linalg.mat_mul(b, power)
        if all(x.is_zero() for row in power for x in row):
            level = t
            break
    if level is None:
        raise BadParameter("b-action is not nilpotent")
    if dim % level:
        raise BadParameter("dimension is not divisible by the b-nilpotency order")
    p = dim // level
    image_rows = []
    for c in range(dim):
        _extend_basis(image_rows, [b[r][c] for r in range(dim)])
    combined = list(image_rows)
    reps = []
    for r in range(dim):
        unit = [ONE if i == r else ZERO for i in range(dim)]
        if _extend_basis(combined, unit):
            reps.append(r)
        if len(reps) == p:
            break
    if len(reps) < p:
        raise BadParameter("could not complete a basis modulo the image of b")
    cols = []
    for r in reps:
        vec = [ONE if i == r else ZERO for i in range(dim)]
        for _ in range(level):
            cols.append(vec)
            vec = linalg.mat_vec(b, vec)
    change = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    inv = linalg.inverse(change)
    if inv is None:
        raise BadParameter("b-orbits of the chosen representatives are dependent")
    abar = linalg.mat_mul(inv, linalg.mat_mul(a, change))
    coeffs = [
        [[abar[l * level + t][i * level] for i in range(p)] for l in range(p)]
        for t in range(level)
    ]
    series = [
        [
            Series([coeffs[t][l][i] for t in range(level)], level)
            for i in range(p)
        ]
        for l in range(p)
    ]
    rebuilt = truncate(AbModule(series), level)
    if _freeze(abar) != rebuilt.A:
        raise BadParameter(
            "the (A, B) pair is not the truncation of a module presentation"
        )
    return p, level, series, change, inv


def _toeplitz_from_blocks(blocks, p: int, n: int):
    t = [[ZERO] * (p * n) for _ in range(p * n)]
    for m, block in enumerate(blocks):
        for l in range(p):
            for i in range(p):
                v = block[l][i]
                if v.is_zero():
                    continue
                for j in range(n - m):
                    t[l * n + j + m][i * n + j] = v
    return t


def _blocks_from_toeplitz(mat, p: int, n: int):
    blocks = [
        [[mat[l * n + m][i * n] for i in range(p)] for l in range(p)]
        for m in range(n)
    ]
    for l in range(p):
        for i in range(p):
            for jl in range(n):
                for ji in range(n):
                    expected = (
                        blocks[jl - ji][l][i] if jl >= ji else ZERO
                    )
                    if mat[l * n + jl][i * n + ji] != expected:
                        return None
    return blocks


def _commutes(t, q: FiniteAbQuotient, qp: FiniteAbQuotient) -> bool:
    a = [list(row) for row in q.A]
    b = [list(row) for row in q.B]
    ap = [list(row) for row in qp.A]
    bp = [list(row) for row in qp.B]
    return linalg.mat_mul(t, a) == linalg.mat_mul(ap, t) and linalg.mat_mul(
        t, b
    ) == linalg.mat_mul(bp, t)


# ---------------------------------------------------------------------------
# isomorphism of quotients
# ---------------------------------------------------------------------------


def quotient_iso(q: FiniteAbQuotient, qp: FiniteAbQuotient, seed: int = 0):
    """An invertible intertwiner between two finite quotients, or None.

    The solution space of {T : TA = A'T, TB = B'T} is parameterized through
    the block-Toeplitz reduction and searched for an invertible element.
    """
    if q.dim != qp.dim:
        raise BadParameter("quotient dimensions differ")
    p, n, series, change, _ = _standard_form(q)
    pp, np_, series_p, change_p, _ = _standard_form(qp)
    if p != pp or n != np_:
        return None
    system = IntertwinerSystem(series, series_p, n).solve()
    if system is None:
        return None
    values = find_invertible(system, seed)
    if values is None:
        return None
    blocks = [system.block_matrix(k, values) for k in range(n)]
    t_std = _toeplitz_from_blocks(blocks, p, n)
    inv_change = linalg.inverse(change)
    t = linalg.mat_mul(change_p, linalg.mat_mul(t_std, inv_change))
    if not _commutes(t, q, qp) or linalg.det(t).is_zero():
        raise HypothesisViolated("constructed intertwiner failed verification")
    return Intertwiner("quotient", _freeze(t), n)


def identity_truncation_iso(module: AbModule, N: int) -> Intertwiner:
    """The identity map of E/b^N E as a verified Intertwiner."""
    q = truncate(module, N)
    return Intertwiner("quotient", _freeze(linalg.identity(q.dim)), N)


# ---------------------------------------------------------------------------
# isomorphism of modules
# ---------------------------------------------------------------------------


def _saturation_spectra_differ(e: AbModule, ep: AbModule) -> bool:
    try:
        if not is_regular(e) or not is_regular(ep):
            return False
        se = spectrum(saturate(e).saturated)
        sp = spectrum(saturate(ep).saturated)
        return se != sp
    except (PrecisionExhausted, UnsupportedSpectrum, NotRegular):
        return False


def module_iso(e: AbModule, ep: AbModule, W: int = None, seed: int = 0):
    """An isomorphism P with P*M - M'*P - b^2*P' = 0 and P(0) invertible,
    verified at precision W; None when the modules are not isomorphic at
    that precision."""
    if e.rank != ep.rank:
        raise BadParameter("module ranks differ")
    if W is None:
        W = min(e.precision, ep.precision)
    if W < 1:
        raise BadParameter("precision must be at least 1")
    if W > min(e.precision, ep.precision):
        raise PrecisionExhausted("requested precision exceeds the structure data")
    if _saturation_spectra_differ(e, ep):
        return None
    system = IntertwinerSystem(e.matrix, ep.matrix, W).solve()
    if system is None:
        return None
    values = find_invertible(system, seed)
    if values is None:
        return None
    mat = system.series_matrix(values)
    if not verify_intertwiner(e.matrix, ep.matrix, mat, W):
        raise HypothesisViolated("constructed intertwiner failed verification")
    return Intertwiner("module", _freeze(mat), W)


# ---------------------------------------------------------------------------
# lifting truncation isomorphisms
# ---------------------------------------------------------------------------


def _slack(module: AbModule) -> int:
    """Depth of the top band where truncating the intertwining equation
    leaves coefficients genuinely undetermined.

    The cascade driven by the constant term of the structure matrix reaches
    2*or(E)+1 blocks down (ad-nilpotency), and integer spectral gaps add up
    to max(L, 0) resonant levels; one extra order of safety margin."""
    return 2 * regularity_order(module) + max(width_table(module).width, 0) + 2


def _default_lift_precision(module: AbModule, N: int) -> int:
    n0 = n0_bound(module)
    return max(2 * n0, n0 + module.rank + 4, N + _slack(module) + 1)


def _rigidity_violation(system, N: int, hi: int) -> bool:
    """True when two solutions share all blocks below N yet differ in some
    block of [N, hi) — i.e. the induced map on E/b^N E fails to pin the
    isomorphism down to the certifiable window."""
    params = system.parameters_in_blocks(0, hi)
    if not params:
        return False
    idx = {p: c for c, p in enumerate(params)}
    rows = []
    for k in range(N):
        for row in system.blocks[k]:
            for entry in row:
                vec = [ZERO] * len(params)
                nonzero = False
                for key, c in entry.items():
                    if key != CONST and key in idx:
                        vec[idx[key]] = c
                        nonzero = True
                if nonzero:
                    rows.append(vec)
    if rows:
        directions = linalg.nullspace(rows)
    else:
        directions = [
            [ONE if i == j else ZERO for j in range(len(params))]
            for i in range(len(params))
        ]
    for v in directions:
        for k in range(N, hi):
            for row in system.blocks[k]:
                for entry in row:
                    acc = ZERO
                    for key, c in entry.items():
                        if key != CONST and key in idx:
                            acc = acc + c * v[idx[key]]
                    if not acc.is_zero():
                        return True
    return False


def _free_lift(e, ep, N, W, slack, seed):
    """Existence plus rigidity: find a verified isomorphism and certify
    that the induced map on E/b^N E determines it below the top band."""
    system = IntertwinerSystem(e.matrix, ep.matrix, W).solve()
    values = find_invertible(system, seed)
    if values is None:
        raise NoLift(
            "the modules are not isomorphic: every solution of the "
            "intertwining system has a singular constant term"
        )
    if _rigidity_violation(system, N, W - slack):
        raise NonUniqueLift(
            "distinct isomorphisms induce the same map at this truncation level"
        )
    mat = system.series_matrix(values)
    if not verify_intertwiner(e.matrix, ep.matrix, mat, W):
        raise HypothesisViolated("constructed lift failed verification")
    return Intertwiner("module", _freeze(mat), W)


def lift_truncation_iso(
    e: AbModule,
    ep: AbModule,
    phi: Intertwiner,
    N: int,
    W: int = None,
    seed: int = 0,
) -> Intertwiner:
    """Extend a verified isomorphism of N-truncations to precision W.

    First the intertwining equation is solved with blocks 0..N-1 prescribed
    by phi; when that is consistent the exact congruent lift is returned
    (unique once no free parameters survive below the top band).  Blockwise
    congruence is not always achievable — a perturbation of the structure
    matrix at order exactly N forces a correction of the isomorphism at
    lower orders — so on inconsistency the solver falls back to the content
    of finite determination: a verified isomorphism must exist (else
    NoLift), and the induced map on E/b^N E must pin it down below the top
    band (else NonUniqueLift).
    """
    if e.rank != ep.rank:
        raise BadParameter("module ranks differ")
    if not is_regular(e):
        raise NotRegular("lifting is certified for regular modules")
    p = e.rank
    if phi.kind != "quotient" or phi.order != N or len(phi.matrix) != p * N:
        raise BadParameter("phi is not an intertwiner of the N-truncations")
    blocks = _blocks_from_toeplitz([list(row) for row in phi.matrix], p, N)
    if blocks is None:
        raise BadParameter("phi does not commute with the b-action")
    qe = truncate(e, N)
    qp = truncate(ep, N)
    t = [list(row) for row in phi.matrix]
    if not _commutes(t, qe, qp) or linalg.det(t).is_zero():
        raise BadParameter("phi is not a verified truncation isomorphism")
    slack = _slack(e)
    if W is None:
        W = _default_lift_precision(e, N)
    if W <= N:
        raise BadParameter("lifting precision must exceed the truncation level")
    if W - slack <= N:
        raise PrecisionExhausted("lifting window too small to certify uniqueness")
    if W > min(e.precision, ep.precision):
        raise PrecisionExhausted("requested precision exceeds the structure data")
    fixed = {m: blocks[m] for m in range(N)}
    strict = IntertwinerSystem(e.matrix, ep.matrix, W, fixed=fixed).solve()
    if strict is not None:
        if strict.parameters_in_blocks(0, W - slack):
            raise NonUniqueLift(
                "the congruence-constrained solution space is not a single point"
            )
        mat = strict.series_matrix({})
        if not verify_intertwiner(e.matrix, ep.matrix, mat, W):
            raise HypothesisViolated("constructed lift failed verification")
        return Intertwiner("module", _freeze(mat), W)
    return _free_lift(e, ep, N, W, slack, seed)


# ---------------------------------------------------------------------------
# finite-determination verifier
# ---------------------------------------------------------------------------


def _random_scalar(rng) -> Scalar:
    re = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
    if rng.random() < 0.2:
        im = Fraction(rng.randint(-2, 2), 1)
        return Scalar(re, im)
    return Scalar(re)


def _perturb(module: AbModule, rng, lo: int) -> AbModule:
    """A random perturbation of the structure matrix at orders >= lo."""
    p = module.rank
    w = module.precision
    hi = min(lo + 3, w - 1)
    rows = []
    touched = False
    for i in range(p):
        row = []
        for j in range(p):
            entry = module.matrix[i][j]
            for _ in range(rng.randint(0, 2)):
                c = _random_scalar(rng)
                if c.is_zero():
                    continue
                entry = entry + Series.monomial(c, rng.randint(lo, hi), w)
                touched = True
            row.append(entry)
        rows.append(row)
    if not touched:
        rows[0][0] = rows[0][0] + Series.monomial(ONE, lo, w)
    return AbModule(rows)


def verify_fd(module: AbModule, trials: int, seed: int, lo: int = None) -> dict:
    """Perturb the structure matrix at orders >= lo (default: n0_bound) and
    check finite determination on each pair: the perturbed module has the
    same truncation below lo, so determination at that level predicts an
    isomorphism pinned down by its induced truncation map.  Every failure
    is reported with its witness perturbation, so a bound that is too low
    is surfaced rather than hidden."""
    if not is_regular(module):
        raise NotRegular("finite determination applies to regular modules")
    n0 = n0_bound(module)
    if lo is None:
        lo = n0
    slack = _slack(module)
    W = _default_lift_precision(module, lo)
    if W > module.precision:
        raise PrecisionExhausted(
            "module precision leaves no room for a certification window"
        )
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        perturbed = _perturb(module, rng, lo)
        try:
            _free_lift(module, perturbed, lo, W, slack, seed + trial)
        except (NoLift, NonUniqueLift) as err:
            witness = [
                [str(perturbed.matrix[i][j] - module.matrix[i][j])
                 for j in range(module.rank)]
                for i in range(module.rank)
            ]
            failures.append(
                {"trial": trial, "error": type(err).__name__, "witness": witness}
            )
    return {
        "rank": module.rank,
        "n0": n0,
        "lo": lo,
        "trials": trials,
        "successes": trials - len(failures),
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# recovering the biggest simple-pole submodule from a truncation
# ---------------------------------------------------------------------------


def _annihilator(vectors, dim: int):
    if not vectors:
        return [
            [ONE if i == j else ZERO for j in range(dim)] for i in range(dim)
        ]
    return linalg.nullspace([list(v) for v in vectors])


def recover_Eb_from_truncation(q: FiniteAbQuotient, k: int):
    """The largest subspace F of the quotient with B F <= F and A F <= B F,
    required to contain the image of B^k; for a truncation at level
    N >= k+1 with k >= delta this is the image of the biggest simple-pole
    submodule.  Returns a canonical basis (list of vectors)."""
    if k < 0 or k + 1 > q.level:
        raise NotFound("truncation level too small for the requested power")
    dim = q.dim
    a = [list(row) for row in q.A]
    b = [list(row) for row in q.B]
    at = linalg.transpose(a)
    bt = linalg.transpose(b)
    basis = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
    while True:
        ann_f = _annihilator(basis, dim)
        bf = [linalg.mat_vec(b, v) for v in basis]
        ann_bf = _annihilator([v for v in bf if any(x for x in v)], dim)
        rows = []
        rows.extend(ann_f)
        rows.extend(linalg.mat_vec(bt, r) for r in ann_f)
        rows.extend(linalg.mat_vec(at, r) for r in ann_bf)
        if not rows:
            break
        new_basis = linalg.nullspace(rows)
        if len(new_basis) == len(basis):
            basis = new_basis
            break
        basis = new_basis
        if not basis:
            break
    power = linalg.identity(dim)
    for _ in range(k):
        power = linalg.mat_mul(b, power)
    check = list(basis)
    rref_rows = []
    for v in check:
        _extend_basis(rref_rows, v)
    for c in range(dim):
        col = [power[r][c] for r in range(dim)]
        if any(not x.is_zero() for x in col):
            if _extend_basis(rref_rows, col):
                raise NotFound(
                    "image of b^k is not contained in the stable subspace"
                )
    if not basis:
        return []
    canonical, _ = linalg.rref([list(v) for v in basis])
    return [row for row in canonical if any(not x.is_zero() for x in row)]
