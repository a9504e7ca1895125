"""Affine toric log pairs and their exact invariants.

A pair is a full-dimensional strongly convex rational cone, given by its
primitive extreme rays, together with one *standard* boundary coefficient
per ray: a value of the form ``(l−1)/l`` for an integer level ``l ≥ 1``, or
exactly ``1``.  From the rays and coefficients one solves for the rational
functional that takes ``1 − coefficient`` on each ray; its value group gives
the Gorenstein index, and its minimum over the interior lattice points of
the cone is the minimal log discrepancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    DimensionMismatch,
    InvalidParameters,
    LengthMismatch,
    MissingGamma,
    NoInteriorPoint,
    NonPrimitiveRay,
    NonStandardCoefficient,
    NotFullDimensional,
    NotKlt,
    NotLogQGorenstein,
    NotStronglyConvex,
    RedundantRay,
    ValueGroupMismatch,
)
from .geometry import RatPolytope, convex_hull, enumerate_points
from .lattice import (
    IntMatrix,
    IntVector,
    RatVector,
    SublatticeBasis,
    clear_denominators,
    content,
    dot,
    matrix_rank,
    quotient_lattice,
    rat_vector,
    saturate,
    solve,
    value_group,
    vec_add,
    vec_scale,
)


@dataclass(frozen=True)
class BoundaryCoefficient:
    """A standard coefficient: ``(level−1)/level`` for ``level ≥ 1``, or the
    value 1 encoded as ``level=None``."""

    level: int | None

    def __post_init__(self):
        if self.level is not None and (
            not isinstance(self.level, int) or self.level < 1
        ):
            raise NonStandardCoefficient(f"invalid coefficient level {self.level!r}")

    @property
    def value(self) -> Fraction:
        if self.level is None:
            return Fraction(1)
        return Fraction(self.level - 1, self.level)

    @classmethod
    def from_value(cls, b) -> "BoundaryCoefficient":
        b = Fraction(b)
        if b == 1:
            return cls(None)
        gap = 1 - b
        if gap.numerator != 1 or b < 0:
            raise NonStandardCoefficient(f"{b} is not of the form (l-1)/l or 1")
        return cls(gap.denominator)


ONE = BoundaryCoefficient(None)


def standard_coefficients(values: Sequence) -> tuple[BoundaryCoefficient, ...]:
    return tuple(BoundaryCoefficient.from_value(v) for v in values)


@dataclass(frozen=True)
class ToricLogPair:
    """A cone (by primitive extreme rays) with one coefficient per ray.

    Construction does not validate the geometry; call :func:`validate_pair`
    on anything that was not produced by this package.
    """

    dim: int
    rays: IntMatrix
    coefficients: tuple[BoundaryCoefficient, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "rays", tuple(tuple(int(x) for x in e) for e in self.rays)
        )
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def coefficient_values(self) -> RatVector:
        return tuple(c.value for c in self.coefficients)


def validate_pair(pair: ToricLogPair) -> ToricLogPair:
    """Check the pair data and return it unchanged.

    Raises (in this order of precedence): :class:`DimensionMismatch` for
    ray-shape problems, :class:`LengthMismatch` for a ray/coefficient count
    difference, :class:`NonPrimitiveRay`, :class:`NotFullDimensional`,
    :class:`NotStronglyConvex`, and :class:`RedundantRay` for duplicated or
    non-extreme rays.
    """
    d = pair.dim
    if d < 1:
        raise InvalidParameters("ambient dimension must be at least 1")
    for e in pair.rays:
        if len(e) != d:
            raise DimensionMismatch(f"ray {e} does not have length {d}")
    if len(pair.rays) != len(pair.coefficients):
        raise LengthMismatch(
            f"{len(pair.rays)} rays but {len(pair.coefficients)} coefficients"
        )
    for c in pair.coefficients:
        if not isinstance(c, BoundaryCoefficient):
            raise NonStandardCoefficient(f"coefficient {c!r} is not standard")
    for e in pair.rays:
        if content(e) != 1:
            raise NonPrimitiveRay(f"ray {e} is not primitive")
    if matrix_rank(pair.rays) < d:
        raise NotFullDimensional("rays do not span the ambient space")
    if len(set(pair.rays)) != len(pair.rays):
        raise RedundantRay("a ray is listed twice")
    _validate_cone(pair.rays, d)
    return pair


@lru_cache(maxsize=4096)
def _validate_cone(rays: tuple[IntVector, ...], d: int) -> None:
    """Strong convexity and extremality of every listed ray.  Cached:
    sweeps revalidate the same cone once per coefficient choice."""
    hull = convex_hull([(0,) * d, *rays])
    if (0,) * d not in hull.vertices:
        raise NotStronglyConvex("the cone contains a line")
    normals = tuple(u for u, b in hull.facets if b == 0)
    for e in rays:
        tight = [u for u in normals if dot(u, e) == 0]
        if matrix_rank(tight) != d - 1:
            raise RedundantRay(f"ray {e} is not an extreme ray of the cone")


@lru_cache(maxsize=4096)
def _cone_facet_normals(generators: Sequence[Sequence[int]], dim: int) -> tuple[IntVector, ...]:
    """Outer facet normals of the pointed full-dimensional cone spanned by
    the generators: the zero-offset facets of ``conv({0} ∪ generators)``.
    Cached: sweeps revisit the same cone once per coefficient choice."""
    hull = convex_hull([(0,) * dim, *generators])
    return tuple(u for u, b in hull.facets if b == 0)


def cone_facets(pair: ToricLogPair) -> tuple[IntVector, ...]:
    """Facet normals ``u`` of the pair's cone, as ``⟨u, x⟩ ≤ 0`` inequalities."""
    return _cone_facet_normals(pair.rays, pair.dim)


def solve_psi(pair: ToricLogPair) -> RatVector:
    """The rational functional taking ``1 − coefficient`` on every ray.

    Solved on a maximal independent subset of rays and then verified on the
    rest; an inconsistent system raises :class:`NotLogQGorenstein`.
    """
    d = pair.dim
    targets = [1 - c.value for c in pair.coefficients]
    chosen: list[int] = []
    for i, e in enumerate(pair.rays):
        if matrix_rank([pair.rays[j] for j in chosen] + [e]) > len(chosen):
            chosen.append(i)
        if len(chosen) == d:
            break
    if len(chosen) < d:
        raise NotFullDimensional("rays do not span the ambient space")
    psi = solve([pair.rays[i] for i in chosen], [targets[i] for i in chosen])
    for e, t in zip(pair.rays, targets):
        if dot(psi, e) != t:
            raise NotLogQGorenstein(
                "no rational functional matches all prescribed ray values"
            )
    return psi


def compute_index(pair: ToricLogPair) -> int:
    """The Gorenstein index: the positive integer n with value group (1/n)ℤ.

    For the all-ones boundary the functional is zero and the index is 1.
    """
    psi = solve_psi(pair)
    if not any(psi):
        return 1
    vg = value_group(psi)
    if not vg.unit_generator and any(c.value != 1 for c in pair.coefficients):
        # cannot happen for standard coefficients: any value 1/l forces the
        # generator to be a unit fraction; kept as a consistency guard
        raise ValueGroupMismatch("value group generator is not 1/index")
    return vg.index


@dataclass(frozen=True)
class LogCanonicalReport:
    """Invariants of a pair: the discrepancy functional, Gorenstein index,
    minimal log discrepancy with an attaining interior lattice point, and
    the denominator of the minimum."""

    dim: int
    psi: RatVector
    index: int
    mld: Fraction
    mld_denominator: int
    witness: IntVector
    klt: bool
    value_group_unit: bool


def _interior_sum(rays: Sequence[IntVector], dim: int) -> IntVector:
    if not rays:
        return (0,) * dim
    return tuple(sum(col) for col in zip(*rays))


def _level_slab(
    generators: Sequence[IntVector], psi: RatVector, level: Fraction, dim: int
) -> RatPolytope:
    """The bounded region ``cone ∩ {psi ≤ level}`` when ``psi`` is positive
    on every generator: the hull of 0 and the scaled generators."""
    pts: list = [(0,) * dim]
    for g in generators:
        pts.append(vec_scale(level / dot(psi, g), g))
    return convex_hull(pts)


def _minimize_interior(
    slab: RatPolytope, normals: Sequence[IntVector], psi: RatVector
) -> tuple[Fraction, IntVector]:
    """Exact minimum of ``psi`` over the interior lattice points of the cone
    that lie in the slab, with the lexicographically least minimizer.

    Depth-first scan in lexicographic order with an adaptive cap: once a
    value is attained, deeper branches are clipped at that value, so ties
    resolve to the first (lex-least) attaining point.
    """
    d = slab.dim
    cons: list[tuple[IntVector, int]] = []
    for u, b in slab.facets:
        cons.append((tuple(x * b.denominator for x in u), b.numerator))
    for u in normals:
        cons.append((tuple(u), -1))
    by_depth: list[list[tuple[IntVector, int]]] = [[] for _ in range(d)]
    for w, c in cons:
        by_depth[max(i for i, x in enumerate(w) if x != 0)].append((w, c))
    los, his = [], []
    for i in range(d):
        vals = [v[i] for v in slab.vertices]
        los.append(math.ceil(min(vals)))
        his.append(math.floor(max(vals)))
    wpsi, mden = clear_denominators(psi)
    psi_depth = max(i for i, x in enumerate(wpsi) if x != 0)
    best: Fraction | None = None
    best_scaled: int | None = None
    witness: IntVector | None = None
    y = [0] * d

    def walk(k: int):
        nonlocal best, best_scaled, witness
        lo, hi = los[k], his[k]
        for w, c in by_depth[k]:
            rest = c - sum(w[i] * y[i] for i in range(k))
            a = w[k]
            if a > 0:
                hi = min(hi, rest // a)
            else:
                lo = max(lo, -(rest // (-a)))
        if best_scaled is not None and k == psi_depth:
            rest = best_scaled - sum(wpsi[i] * y[i] for i in range(k))
            a = wpsi[k]
            if a > 0:
                hi = min(hi, rest // a)
            elif a < 0:
                lo = max(lo, -(rest // (-a)))
        for t in range(lo, hi + 1):
            y[k] = t
            if k == d - 1:
                scaled = dot(wpsi, y)
                if best_scaled is None or scaled < best_scaled:
                    best_scaled = scaled
                    best = Fraction(scaled, mden)
                    witness = tuple(y)
            else:
                walk(k + 1)

    walk(0)
    if witness is None:
        raise NoInteriorPoint("no interior lattice point found in the level slab")
    return best, witness


def compute_mld(pair: ToricLogPair) -> LogCanonicalReport:
    """Minimal log discrepancy data of the pair.

    For the all-ones boundary the minimum is 0 (attained in the limit along
    the cone's interior; the reported witness is the sum of the rays) and
    the pair is not klt.  Otherwise the rays where the functional vanishes
    span a face; minimizing happens in the torsion-free quotient by that
    face's span, where the functional is positive on the cone, and the
    minimizer is lifted back to an interior point of the original cone.
    """
    psi = solve_psi(pair)
    d = pair.dim
    if not any(psi):
        return LogCanonicalReport(
            d, psi, 1, Fraction(0), 1, _interior_sum(pair.rays, d), False, False
        )
    vg = value_group(psi)
    zero_rays = [e for e in pair.rays if dot(psi, e) == 0]
    pos_rays = [e for e in pair.rays if dot(psi, e) != 0]
    qmap = quotient_lattice(d, SublatticeBasis(d, saturate(zero_rays, d)))
    proj = tuple(qmap.apply(e) for e in pos_rays)
    psi_bar = tuple(Fraction(dot(psi, row)) for row in qmap.lift_rows)
    level = Fraction(dot(psi_bar, _interior_sum(proj, qmap.target_dim)))
    slab = _level_slab(proj, psi_bar, level, qmap.target_dim)
    mld, w_bar = _minimize_interior(
        slab, _cone_facet_normals(proj, qmap.target_dim), psi_bar
    )
    base = qmap.lift(w_bar)
    shift = _interior_sum(zero_rays, d)
    normals = cone_facets(pair)
    m = 0
    while True:
        witness = vec_add(base, vec_scale(m, shift))
        if all(dot(u, witness) < 0 for u in normals):
            break
        m = 1 if m == 0 else 2 * m
        if m > 1 << 62:  # pragma: no cover - the lift always stabilizes
            raise NoInteriorPoint("witness lift failed to enter the cone interior")
    return LogCanonicalReport(
        d, psi, vg.index, mld, mld.denominator, witness, True, vg.unit_generator
    )


def mld_oracle(pair: ToricLogPair) -> tuple[Fraction, IntVector]:
    """Independent recomputation of the minimal log discrepancy.

    Any interior lattice point can be reduced, ray by ray, to one whose
    barycentric weight on each zero-value ray lies in (0, 1] and whose
    weight on each positive-value ray is at most level/value, without
    changing the functional's value.  The reduced points live in the
    Minkowski sum of the segments ``[0, (level/value)·ray]`` and
    ``[0, ray]``, so enumerating that zonotope finds the true minimum.
    """
    psi = solve_psi(pair)
    if not any(psi):
        raise NotKlt("the minimum is 0; the oracle needs a positive functional")
    if len(pair.rays) > 14:
        raise InvalidParameters("oracle zonotope would have too many segments")
    level = Fraction(dot(psi, _interior_sum(pair.rays, pair.dim)))
    ends = []
    for e in pair.rays:
        v = dot(psi, e)
        ends.append(vec_scale(level / v, e) if v > 0 else rat_vector(e))
    corners = [(Fraction(0),) * pair.dim]
    for end in ends:
        corners += [vec_add(c, end) for c in corners]
    zono = convex_hull(corners)
    normals = cone_facets(pair)
    best = None
    witness = None
    for p in enumerate_points(zono):
        if all(dot(u, p) < 0 for u in normals):
            val = Fraction(dot(psi, p))
            if best is None or val < best:
                best, witness = val, p
    if witness is None:
        raise NoInteriorPoint("no interior lattice point in the search region")
    return best, witness


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of testing the index bound ``n ≤ c · q^d``."""

    index: int
    mld_denominator: int
    dim: int
    constant: Fraction
    limit: Fraction
    ratio: Fraction
    passed: bool


def bound_check(report: LogCanonicalReport, gamma: Fraction | None = None) -> BoundVerdict:
    """Check ``index ≤ c · q^dim`` with the dimension-appropriate constant.

    In dimensions 1 and 2 the constant is the sharp 1 resp. 2.  In higher
    dimensions the per-instance constant ``d!/γ^{d−1}`` needs the certified
    shrink factor γ of the instance (:class:`MissingGamma` otherwise).
    """
    d = report.dim
    if d == 1:
        c = Fraction(1)
    elif d == 2:
        c = Fraction(2)
    else:
        if gamma is None:
            raise MissingGamma(f"dimension {d} needs an explicit gamma")
        if not 0 < gamma <= Fraction(1, 2):
            raise InvalidParameters("gamma must lie in (0, 1/2]")
        c = Fraction(math.factorial(d)) / gamma ** (d - 1)
    qd = Fraction(report.mld_denominator) ** d
    limit = c * qd
    ratio = Fraction(report.index) / qd
    return BoundVerdict(
        report.index, report.mld_denominator, d, c, limit, ratio, report.index <= limit
    )
