"""Certificate pipeline bounding the Gorenstein index by the denominator
of the minimal log discrepancy.

For a klt pair whose coefficients are all below 1 the discrepancy functional
is positive on the cone away from the origin, so the cross-section at value
1/n is a bounded polytope living in the corank-one kernel lattice.  Dilating
that cross-section to the first interior lattice point, shrinking around it
until it is the only (1/q)-lattice point inside, and coning over a centrally
symmetric core yields a symmetric body whose only interior lattice point is
its center.  Minkowski's first theorem caps the volume of that body, and
unwinding the volume bookkeeping gives the exact bound
``n ≤ d!·q^d / γ^{d-1}`` with γ the inscription factor of the shrunk body.
Every step is verified by exact rational arithmetic; the verdicts are
collected in a :class:`ProofTrace`.

Pairs with a coefficient equal to 1 are rejected (:class:`NotKlt`) even when
their minimal log discrepancy is positive: the cross-section is unbounded in
the direction of a value-zero ray, so the construction does not apply.  In
dimension 1 the kernel has rank 0 (:class:`DimensionTooSmall`); the index
bound there is plain arithmetic, see
:func:`~toricmld.pairs.bound_check`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, lcm
from typing import Sequence

from .errors import (
    CheckFailed,
    DimensionTooSmall,
    InvalidParameters,
    NoInteriorPoint,
    NotKlt,
    NotLatticePolytope,
    PointNotInterior,
)
from .geometry import (
    RatPolytope,
    any_lattice_point,
    cone_over,
    convex_hull,
    difference_body,
    enumerate_points,
    max_gamma,
    normalized_volume,
    scale_about,
    translate,
)
from .lattice import (
    IntVector,
    RatVector,
    SublatticeBasis,
    as_int_vector,
    base_point,
    clear_denominators,
    content,
    det,
    dot,
    kernel_sublattice,
    matrix_rank,
    rat_vector,
    vec_add,
    vec_scale,
    vec_sub,
)
from .pairs import (
    BoundVerdict,
    LogCanonicalReport,
    ToricLogPair,
    bound_check,
    compute_mld,
    cone_facets,
)

__all__ = [
    "CheckResult",
    "ProofTrace",
    "build_box",
    "verify_bullets",
    "shrink_to_unique",
    "minkowski_certificate",
    "chain_verify",
    "lemma_vo_check",
    "lemma_lv_check",
    "prove",
    "serialize_trace",
]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification step."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ProofTrace:
    """Everything the pipeline computed for one pair, checks included.

    Geometry lives in kernel coordinates: ``section`` is the cross-section
    of the cone at functional value ``1/index`` (one vertex per ray, in ray
    order in ``ray_vertices``), ``dilated`` its ``threshold``-fold dilate,
    ``shrunk`` the contraction of the dilate around ``center``, and
    ``certificate`` the symmetric body in ℤ×kernel whose volume drives the
    bound.
    """

    pair: ToricLogPair
    report: LogCanonicalReport
    base: IntVector
    kernel: SublatticeBasis
    section: RatPolytope
    ray_vertices: tuple[RatVector, ...]
    vertex_levels: tuple[int, ...]
    threshold: int
    dilated: RatPolytope
    center: IntVector
    shrink_factor: Fraction
    shrunk: RatPolytope
    gamma: Fraction
    symmetric_body: RatPolytope
    half_body: RatPolytope
    certificate: RatPolytope
    checks: tuple[CheckResult, ...]
    bound: BoundVerdict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks) and self.bound.passed


def build_box(
    pair: ToricLogPair, psi: Sequence, n: int, base: Sequence[int]
) -> tuple[RatPolytope, tuple[RatVector, ...]]:
    """Cross-section of the cone at functional value 1/n, in the coordinates
    of the kernel lattice of ``psi``.

    Requires every coefficient below 1 (so the functional is positive on
    every ray and the section is bounded) and dimension at least 2.  The
    vertices are the rays scaled to value 1/n and re-based at ``base``, an
    integer point of value 1/n; they are returned in ray order alongside the
    polytope.  Two consistency checks are performed: the exact identity
    ``ray = n(1−b)·(vertex + base)`` per ray, and agreement of the vertex
    hull with the direct halfspace slice of the cone.
    """
    d = pair.dim
    if d < 2:
        raise DimensionTooSmall("the certificate construction needs dimension >= 2")
    if any(c.value == 1 for c in pair.coefficients):
        raise NotKlt("a coefficient equal to 1 makes the cross-section unbounded")
    psi = rat_vector(psi)
    if not isinstance(n, int) or n < 1 or Fraction(dot(psi, base)) != Fraction(1, n):
        raise InvalidParameters("base point must have functional value 1/index")
    kernel = kernel_sublattice(psi, d)
    if kernel.rank != d - 1:
        raise InvalidParameters("functional must vanish on a corank-one lattice")
    vertices = []
    for ray, coeff in zip(pair.rays, pair.coefficients):
        level = Fraction(dot(psi, ray)) * n
        if level <= 0:
            raise NotKlt("functional must be positive on every ray")
        if level.denominator != 1 or level != n * (1 - coeff.value):
            raise InvalidParameters("functional does not match the coefficients")
        point = vec_sub(vec_scale(Fraction(1, int(level)), ray), base)
        coords = kernel.to_coords(point)
        back = vec_scale(level, vec_add(kernel.from_coords(coords), base))
        if rat_vector(back) != rat_vector(ray):
            raise CheckFailed(
                "box-reconstruction", f"ray {ray} is not recovered from its vertex"
            )
        vertices.append(coords)
    box = convex_hull(vertices)
    if set(box.vertices) != set(vertices):
        raise InvalidParameters("rays must be exactly the extreme rays of the cone")
    _cross_check_halfspaces(pair, base, kernel, box)
    return box, tuple(vertices)


def _cross_check_halfspaces(
    pair: ToricLogPair, base: Sequence[int], kernel: SublatticeBasis, box: RatPolytope
) -> None:
    """The section must equal the slice of the cone by the kernel's affine
    span through ``base``: every cone facet transforms to a halfspace in
    kernel coordinates, the box must satisfy all of them, and every facet of
    the box must appear among them."""
    transformed = set()
    for u in cone_facets(pair):
        w = tuple(Fraction(dot(u, row)) for row in kernel.rows)
        c = -Fraction(dot(u, base))
        scaled, _ = clear_denominators(w + (c,))
        normal, offset = scaled[:-1], scaled[-1]
        m = content(normal)
        if m == 0:
            continue
        transformed.add((tuple(x // m for x in normal), Fraction(offset, m)))
        for v in box.vertices:
            if dot(w, v) > c:
                raise CheckFailed(
                    "box-halfspaces", f"vertex {v} violates a cone facet"
                )
    for facet in box.facets:
        if facet not in transformed:
            raise CheckFailed(
                "box-halfspaces", "box facet is not a transformed cone facet"
            )


def verify_bullets(
    box: RatPolytope, levels: Sequence[int], n: int, j: int, q: int
) -> tuple[CheckResult, ...]:
    """The three structural facts tying the cross-section to the invariants.

    * ``dilation-threshold``: ``j`` is the first dilate of the box whose
      interior contains a lattice point (so ``j/n`` really is the minimum).
    * ``vertex-orders``: each vertex first becomes integral at the dilate
      given by its generator's level ``n·⟨psi, ray⟩`` — i.e. the lcm of its
      coordinate denominators equals that level.
    * ``vertex-denominators``: the ``n``-fold dilate has integer vertices
      and the ``j``-fold dilate has vertices in the (1/q)-lattice.
    """
    if len(levels) != len(box.vertices):
        raise InvalidParameters("one level per vertex is required")
    early = None
    for i in range(1, j):
        if any_lattice_point(box, scale=i, strict=True):
            early = i
            break
    attained = any_lattice_point(box, scale=j, strict=True)
    if early is not None:
        threshold = CheckResult(
            "dilation-threshold", False, f"interior lattice point at dilate {early} < {j}"
        )
    else:
        threshold = CheckResult(
            "dilation-threshold",
            attained,
            f"first interior lattice point at dilate {j}"
            if attained
            else f"no interior lattice point at dilate {j}",
        )
    bad_orders = []
    for v, m in zip(box.vertices, levels):
        order = lcm(*(x.denominator for x in v)) if v else 1
        if order != m:
            bad_orders.append(f"vertex {v} has order {order}, level {m}")
    orders = CheckResult(
        "vertex-orders",
        not bad_orders,
        "; ".join(bad_orders) if bad_orders else f"orders match levels {tuple(levels)}",
    )
    integral = all(
        (n * x).denominator == 1 for v in box.vertices for x in v
    ) and all((q * j * x).denominator == 1 for v in box.vertices for x in v)
    denominators = CheckResult(
        "vertex-denominators",
        integral,
        f"{n}·box integral, {j}·box in (1/{q})-lattice"
        if integral
        else "vertex denominators exceed the expected dilates",
    )
    return threshold, orders, denominators


def _gauge_table(S: RatPolytope, z: Sequence[int]):
    slacks = []
    for u, b in S.facets:
        s = b - Fraction(dot(u, z))
        if s <= 0:
            raise PointNotInterior("center is not interior to the body")
        slacks.append((u, s))
    return slacks


def shrink_to_unique(
    S: RatPolytope, q: int, z: Sequence[int] | None = None
) -> tuple[Fraction, RatPolytope, IntVector]:
    """Contract ``S`` toward an interior lattice point ``z`` until ``z`` is
    the only point of the (1/q)-lattice left in the interior.

    ``z`` defaults to the lexicographically least interior lattice point.
    The factor is the gauge distance (in ``S − z`` units) from ``z`` to the
    nearest other (1/q)-point, capped at 1; the search grows a small
    contraction geometrically instead of enumerating all of ``S``.  Returns
    ``(factor, shrunk, z)``.
    """
    if not isinstance(q, int) or q < 1:
        raise InvalidParameters("denominator scale must be a positive integer")
    if z is None:
        pts = enumerate_points(S, strict=True)
        if not pts:
            raise NoInteriorPoint("body has no interior lattice point")
        z = pts[0]
    else:
        z = as_int_vector(z)
        if not S.contains(z, strict=True):
            raise PointNotInterior(f"{z} is not an interior lattice point")
    slacks = _gauge_table(S, z)

    def gauge(w: IntVector) -> Fraction:
        vec = tuple(Fraction(x, q) - zi for x, zi in zip(w, z))
        return max(Fraction(dot(u, vec)) / s for u, s in slacks)

    qz = tuple(q * x for x in z)
    span = 1
    for i in range(S.dim):
        vals = [v[i] for v in S.vertices]
        span = max(span, int(max(vals) - min(vals)) + 1)
    tau = Fraction(1, 1 << (q * span).bit_length())
    while True:
        region = scale_about(S, tau, z)
        others = [p for p in enumerate_points(region, scale=q, strict=True) if p != qz]
        if others:
            t = min(gauge(p) for p in others)
            break
        if tau >= 1:
            t = Fraction(1)
            break
        tau = min(Fraction(1), 2 * tau)
    shrunk = scale_about(S, t, z) if t < 1 else S
    if enumerate_points(shrunk, scale=q, strict=True) != (qz,):
        raise CheckFailed(
            "shrink-uniqueness",
            f"(1/{q})-points other than {z} survive inside the contraction",
        )
    return t, shrunk, tuple(z)


def minkowski_certificate(
    shrunk: RatPolytope, z: Sequence[int], j: int, gamma: Fraction
) -> tuple[RatPolytope, RatPolytope, RatPolytope, tuple[CheckResult, ...]]:
    """Build the symmetric certificate body and verify its properties.

    The core ``K = z + gamma·(shrunk − shrunk)`` is centrally symmetric and
    inscribed in the shrunk body; the certificate is the bipyramid over
    ``{j}×K`` with apexes at the origin and at ``2·(j, z)``.  Returns
    ``(K, half, certificate, checks)`` where ``half`` is the cone over
    ``{j}×K``.  Checks: vertexwise central symmetry, the center is the only
    interior lattice point, volume at most ``2^D`` (Minkowski's theorem,
    ``D`` the certificate dimension), the two half-cones tile the body, and
    the pyramid over the shrunk body itself has empty interior lattice set.
    """
    if not isinstance(j, int) or j < 1:
        raise InvalidParameters("dilation threshold must be a positive integer")
    if not 0 < gamma <= Fraction(1, 2):
        raise InvalidParameters("inscription factor must lie in (0, 1/2]")
    k = shrunk.dim
    z = as_int_vector(z)
    origin = (Fraction(0),) * k
    core = translate(scale_about(difference_body(shrunk), gamma, origin), z)
    half = cone_over(j, core)
    center = (Fraction(j),) + rat_vector(z)
    apex = tuple(2 * c for c in center)
    body = convex_hull(
        [(0,) * (k + 1), apex] + [(Fraction(j),) + tuple(v) for v in core.vertices]
    )
    D = k + 1
    vset = set(body.vertices)
    asym = [
        v for v in vset if tuple(2 * c - x for c, x in zip(center, v)) not in vset
    ]
    checks = [
        CheckResult(
            "certificate-symmetry",
            not asym,
            f"vertex {_fmt_vec(asym[0])} has no mirror"
            if asym
            else f"center {_fmt_vec(center)}",
        )
    ]
    interior = enumerate_points(body, strict=True)
    expected = (tuple(int(c) for c in center),)
    checks.append(
        CheckResult(
            "certificate-unique-interior",
            interior == expected,
            "interior lattice points " + _fmt_vecs(interior),
        )
    )
    vol = normalized_volume(body)
    checks.append(
        CheckResult("certificate-volume", vol <= 2**D, f"volume {vol} vs 2^{D} = {2 ** D}")
    )
    half_vol = normalized_volume(half)
    checks.append(
        CheckResult(
            "certificate-bipyramid",
            vol == 2 * half_vol,
            f"body {vol} vs twice the half-cone {2 * half_vol}",
        )
    )
    empty = not any_lattice_point(cone_over(j, shrunk), strict=True)
    checks.append(
        CheckResult(
            "pyramid-interior-empty",
            empty,
            "no interior lattice points below the threshold"
            if empty
            else "pyramid over the shrunk body contains an interior lattice point",
        )
    )
    return core, half, body, tuple(checks)


def chain_verify(
    n: int,
    j: int,
    q: int,
    gamma: Fraction,
    core: RatPolytope,
    dilated: RatPolytope,
    shrunk: RatPolytope,
) -> tuple[CheckResult, ...]:
    """Exact inequality chain from the certificate volume to the index bound.

    With ``D = core.dim + 1`` the certificate dimension:

    1. ``2·j·vol(core)/D ≤ 2^D``            (Minkowski cap, pyramid volumes)
    2. ``vol(core) = γ^{D-1}·vol(shrunk − shrunk)``
    3. ``vol(dilated − dilated) ≥ 2^{D-1}/((D-1)!·q^{D-1})``
    4. ``j ≤ D!·q^{D-1}/γ^{D-1}``
    5. ``n ≤ j·q ≤ D!·q^D/γ^{D-1}``
    """
    k = core.dim
    D = k + 1
    vol_core = normalized_volume(core)
    cap = Fraction(2 * j, D) * vol_core
    c1 = CheckResult(
        "chain-minkowski", cap <= 2**D, f"2·{j}·{vol_core}/{D} = {cap} vs {2 ** D}"
    )
    diff_shrunk = normalized_volume(difference_body(shrunk))
    c2 = CheckResult(
        "chain-cross-section",
        vol_core == gamma**k * diff_shrunk,
        f"{vol_core} vs {gamma}^{k}·{diff_shrunk}",
    )
    diff_dilated = normalized_volume(difference_body(dilated))
    floor = Fraction(2**k, factorial(k) * q**k)
    c3 = CheckResult(
        "chain-difference", diff_dilated >= floor, f"{diff_dilated} vs floor {floor}"
    )
    jcap = Fraction(factorial(D) * q**k) / gamma**k
    c4 = CheckResult("chain-dilation", j <= jcap, f"{j} vs {jcap}")
    ncap = Fraction(factorial(D) * q**D) / gamma**k
    c5 = CheckResult(
        "chain-index",
        n <= j * q and j * q <= ncap,
        f"{n} <= {j}·{q} = {j * q} vs {ncap}",
    )
    return c1, c2, c3, c4, c5


def lemma_vo_check(
    height: int, base: RatPolytope, sub: SublatticeBasis | None = None
) -> CheckResult:
    """Pyramid volume rule: coning a k-dimensional body placed at integer
    height h over the origin multiplies the normalized volume by h/(k+1).

    With ``sub`` the base volume is measured in a finite-index sublattice L
    and the cone in ℤ×L.
    """
    if not isinstance(height, int) or height < 1:
        raise InvalidParameters("height must be a positive integer")
    k = base.dim
    pyramid = cone_over(height, base)
    if sub is None:
        lhs = normalized_volume(pyramid)
        rhs = Fraction(height, k + 1) * normalized_volume(base)
    else:
        ambient = SublatticeBasis(
            k + 1, ((1,) + (0,) * k,) + tuple((0,) + tuple(r) for r in sub.rows)
        )
        lhs = normalized_volume(pyramid, ambient)
        rhs = Fraction(height, k + 1) * normalized_volume(base, sub)
    return CheckResult("pyramid-volume", lhs == rhs, f"{lhs} vs {rhs}")


def lemma_lv_check(Q: RatPolytope) -> CheckResult:
    """Difference-body floor for lattice polytopes: vol(Q − Q) ≥ 2^k/k!.

    Constructive check: differences of affinely independent vertices span a
    crosspolytope inside Q − Q of volume 2^k·|det|/k! with |det| ≥ 1.
    """
    k = Q.dim
    for v in Q.vertices:
        if any(x.denominator != 1 for x in v):
            raise NotLatticePolytope(f"vertex {v} is not a lattice point")
    origin = Q.vertices[0]
    spanning: list[IntVector] = []
    for w in Q.vertices[1:]:
        candidate = spanning + [as_int_vector(vec_sub(w, origin))]
        if matrix_rank(candidate) == len(candidate):
            spanning = candidate
        if len(spanning) == k:
            break
    if len(spanning) < k:
        raise InvalidParameters("polytope vertices do not span the space")
    index = abs(det(spanning))
    cross = convex_hull([vec_scale(s, v) for v in spanning for s in (1, -1)])
    diff = difference_body(Q)
    inscribed = all(diff.contains(v) for v in cross.vertices)
    vol_cross = normalized_volume(cross)
    vol_diff = normalized_volume(diff)
    floor = Fraction(2**k, factorial(k))
    ok = (
        index >= 1
        and inscribed
        and vol_cross == floor * index
        and vol_diff >= vol_cross
        and vol_diff >= floor
    )
    detail = f"vol {vol_diff} vs floor {floor} via crosspolytope {vol_cross}"
    if ok and len(Q.vertices) == k + 1:
        # for a simplex, additionally account for the crosspolytope as the
        # exact union of its 2^k orthant simplices, each of volume >= 1/k!
        zero = (Fraction(0),) * k
        total = Fraction(0)
        for signs in product((1, -1), repeat=k):
            piece = convex_hull(
                [zero] + [vec_scale(s, v) for s, v in zip(signs, spanning)]
            )
            piece_vol = normalized_volume(piece)
            if piece_vol * factorial(k) < 1:
                ok = False
                detail += f"; orthant piece volume {piece_vol} below 1/{factorial(k)}"
                break
            total += piece_vol
        else:
            if total != vol_cross:
                ok = False
                detail += f"; orthant pieces sum to {total} != {vol_cross}"
            else:
                detail += f"; {2**k} orthant pieces sum exactly"
    return CheckResult("difference-volume-floor", ok, detail)


def prove(
    pair: ToricLogPair,
    strict: bool = True,
    report: LogCanonicalReport | None = None,
) -> ProofTrace:
    """Run the full certificate pipeline for a klt pair of dimension ≥ 2
    whose coefficients are all below 1.

    Builds the cross-section, verifies the structural facts, shrinks to a
    unique (1/q)-point, assembles the symmetric certificate and the
    inequality chain, and evaluates the final index bound.  With ``strict``
    the first failed verification raises :class:`CheckFailed`; otherwise
    failures are collected in the returned trace.  Raises :class:`NotKlt`
    (vanishing discrepancy functional or a coefficient equal to 1) or
    :class:`DimensionTooSmall` for pairs outside the construction's scope.
    A caller that already holds the pair's :class:`LogCanonicalReport` may
    pass it to skip recomputing the invariants.
    """
    if report is None:
        report = compute_mld(pair)
    if not report.klt:
        raise NotKlt("the certificate requires a klt pair")
    if pair.dim < 2:
        raise DimensionTooSmall("the certificate construction needs dimension >= 2")
    if any(c.value == 1 for c in pair.coefficients):
        raise NotKlt("a coefficient equal to 1 makes the cross-section unbounded")
    psi = report.psi
    d = pair.dim
    n = report.index
    base = base_point(psi)
    kernel = kernel_sublattice(psi, d)
    section, ray_vertices = build_box(pair, psi, n, base)
    by_vertex = {
        v: int(n * (1 - c.value))
        for v, c in zip(ray_vertices, pair.coefficients)
    }
    levels = tuple(by_vertex[v] for v in section.vertices)
    threshold = report.mld * n
    if threshold.denominator != 1:
        # the minimum is a value of the functional, hence a multiple of 1/n
        raise CheckFailed("threshold-integrality", f"n·mld = {threshold}")
    j = int(threshold)
    q = report.mld_denominator
    checks = list(verify_bullets(section, levels, n, j, q))
    dilated = scale_about(section, j, (Fraction(0),) * (d - 1))
    t, shrunk, center = shrink_to_unique(dilated, q)
    checks.append(
        CheckResult(
            "shrink-uniqueness", True, f"factor {_fmt_rat(t)} about {_fmt_vec(center)}"
        )
    )
    gamma = max_gamma(shrunk, center)
    checks.append(
        CheckResult(
            "gamma-range", 0 < gamma <= Fraction(1, 2), f"gamma = {gamma}"
        )
    )
    core, half, body, mk_checks = minkowski_certificate(shrunk, center, j, gamma)
    checks.extend(mk_checks)
    checks.extend(chain_verify(n, j, q, gamma, core, dilated, shrunk))
    bound = bound_check(report) if d <= 2 else bound_check(report, gamma)
    trace = ProofTrace(
        pair=pair,
        report=report,
        base=base,
        kernel=kernel,
        section=section,
        ray_vertices=ray_vertices,
        vertex_levels=levels,
        threshold=j,
        dilated=dilated,
        center=center,
        shrink_factor=t,
        shrunk=shrunk,
        gamma=gamma,
        symmetric_body=core,
        half_body=half,
        certificate=body,
        checks=tuple(checks),
        bound=bound,
    )
    if strict:
        for c in trace.checks:
            if not c.passed:
                raise CheckFailed(c.name, c.detail)
        if not bound.passed:
            raise CheckFailed(
                "index-bound", f"index {bound.index} exceeds {bound.limit}"
            )
    return trace


def _fmt_rat(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _fmt_vec(v: Sequence) -> str:
    return "(" + ",".join(_fmt_rat(x) for x in v) + ")"


def _fmt_vecs(vs: Sequence[Sequence]) -> str:
    return ";".join(_fmt_vec(v) for v in vs)


def serialize_trace(trace: ProofTrace) -> str:
    """Deterministic text rendering of a trace (format tag ``trace-v1``)."""
    pair, report = trace.pair, trace.report
    lines = [
        "trace-v1",
        f"dim: {pair.dim}",
        "rays: " + _fmt_vecs(pair.rays),
        "coefficients: " + ";".join(_fmt_rat(c.value) for c in pair.coefficients),
        "psi: " + _fmt_vec(report.psi),
        f"index: {report.index}",
        "mld: " + _fmt_rat(report.mld),
        f"mld-denominator: {report.mld_denominator}",
        "witness: " + _fmt_vec(report.witness),
        "base-point: " + _fmt_vec(trace.base),
        "kernel: " + _fmt_vecs(trace.kernel.rows),
        "section-vertices: " + _fmt_vecs(trace.section.vertices),
        "ray-vertices: " + _fmt_vecs(trace.ray_vertices),
        "vertex-levels: " + ";".join(str(m) for m in trace.vertex_levels),
        f"threshold: {trace.threshold}",
        "center: " + _fmt_vec(trace.center),
        "shrink-factor: " + _fmt_rat(trace.shrink_factor),
        "gamma: " + _fmt_rat(trace.gamma),
        "certificate-vertices: " + _fmt_vecs(trace.certificate.vertices),
        "certificate-volume: " + _fmt_rat(normalized_volume(trace.certificate)),
    ]
    for c in trace.checks:
        status = "pass" if c.passed else "FAIL"
        lines.append(f"check {c.name}: {status}" + (f" ({c.detail})" if c.detail else ""))
    b = trace.bound
    lines.append(
        f"bound: {b.index} <= {_fmt_rat(b.limit)} (constant {_fmt_rat(b.constant)},"
        f" denominator {b.mld_denominator})"
    )
    lines.append("result: " + ("pass" if trace.all_passed else "FAIL"))
    return "\n".join(lines) + "\n"
