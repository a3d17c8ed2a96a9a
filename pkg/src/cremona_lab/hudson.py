"""Hudson-style local invariants of a cubic system at its special points.

The decision tree follows the classical definitions: with the point moved
to (0:0:0:1) and the system expanded in the local variables, the dimension
L of the span of the linear parts, the span of the joint (linear,
quadratic) parts, and the span W of the quadratic parts decide between

  ordinary            L >= 2 (base point with no special structure)
  point of osculation L = 1 and everything is one cubic modulo I_p^3
  point of contact    L = 1 otherwise
  double pt of contact L = 0, dim W = 1
  binode              L = 0, all of W of rank <= 2 with a common plane
  double point        L = 0 otherwise (generic rank recorded)

All the linear algebra is exact; factoring a rank-2 quadratic form may need
the quadratic extension of GF(p), in which case the fixed plane is reported
over that extension.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources

from . import linalg
from .cremona import CurveRecord, MapAnalysis, RationalMap
from .fields import GF, GF2
from .groebner import Budget
from .ideals import (DegenerateInput, IdealHandle, count_points, extract_points,
                     graded_piece_dim, hilbert_from_basis, ideal_sum,
                     multiplicity_at, piece_span, point_frame, quotient,
                     sat_irrelevant, vectors_to_polys)
from .poly import Polynomial, Ring, ring
from .rng import Rng

TAGS = ("DoublePoint", "Binode", "DoubleContactPoint", "ContactPoint",
        "OsculationPoint", "Ordinary")


@dataclass
class PointType:
    tag: str
    rank_data: int | None = None
    fixed_plane: object = None  # Polynomial over the working field or its extension
    contact_surface_degree_ok: bool | None = None
    is_base_point: bool = True
    needs_extension: bool = False

    def is_all_singular(self) -> bool:
        return self.tag in ("DoublePoint", "Binode", "DoubleContactPoint")


QUAD_MONS3 = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def _local_parts(f: Polynomial, M) -> tuple:
    """(constant, linear 3-vector, quadratic 6-vector) of f at M*e3."""
    g = f.substitute_linear(M, check_invertible=False)
    R = g.ring
    F = R.field
    const = F.zero
    lin = [F.zero] * 3
    quad = [F.zero] * 6
    qidx = {q: i for i, q in enumerate(QUAD_MONS3)}
    for m, c in g.terms:
        e3 = R.mexp(m, 3)
        rest = (R.mexp(m, 0), R.mexp(m, 1), R.mexp(m, 2))
        if e3 == 3:
            const = c
        elif e3 == 2:
            lin[rest.index(1)] = c
        elif e3 == 1:
            quad[qidx[rest]] = c
    return const, lin, quad


def _quad_matrix(vec, F):
    """Symmetric 3x3 matrix of a quadratic form given by its 6 coefficients."""
    inv2 = F.inv(F.of(2))
    a, b, c, d, e, f_ = vec
    h = lambda x: F.mul(x, inv2)
    return [[a, h(b), h(c)], [h(b), d, h(e)], [h(c), h(e), f_]]


def _quad_rank(vec, F) -> int:
    return linalg.rank(F, _quad_matrix(vec, F))


def _quad_restrict_zero(vec, l, F) -> bool:
    """Does the linear form l (3-vector) divide the quadratic form vec?"""
    A = _quad_matrix(vec, F)
    basis = linalg.nullspace(F, [list(l)], 3)
    if len(basis) != 2:
        return False
    v1, v2 = basis

    def val(u, w):
        s = F.zero
        for i in range(3):
            for j in range(3):
                s = F.add(s, F.mul(F.mul(u[i], A[i][j]), w[j]))
        return s

    return val(v1, v1) == F.zero and val(v1, v2) == F.zero and val(v2, v2) == F.zero


def _factor_rank2(vec, F, allow_ext: bool = True):
    """Factor a rank <= 2 ternary quadratic form into two linear forms.

    Returns (factors, field) where factors is a list of one or two 3-vectors
    over `field` (the base field, or its quadratic extension when the
    discriminant is a non-residue); None when factoring is impossible (rank
    3 input, or Q without real extension support).
    """
    A = _quad_matrix(vec, F)
    r = linalg.rank(F, A)
    if r == 0:
        return None
    if r > 2:
        return None
    ker = linalg.nullspace(F, A, 3)
    comp = _complete_basis(ker, F)
    u1, u2 = comp[0], comp[1] if len(comp) > 1 else None

    def val(u, w):
        s = F.zero
        for i in range(3):
            for j in range(3):
                s = F.add(s, F.mul(F.mul(u[i], A[i][j]), w[j]))
        return s

    B = [c for c in comp] + ker
    Binv = linalg.inverse(F, [[B[j][i] for j in range(3)] for i in range(3)])
    # rows of Binv give the dual coordinates sigma_k(z)
    sigma = [Binv[k] for k in range(3)]
    if r == 1:
        return ([sigma[0]], F)
    a = val(u1, u1)
    b = F.mul(F.of(2), val(u1, u2))
    c = val(u2, u2)
    # factor a s^2 + b s t + c t^2
    if a == F.zero and c == F.zero:
        return ([sigma[0], sigma[1]], F)
    if a == F.zero:
        # t (b s + c t)
        l2 = [F.add(F.mul(b, sigma[0][i]), F.mul(c, sigma[1][i])) for i in range(3)]
        return ([sigma[1], l2], F)
    disc = F.sub(F.mul(b, b), F.mul(F.of(4), F.mul(a, c)))
    s = F.sqrt(disc) if hasattr(F, "sqrt") else None
    if s is not None:
        inv2a = F.inv(F.mul(F.of(2), a))
        r1 = F.mul(F.add(F.neg(b), s), inv2a)
        r2 = F.mul(F.sub(F.neg(b), s), inv2a)
        # a(s - r1 t)(s - r2 t): factors s - r_k t
        f1 = [F.sub(sigma[0][i], F.mul(r1, sigma[1][i])) for i in range(3)]
        f2 = [F.sub(sigma[0][i], F.mul(r2, sigma[1][i])) for i in range(3)]
        return ([f1, f2], F)
    if not allow_ext or not isinstance(F, GF) or isinstance(F, GF2):
        return None
    F2 = GF2(F.p)
    s2 = F2.sqrt(F2.lift(disc))
    inv2a = F2.inv(F2.lift(F.mul(F.of(2), a)))
    r1 = F2.mul(F2.add(F2.lift(F.neg(b)), s2), inv2a)
    r2 = F2.mul(F2.sub(F2.lift(F.neg(b)), s2), inv2a)
    sig0 = [F2.lift(x) for x in sigma[0]]
    sig1 = [F2.lift(x) for x in sigma[1]]
    f1 = [F2.sub(sig0[i], F2.mul(r1, sig1[i])) for i in range(3)]
    f2 = [F2.sub(sig0[i], F2.mul(r2, sig1[i])) for i in range(3)]
    return ([f1, f2], F2)


def _complete_basis(ker, F):
    """Extend the kernel basis to a basis of F^3; returns the complement."""
    rows = [list(v) for v in ker]
    comp = []
    for i in range(3):
        e = [F.one if j == i else F.zero for j in range(3)]
        if linalg.rank(F, rows + comp + [e]) > len(rows) + len(comp):
            comp.append(e)
    return comp


def classify_point(system, p, rng: Rng | None = None) -> PointType:
    """Classify the behaviour of a 4-dimensional cubic system at a point.

    `system` is a RationalMap or a list of 4 cubics over the point's field.
    """
    comps = system.components if isinstance(system, RationalMap) else list(system)
    R = comps[0].ring
    F = R.field
    rng = rng or Rng(0, "classify")
    M = point_frame(R, p)
    parts = [_local_parts(f, M) for f in comps]
    if any(pt[0] != F.zero for pt in parts):
        return PointType("Ordinary", is_base_point=False)
    lin_rows = [pt[1] for pt in parts]
    L = linalg.rank(F, [r[:] for r in lin_rows])
    if L >= 2:
        return PointType("Ordinary", is_base_point=True)
    if L == 1:
        joint = [pt[1] + pt[2] for pt in parts]
        Q2 = linalg.rank(F, joint)
        if Q2 == 1:
            return PointType("OsculationPoint", contact_surface_degree_ok=True)
        return PointType("ContactPoint", contact_surface_degree_ok=True)
    # L == 0: all members singular at p
    W = linalg.row_space_basis(F, [pt[2] for pt in parts])
    dW = len(W)
    if dW == 0:
        return PointType("DoublePoint", rank_data=0)
    if dW == 1:
        return PointType("DoubleContactPoint", rank_data=_quad_rank(W[0], F))
    grank = 0
    for k in range(3):
        sub = rng.split(f"rank-{k}")
        combo = [F.zero] * 6
        for row in W:
            c = F.rand(sub)
            combo = [F.add(x, F.mul(c, y)) for x, y in zip(combo, row)]
        grank = max(grank, _quad_rank(combo, F))
    if grank >= 3:
        return PointType("DoublePoint", rank_data=grank)
    # all quadratic parts of rank <= 2: search for a common plane
    factored = _factor_rank2(W[0], F)
    if factored is None:
        return PointType("Binode", rank_data=grank, needs_extension=True)
    factors, FF = factored
    if FF != F:
        W2 = [[FF.lift(c) for c in row] for row in W]
        for l in factors:
            if all(_quad_restrict_zero(row, l, FF) for row in W2):
                return PointType("Binode", rank_data=grank,
                                 fixed_plane=_plane_back(l, M, FF, R),
                                 needs_extension=True)
        return PointType("DoublePoint", rank_data=grank)
    for l in factors:
        if all(_quad_restrict_zero(row, l, F) for row in W):
            return PointType("Binode", rank_data=grank, fixed_plane=_plane_back(l, M, F, R))
    return PointType("DoublePoint", rank_data=grank)


def _plane_back(l, M, FF, R: Ring):
    """Local linear form (3-vector) -> linear form on P^3 in original coords.

    The local coordinates are (M^-1 z)_0..2, so the plane is
    sum l_i (M^-1 z)_i.
    """
    F = R.field
    if FF == F:
        Minv = linalg.inverse(F, M)
        coeffs = [F.zero] * 4
        for i in range(3):
            for j in range(4):
                coeffs[j] = F.add(coeffs[j], F.mul(l[i], Minv[i][j]))
        return R.poly({R.pack(tuple(1 if k == j else 0 for k in range(4))): coeffs[j]
                       for j in range(4) if coeffs[j] != F.zero})
    # extension field: build the plane over GF(p^2)
    R2 = ring(FF, 4, R.names)
    M2 = [[FF.lift(c) for c in row] for row in M]
    Minv = linalg.inverse(FF, M2)
    coeffs = [FF.zero] * 4
    for i in range(3):
        for j in range(4):
            coeffs[j] = FF.add(coeffs[j], FF.mul(l[i], Minv[i][j]))
    return R2.poly({R2.pack(tuple(1 if k == j else 0 for k in range(4))): coeffs[j]
                    for j in range(4) if coeffs[j] != FF.zero})


# ------------------------------------------------------- special locus


def special_locus(psi: RationalMap, base_ideal: IdealHandle,
                  budget: Budget | None = None) -> IdealHandle:
    """Base points where the system can carry a Hudson structure: the rank
    of the 4x4 Jacobian is <= 1 there (rank 0 for double points / binodes /
    double points of contact, rank 1 for contact and osculation points)."""
    R = psi.ring
    jac = [f.partials() for f in psi.components]
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            for a in range(4):
                for b in range(a + 1, 4):
                    m = jac[i][a] * jac[j][b] - jac[i][b] * jac[j][a]
                    if m:
                        minors.append(m)
    return sat_irrelevant(IdealHandle(list(base_ideal.gens) + minors, R), budget)


def candidate_points(analysis: MapAnalysis, rng: Rng, budget: Budget | None = None):
    """Candidate special points: the rank <= 1 locus of the system plus the
    isolated base points (and the singular points of C2, which the rank
    locus already contains for all-singular structures).

    Returns (rational points, extension points, unresolved count).
    """
    psi = analysis.psi
    spec = special_locus(psi, analysis.base_ideal, budget)
    pts: list = []
    ext: list = []
    unresolved = 0
    if not spec.is_unit():
        h = hilbert_from_basis(spec.groebner(), psi.ring)
        if h.dimension != 0:
            raise DegenerateInput("special locus is not finite (ruled map?)")
        got, got_ext, complete = extract_points(spec, rng.split("spec"), budget)
        pts.extend(got)
        ext.extend(got_ext)
        if not complete:
            total = count_points(spec, rng.split("spec-count"), budget)
            unresolved = max(0, total - len(got) - len(got_ext))
    if analysis.theta_ideal is not None and not analysis.theta_ideal.is_unit():
        got, got_ext, complete = extract_points(analysis.theta_ideal, rng.split("theta"), budget)
        for q in got:
            if q not in pts:
                pts.append(q)
        for q in got_ext:
            if q not in ext:
                ext.append(q)
    return pts, ext, unresolved


def tangent_profile(c1: CurveRecord, c2: CurveRecord, p, rng: Rng,
                    budget: Budget | None = None):
    """(tangent-cone degree on C1, on C2, p in C2?)."""
    F = c1.ideal.ring.field
    on1 = all(g.evaluate(list(p)) == F.zero for g in c1.ideal.gens)
    on2 = c2.degree > 0 and all(g.evaluate(list(p)) == F.zero for g in c2.ideal.gens)
    d1 = multiplicity_at(c1.ideal, p, rng.split("c1"), budget) if on1 else 0
    d2 = multiplicity_at(c2.ideal, p, rng.split("c2"), budget) if on2 else 0
    return d1, d2, on2


# ------------------------------------------------------------ the vector


@dataclass
class HudsonVector:
    bidegree: tuple
    counts: dict  # tag -> count, plus "ordinary"
    fcurves: list  # [(kind, degree, p_a)]
    profiles: list  # [(point, tag, d1, d2, on_c2)]
    partial: bool = False
    specials: list = field(default_factory=list)  # [(point, PointType)]
    ruled: bool = False
    quadric_rank: int | None = None  # rank of the unique quadric through C2

    def count_tuple(self):
        c = self.counts
        return (c.get("DoubleContactPoint", 0), c.get("Binode", 0),
                c.get("DoublePoint", 0), c.get("OsculationPoint", 0),
                c.get("ContactPoint", 0), c.get("ordinary", 0))


def hudson_vector(analysis: MapAnalysis, rng: Rng | None = None,
                  budget: Budget | None = None) -> HudsonVector:
    rng = rng or Rng(analysis.seed, "hudson")
    psi = analysis.psi
    F = psi.ring.field
    if analysis.ruled:
        # the singular locus is a whole line; Hudson's point columns apply
        # to the non-ruled strata, so only the ordinary count is reported
        fcurves = _split_fcurves(analysis.c2, rng.split("fc"), budget)
        return HudsonVector(analysis.bidegree, {"ordinary": analysis.theta_count},
                            fcurves, [], ruled=True)
    pts, ext, unresolved = candidate_points(analysis, rng.split("cand"), budget)
    counts: dict = {}
    specials = []
    profiles = []
    theta = analysis.theta_ideal
    absorbed = 0
    for p in pts:
        pt = classify_point(psi, p, rng.split(f"class-{p}"))
        if pt.tag == "Ordinary":
            continue
        specials.append((p, pt))
        counts[pt.tag] = counts.get(pt.tag, 0) + 1
        if theta is not None and not theta.is_unit():
            if all(g.evaluate(list(p)) == F.zero for g in theta.gens):
                absorbed += 1
        prof = tangent_profile(analysis.c1, analysis.c2, p, rng.split(f"prof-{p}"), budget)
        profiles.append((p, pt.tag, prof[0], prof[1], prof[2]))
    partial = unresolved > 0
    for p in ext:
        R2 = ring(GF2(F.p), 4, psi.ring.names)
        comps2 = [f.map_field(R2) for f in psi.components]
        pt = classify_point(comps2, p, rng.split("class-ext"))
        if pt.tag == "Ordinary":
            continue
        specials.append((p, pt))
        counts[pt.tag] = counts.get(pt.tag, 0) + 1
    counts["ordinary"] = max(0, analysis.theta_count - absorbed)
    fcurves = _split_fcurves(analysis.c2, rng.split("fc"), budget)
    qrank = None
    if analysis.c2.degree:
        q = _unique_quadric_of(analysis.c2)
        if q is not None:
            qrank = _rank4(q)
    return HudsonVector(analysis.bidegree, counts, fcurves, profiles,
                        partial=partial, specials=specials, quadric_rank=qrank)


def _split_fcurves(c2: CurveRecord, rng: Rng, budget) -> list:
    """Best-effort component split of the F-curve: peel off lines findable
    over the working field, report the leftover with its Hilbert data."""
    if c2.degree == 0:
        return []
    R = c2.ideal.ring
    F = R.field
    lines = []
    work = c2.ideal
    work_h = hilbert_from_basis(work.groebner(), R)
    for round_ in range(4):
        if work_h.dimension != 1:
            break
        line = _find_line_component(work, rng.split(f"line-{round_}"), budget)
        if line is None:
            break
        lines.append(line)
        nxt = quotient(work, line, budget)
        nxt = IdealHandle(list(nxt.gens), R, saturated=True)
        nh = hilbert_from_basis(nxt.groebner(), R)
        if nh.dimension == 1 and nh.degree < work_h.degree:
            work, work_h = nxt, nh
        else:
            work, work_h = nxt, nh
            break
    out = [("l", 1, 0) for _ in lines]
    if work_h.dimension == 1:
        out.append(("w", work_h.degree, work_h.p_a))
    return out


def _find_line_component(C: IdealHandle, rng: Rng, budget):
    """A line contained in the curve C, or None (field-rational search)."""
    R = C.ring
    F = R.field
    samples = []
    for k in range(2):
        sub = rng.split(f"plane-{k}")
        hp = R.poly({R.pack(tuple(1 if j == i else 0 for j in range(4))): F.rand(sub)
                     for i in range(4)})
        cut = sat_irrelevant(IdealHandle(list(C.gens) + [hp], R), budget)
        if cut.is_unit():
            return None
        h = hilbert_from_basis(cut.groebner(), R)
        if h.dimension != 0:
            return None
        pts, _, _ = extract_points(cut, sub.split("pts"), budget)
        samples.append(pts)
    for a in samples[0]:
        for b in samples[1]:
            if a == b:
                continue
            null = linalg.nullspace(F, [list(a), list(b)], 4)
            if len(null) != 2:
                continue
            forms = [R.poly({R.pack(tuple(1 if k == j else 0 for k in range(4))): c
                             for j, c in enumerate(v) if c != F.zero}) for v in null]
            L = IdealHandle(forms, R, saturated=True)
            if all(L.contains(g) for g in C.gens):
                return L
    return None


# ---------------------------------------------------------------- table VI


TABLE6_SHA256 = "119f656f420832cf31d7e2a208769e500c08a93beeff8695ec8f2222fddc0c32"


@dataclass
class TableRow:
    row: int
    bidegree: tuple
    counts: tuple  # (dpc, binode, dp, osculation, contact, ordinary)
    fcurves: str
    remarks: str


_table_cache = None


def load_table(verify: bool = False) -> list:
    global _table_cache
    if _table_cache is not None and not verify:
        return _table_cache
    data = resources.files("cremona_lab").joinpath("data/hudson_table6.txt").read_bytes()
    if verify:
        digest = hashlib.sha256(data).hexdigest()
        if digest != TABLE6_SHA256:
            raise RuntimeError(
                f"hudson_table6.txt integrity check failed ({digest[:12]}...)")
    rows = []
    for line in data.decode("utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("|")
        num = int(parts[0])
        d, dp = parts[1].split("-")
        counts = tuple(int(x) for x in parts[2:8])
        rows.append(TableRow(num, (int(d), int(dp)), counts, parts[8], parts[9] if len(parts) > 9 else ""))
    if [r.row for r in rows] != list(range(1, 76)):
        raise RuntimeError("hudson_table6.txt must hold rows 1..75")
    _table_cache = rows
    return rows


def match_table(v: HudsonVector) -> list:
    """Rows compatible with the observed bidegree and counts; the F-curve
    line/omega structure disambiguates when it was computable.  An empty
    list is legal (the classification itself flags two missing rows)."""
    rows = load_table()
    if v.ruled:
        dbl = [r for r in rows if r.bidegree == v.bidegree and r.fcurves.startswith("l^2")]
        got = [r for r in dbl if r.counts[5] == v.counts.get("ordinary", 0)]
        return got or dbl
    cand = [r for r in rows if r.bidegree == v.bidegree and r.counts == v.count_tuple()]
    # the classical (3,4) binode row is the cone stratum: its F-curve lies
    # on a singular quadric; the smooth-quadric binode stratum has no row
    if v.quadric_rank == 4:
        cand = [r for r in cand if r.row != 8]
    # single-special rows encode the multiplicity of the F-curve at the
    # marked point (O1^k); compare with the observed tangent profile
    if sum(v.count_tuple()[:5]) == 1 and len(v.profiles) == 1:
        d2 = v.profiles[0][3]
        cand = [r for r in cand
                if sum(r.counts[:5]) != 1 or _fcurve_mult_at_o1(r.fcurves) == d2]
    if len(cand) > 1 and v.fcurves:
        nlines = sum(1 for k, _, _ in v.fcurves if k == "l")
        got = [r for r in cand if _fcurve_line_count(r.fcurves) == nlines]
        if got:
            cand = got
    return cand


def _fcurve_line_count(text: str) -> int:
    # standalone line components: tokens starting with "l" but not "l^2"
    n = 0
    for tok in text.split(","):
        tok = tok.strip()
        if re.match(r"^l\d*( |$|=)", tok + " ") and not tok.startswith("l^"):
            n += 1
    return n


def _fcurve_mult_at_o1(text: str) -> int:
    """Total multiplicity of the F-curve at the first marked point: sum of
    the O1^k (or O^k) powers across the component list."""
    total = 0
    for m in re.finditer(r"O(\d*)(?:\^(\d+))?", text):
        if m.group(1) in ("", "1"):
            total += int(m.group(2) or 1)
    return total


# ------------------------------------------------------------- components


class ClassificationError(RuntimeError):
    pass


def classify_component(analysis: MapAnalysis, hv: HudsonVector | None = None,
                       rng: Rng | None = None, budget: Budget | None = None) -> str:
    """Component / stratum label of a birational cubic map of P^3."""
    rng = rng or Rng(analysis.seed, "component")
    if analysis.birational not in (None, "yes"):
        raise ClassificationError("classification requires a birational map")
    d = analysis.bidegree[1]
    if analysis.ruled:
        if d not in (2, 3, 4, 5):
            raise ClassificationError(f"ruled map of unexpected bidegree (3,{d})")
        return f"ruled_3_{d}"
    if d not in (3, 4, 5):
        raise ClassificationError(f"no non-ruled stratum for bidegree (3,{d})")
    p2 = analysis.c2.p_a
    if hv is None:
        hv = hudson_vector(analysis, rng.split("hv"), budget)
    sing_tags = [(p, t) for (p, t) in hv.specials if t.is_all_singular()]
    contact_tags = [(p, t) for (p, t) in hv.specials
                    if t.tag in ("ContactPoint", "OsculationPoint")]
    if d == 3:
        if p2 == 3:
            return "E2"
        if p2 == 4:
            if not sing_tags:
                raise ClassificationError("(3,3) with p2=4 but no fixed singular point found")
            tag = sing_tags[0][1].tag
            return {"DoublePoint": "E3", "Binode": "E3.5", "DoubleContactPoint": "E4"}[tag]
        raise ClassificationError(f"Bir(3,3) with p_a(C2)={p2} is empty")
    if d == 4:
        if p2 == 1:
            return "E6"
        if p2 == 2:
            tags = sorted(t.tag for _, t in sing_tags)
            if tags == ["Binode", "DoubleContactPoint"]:
                return "E10"
            if not sing_tags:
                raise ClassificationError("(3,4) with p2=2 but no singular system point")
            tag = sing_tags[0][1].tag
            if tag == "DoublePoint":
                return "E7"
            if tag == "DoubleContactPoint":
                return "E9"
            # binode: separate by the rank of the quadric through C2
            q = _unique_quadric(analysis.c2)
            if q is None:
                return "E8"
            rk = _rank4(q)
            return "E7.5" if rk == 4 else "E8"
        raise ClassificationError(f"Bir(3,4) with p_a(C2)={p2} is empty")
    # d == 5
    if p2 == -1:
        return "E12"
    if p2 == 0:
        if sing_tags:
            return "E14"
        if contact_tags and graded_piece_dim(analysis.c2.ideal, 3) == 7:
            return "E23"
        raise ClassificationError("(3,5) with p2=0 but neither E14 nor E23 shape")
    if p2 == 1:
        if len(sing_tags) >= 2:
            return "E19"
        if len(sing_tags) == 1 and contact_tags:
            return "E24"
        if len(sing_tags) == 1:
            p = sing_tags[0][0]
            mult = multiplicity_at(analysis.c1.ideal, p, rng.split("mult"), budget)
            if mult == 3:
                return "E13"
            raise ClassificationError(
                f"(3,5), p2=1, one singular point of C1 multiplicity {mult}")
        raise ClassificationError("(3,5) with p2=1 but no singular system point")
    raise ClassificationError(f"Bir(3,5) with p_a(C2)={p2} is empty")


def _unique_quadric(c2: CurveRecord):
    return _unique_quadric_of(c2)


def _unique_quadric_of(c2: CurveRecord):
    span, mons = piece_span(c2.ideal, 2)
    if len(span) != 1:
        return None
    return vectors_to_polys(span, mons, c2.ideal.ring)[0]


def _rank4(q: Polynomial) -> int:
    R = q.ring
    F = R.field
    inv2 = F.inv(F.of(2))
    A = [[F.zero] * 4 for _ in range(4)]
    for m, c in q.terms:
        exps = R.unpack(m)
        idx = [i for i in range(4) for _ in range(exps[i])]
        i, j = idx[0], idx[1]
        if i == j:
            A[i][i] = c
        else:
            A[i][j] = A[j][i] = F.mul(c, inv2)
    return linalg.rank(F, A)


# ------------------------------------------------------- curve singularities


def curve_singular_points(C: CurveRecord, rng: Rng, budget: Budget | None = None):
    """Singular points of a curve over the working field, with their
    multiplicities: [(point, mult)].  Returns None when the singular locus
    is not finite (non-reduced curves, e.g. the double line of a ruled map).
    """
    I = C.ideal
    R = I.ring
    gens = list(I.groebner())
    minors = []
    jac = [g.partials() for g in gens]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            for a in range(4):
                for b in range(a + 1, 4):
                    m = jac[i][a] * jac[j][b] - jac[i][b] * jac[j][a]
                    if m:
                        minors.append(m)
    S = sat_irrelevant(IdealHandle(gens + minors, R), budget)
    if S.is_unit():
        return []
    h = hilbert_from_basis(S.groebner(), R)
    if h.dimension != 0:
        return None
    pts, _, _ = extract_points(S, rng.split("pts"), budget)
    out = []
    for p in pts:
        try:
            m = multiplicity_at(I, p, rng.split(f"m-{p}"), budget)
        except DegenerateInput:
            continue
        if m >= 2:
            out.append((p, m))
    return out
