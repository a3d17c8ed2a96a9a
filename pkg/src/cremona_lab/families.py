"""Certified constructors for the classical families of cubic birational
maps of P^3, plus the explicit degeneration paths between them.

Each constructor assembles the 4-dimensional system of cubics from its
geometric ingredients (all "general" choices drawn from a splittable seeded
stream), asserts the dimension, validates the steering-specific local
structure, and returns the map together with the invariants the analyzer
must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cremona import MapError, RationalMap, map_of_degree, new_map
from .fields import GF, QQ, Field
from .ideals import (DegenerateInput, IdealHandle, hilbert_from_basis, intersect,
                     piece_span, quotient, sat_irrelevant, vectors_to_polys)
from .hudson import classify_point
from .poly import Polynomial, Ring, parse_poly, ring
from .rng import Rng

FAMILY_LABELS = (
    "ruled_3_2", "ruled_3_3", "ruled_3_4", "ruled_3_5",
    "E2", "E3", "E3.5", "E4",
    "E6", "E7", "E7.5", "E8", "E9",
    "E12", "E13", "E14", "E19", "E23", "E24",
)

PATHS = ("det_to_dJ", "E6_to_E7", "ruled_jump", "E24_to_E23")


@dataclass
class FamilySpec:
    label: str
    bidegree: tuple
    c2: tuple | None  # (degree, p_a) of the residual curve; None for ruled
    counts: tuple | None  # (dpc, binode, dp, osc, contact, ordinary)
    table_row: int | None  # None = documented missing row
    seed: object = None
    field: str = ""
    notes: str = ""


EXPECTED = {
    "ruled_3_2": FamilySpec("ruled_3_2", (3, 2), None, None, 1),
    "ruled_3_3": FamilySpec("ruled_3_3", (3, 3), None, None, 5),
    "ruled_3_4": FamilySpec("ruled_3_4", (3, 4), None, None, 11),
    "ruled_3_5": FamilySpec("ruled_3_5", (3, 5), None, None, 27),
    "E2": FamilySpec("E2", (3, 3), (6, 3), (0, 0, 0, 0, 0, 0), 2),
    "E3": FamilySpec("E3", (3, 3), (6, 4), (0, 0, 1, 0, 0, 0), 3),
    "E3.5": FamilySpec("E3.5", (3, 3), (6, 4), (0, 1, 0, 0, 0, 0), None,
                       notes="binode stratum absent from the classical table"),
    "E4": FamilySpec("E4", (3, 3), (6, 4), (1, 0, 0, 0, 0, 0), 4),
    "E6": FamilySpec("E6", (3, 4), (5, 1), (0, 0, 0, 0, 0, 1), 6),
    "E7": FamilySpec("E7", (3, 4), (5, 2), (0, 0, 1, 0, 0, 1), 7),
    "E7.5": FamilySpec("E7.5", (3, 4), (5, 2), (0, 1, 0, 0, 0, 1), None,
                       notes="smooth-quadric binode stratum missing from the classical table"),
    "E8": FamilySpec("E8", (3, 4), (5, 2), (0, 1, 0, 0, 0, 1), 8),
    "E9": FamilySpec("E9", (3, 4), (5, 2), (1, 0, 0, 0, 0, 1), 9),
    "E12": FamilySpec("E12", (3, 5), (4, -1), (0, 0, 0, 0, 0, 2), 12),
    "E13": FamilySpec("E13", (3, 5), (4, 1), (0, 0, 1, 0, 0, 2), 13),
    "E14": FamilySpec("E14", (3, 5), (4, 0), (0, 0, 1, 0, 0, 2), 14),
    "E19": FamilySpec("E19", (3, 5), (4, 1), (0, 0, 2, 0, 0, 2), 19),
    "E23": FamilySpec("E23", (3, 5), (4, 0), (0, 0, 0, 0, 1, 0), 23),
    "E24": FamilySpec("E24", (3, 5), (4, 1), (0, 0, 1, 0, 1, 0), 24),
}


def family_spec(label: str, seed=None, field: Field | None = None) -> FamilySpec:
    sp = EXPECTED[label]
    return FamilySpec(sp.label, sp.bidegree, sp.c2, sp.counts, sp.table_row,
                      seed=seed, field=repr(field) if field else "", notes=sp.notes)


# -------------------------------------------------------- linear scaffolding


def _mons3(R: Ring):
    return R.monomials_of_degree(3)


def _vec(f: Polynomial, mons, idx):
    F = f.ring.field
    row = [F.zero] * len(mons)
    for m, c in f.terms:
        row[idx[m]] = c
    return row


def _span_constraints(F, rows, n):
    """Functionals vanishing exactly on the row span."""
    basis = linalg.row_space_basis(F, rows)
    return linalg.nullspace(F, [list(r) for r in basis], n) if basis else \
        [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]


def _eval_row(R: Ring, mons, p):
    F = R.field
    row = []
    for m in mons:
        v = F.one
        for i in range(4):
            e = R.mexp(m, i)
            for _ in range(e):
                v = F.mul(v, p[i])
        row.append(v)
    return row


def _line_rows(R: Ring, mons, a, b):
    """4 rows: coefficients of s^3..t^3 of f(s a + t b)."""
    F = R.field
    rows = [[F.zero] * len(mons) for _ in range(4)]
    for col, m in enumerate(mons):
        # expand prod (s a_i + t b_i)^{e_i}
        acc = {0: F.one}  # t-degree -> coeff
        for i in range(4):
            e = R.mexp(m, i)
            for _ in range(e):
                nxt = {}
                for k, c in acc.items():
                    if a[i] != F.zero:
                        nxt[k] = F.add(nxt.get(k, F.zero), F.mul(c, a[i]))
                    if b[i] != F.zero:
                        nxt[k + 1] = F.add(nxt.get(k + 1, F.zero), F.mul(c, b[i]))
                acc = nxt
        for k, c in acc.items():
            rows[k][col] = F.add(rows[k][col], c)
    return rows


def _contact_rows(R: Ring, mons, q, Hq_points):
    """f restricted to the plane through (q, P1, P2) singular at q:
    coefficients of s^3, s^2 t, s^2 u vanish."""
    F = R.field
    P = [q] + Hq_points
    rows = [[F.zero] * len(mons) for _ in range(3)]
    tgt = {(2, 1, 0): 1, (2, 0, 1): 2, (3, 0, 0): 0}
    for col, m in enumerate(mons):
        acc = {(0, 0, 0): F.one}
        for i in range(4):
            e = R.mexp(m, i)
            for _ in range(e):
                nxt = {}
                for (ks, kt, ku), c in acc.items():
                    for w, dk in ((P[0][i], (1, 0, 0)), (P[1][i], (0, 1, 0)), (P[2][i], (0, 0, 1))):
                        if w != F.zero:
                            key = (ks + dk[0], kt + dk[1], ku + dk[2])
                            nxt[key] = F.add(nxt.get(key, F.zero), F.mul(c, w))
                acc = nxt
        for key, c in acc.items():
            if key in tgt:
                r = tgt[key]
                rows[r][col] = F.add(rows[r][col], c)
    return rows


def _solve_system(R: Ring, constraint_rows, expect_dim: int = 4):
    """Nullspace of the stacked constraints as a list of cubics."""
    F = R.field
    mons = _mons3(R)
    null = linalg.nullspace(F, constraint_rows, len(mons))
    if len(null) != expect_dim:
        raise DegenerateInput(f"system dimension {len(null)}, expected {expect_dim}")
    return vectors_to_polys(null, mons, R)


def _rand_point(R: Ring, rng: Rng):
    F = R.field
    while True:
        p = tuple(F.rand(rng) for _ in range(4))
        if any(c != F.zero for c in p):
            return p


def _rand_linear(R: Ring, rng: Rng, z3free: bool = False) -> Polynomial:
    F = R.field
    n = 3 if z3free else 4
    while True:
        d = {}
        for i in range(n):
            c = F.rand(rng)
            if c != F.zero:
                d[R.pack(tuple(1 if j == i else 0 for j in range(4)))] = c
        if d:
            return R.poly(d)


def _rand_form(R: Ring, deg: int, rng: Rng, z3free: bool = False) -> Polynomial:
    F = R.field
    d = {}
    for m in R.monomials_of_degree(deg):
        if z3free and R.mexp(m, 3):
            continue
        c = F.rand(rng)
        if c != F.zero:
            d[m] = c
    if not d:
        raise DegenerateInput("zero random form")
    return R.poly(d)


def _origin(R: Ring):
    F = R.field
    return (F.zero, F.zero, F.zero, F.one)


# ------------------------------------------------------------------- ruled


def ruled(d: int, seed, field: Field, degenerate: bool = False) -> RationalMap:
    """Generic ruled map of bidegree (3, d): double line delta = {z0=z1=0},
    5-d ruling lines of a ruled cubic through delta, and 2d-4 simple base
    points on that cubic.

    With degenerate=True two of the base points are placed on a line meeting
    delta, which drops the bidegree by one (the inclusion of the ruled
    strata in each other's closures).
    """
    if d not in (2, 3, 4, 5):
        raise MapError("ruled bidegree must have d in 2..5")
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, f"ruled-{d}")
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        # ruled cubic S = z0^2 a + z0 z1 b + z1^2 c
        a = _rand_linear(R, rng.split("a"))
        b = _rand_linear(R, rng.split("b"))
        c = _rand_linear(R, rng.split("c"))
        lines = []
        ok = True
        for k in range(5 - d):
            got = _ruling_line(R, (a, b, c), rng.split(f"ruling-{k}"))
            if got is None:
                ok = False
                break
            lines.append(got)
        if not ok:
            continue
        # pairwise disjoint ruling lines
        if not _lines_disjoint(F, lines):
            continue
        npts = 2 * d - 4
        pts = []
        if degenerate and npts >= 2:
            x0 = (F.zero, F.zero, F.rand(rng.split("dx1")), F.one)
            w = _rand_point(R, rng.split("dw"))
            pts.append(tuple(F.add(x0[i], w[i]) for i in range(4)))
            t2 = F.rand_nonzero(rng.split("dt"))
            pts.append(tuple(F.add(x0[i], F.mul(t2, w[i])) for i in range(4)))
            npts -= 2
        for k in range(npts):
            q = _point_on_surface(R, (a, b, c), rng.split(f"pt-{k}"))
            if q is None:
                ok = False
                break
            pts.append(q)
        if not ok:
            continue
        rows = []
        # membership in I_delta^2: the 10 monomials with z0,z1-degree <= 1 vanish
        for col, m in enumerate(mons):
            if R.mexp(m, 0) + R.mexp(m, 1) <= 1:
                row = [F.zero] * len(mons)
                row[col] = F.one
                rows.append(row)
        for (qq, v) in lines:
            rows.extend(_line_rows(R, mons, qq, v))
        for p in pts:
            rows.append(_eval_row(R, mons, p))
        try:
            comps = _solve_system(R, rows)
            psi = new_map(*comps, label=f"ruled_3_{d - (1 if degenerate else 0)}", seed=seed)
        except (DegenerateInput, MapError):
            continue
        return psi
    raise DegenerateInput(f"ruled({d}) sampling failed for seed {seed}")


def _lines_disjoint(F, lines) -> bool:
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            M = [list(lines[i][0]), list(lines[i][1]), list(lines[j][0]), list(lines[j][1])]
            if linalg.rank(F, M) < 4:
                return False
    return True


def _ruling_line(R: Ring, abc, rng: Rng):
    """A line on the ruled cubic meeting the double line: returns (q, v)."""
    F = R.field
    a, b, c = abc

    def ev(l, v):
        s = F.zero
        for m, cf in l.terms:
            for i in range(4):
                if R.mexp(m, i):
                    s = F.add(s, F.mul(cf, v[i]))
        return s

    for k in range(20):
        sub = rng.split(f"draw-{k}")
        q = (F.zero, F.zero, F.rand(sub), F.rand(sub))
        if q[2] == F.zero and q[3] == F.zero:
            continue
        aq, bq, cq = ev(a, q), ev(b, q), ev(c, q)
        root = _conic_root(F, aq, bq, cq, sub)
        if root is None:
            continue
        v0, v1 = root
        # second condition: v0^2 a(v) + v0 v1 b(v) + v1^2 c(v) = 0, linear in v2, v3
        co = [F.zero] * 4  # coefficients of v_i
        for coeff, l in ((F.mul(v0, v0), a), (F.mul(v0, v1), b), (F.mul(v1, v1), c)):
            for m, cf in l.terms:
                for i in range(4):
                    if R.mexp(m, i):
                        co[i] = F.add(co[i], F.mul(coeff, cf))
        cons = F.add(F.mul(co[0], v0), F.mul(co[1], v1))
        v2 = F.rand(sub)
        if co[3] != F.zero:
            v3 = F.neg(F.div(F.add(cons, F.mul(co[2], v2)), co[3]))
            v = (v0, v1, v2, v3)
        elif co[2] != F.zero:
            v3 = F.rand(sub)
            v2 = F.neg(F.div(F.add(cons, F.mul(co[3], v3)), co[2]))
            v = (v0, v1, v2, v3)
        else:
            continue
        if linalg.rank(F, [list(q), list(v)]) == 2:
            return q, v
    return None


def _conic_root(F, a, b, c, rng: Rng):
    """(v0 : v1) with a v0^2 + b v0 v1 + c v1^2 = 0, F-rational."""
    if a == F.zero:
        return (F.zero, F.one)
    disc = F.sub(F.mul(b, b), F.mul(F.of(4), F.mul(a, c)))
    s = F.sqrt(disc)
    if s is None:
        return None
    inv2a = F.inv(F.mul(F.of(2), a))
    r = F.mul(F.add(F.neg(b), s), inv2a)
    return (r, F.one)


def _point_on_surface(R: Ring, abc, rng: Rng):
    """Rational point on the ruled cubic, off the double line."""
    F = R.field
    a, b, c = abc
    z0, z1 = R.var(0), R.var(1)
    S = z0 * z0 * a + z0 * z1 * b + z1 * z1 * c
    from . import univar

    for k in range(20):
        sub = rng.split(f"draw-{k}")
        x = _rand_point(R, sub)
        y = _rand_point(R, sub)
        # S(x + t y) as univariate in t
        coeffs = [F.zero] * 4
        for m, cf in S.terms:
            acc = {0: F.one}
            for i in range(4):
                for _e in range(R.mexp(m, i)):
                    nxt = {}
                    for k, cc in acc.items():
                        if x[i] != F.zero:
                            nxt[k] = F.add(nxt.get(k, F.zero), F.mul(cc, x[i]))
                        if y[i] != F.zero:
                            nxt[k + 1] = F.add(nxt.get(k + 1, F.zero), F.mul(cc, y[i]))
                    acc = nxt
            for k, cc in acc.items():
                coeffs[k] = F.add(coeffs[k], F.mul(cf, cc))
        if all(cc == F.zero for cc in coeffs):
            continue
        roots = univar.roots_gf(coeffs, F, sub) if isinstance(F, GF) else \
            univar.roots_qq(coeffs, F)
        for t in roots:
            p = tuple(F.add(x[i], F.mul(F.of(t) if not isinstance(t, tuple) else t, y[i]))
                      for i in range(4))
            if p[0] == F.zero and p[1] == F.zero:
                continue
            return p
    return None


# ------------------------------------------------------------ determinantal


def determinantal(seed, field: Field) -> RationalMap:
    """Signed 3x3 minors of a random 4x3 matrix of linear forms."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "determinantal")
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        rowsM = [[_rand_linear(R, rng.split(f"m{i}{j}")) for j in range(3)] for i in range(4)]
        comps = []
        for i in range(4):
            sub = [rowsM[j] for j in range(4) if j != i]
            dd = _det3(sub)
            comps.append(dd if i % 2 == 0 else dd.scale(F.of(-1)))
        try:
            return new_map(*comps, label="E2", seed=seed)
        except MapError:
            continue
    raise DegenerateInput(f"determinantal sampling failed for seed {seed}")


def _det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


# ------------------------------------------------------------ de Jonquieres


def dejonquieres(variant: str, seed, field: Field) -> RationalMap:
    """(3,3) maps from a quadric Q through p and a cubic S singular at p:
    the system is I_p Q + (S) with p = (0:0:0:1).

    E3:   Q of rank 4, quadratic part of S of rank 3 (double point);
    E3.5: quadratic part of S = T_pQ * (other plane)   (binode);
    E4:   Q of rank 2 and singular at p                 (double point of contact).
    """
    if variant not in ("E3", "E3.5", "E4"):
        raise MapError(f"unknown de Jonquieres variant {variant}")
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, f"dejonquieres-{variant}")
    z3 = R.var(3)
    p = _origin(R)
    expect = {"E3": "DoublePoint", "E3.5": "Binode", "E4": "DoubleContactPoint"}[variant]
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        if variant == "E4":
            h1 = _rand_linear(R, rng.split("h1"), z3free=True)
            h2 = _rand_linear(R, rng.split("h2"), z3free=True)
            Q = h1 * h2
        else:
            l = _rand_linear(R, rng.split("l"), z3free=True)
            Q = z3 * l + _rand_form(R, 2, rng.split("q"), z3free=True)
        qS = (_rand_form(R, 2, rng.split("qS"), z3free=True) if variant != "E3.5"
              else None)
        if variant == "E3.5":
            u = _rand_linear(R, rng.split("u"), z3free=True)
            qS = l * u
        S = z3 * qS + _rand_form(R, 3, rng.split("cS"), z3free=True)
        try:
            psi = new_map(R.var(0) * Q, R.var(1) * Q, R.var(2) * Q, S,
                          label=variant, seed=seed)
        except MapError:
            continue
        tag = classify_point(psi, p, rng.split("verify")).tag
        if tag != expect:
            continue
        if variant == "E3" and _rank4_of(Q) != 4:
            continue
        return psi
    raise DegenerateInput(f"{variant} sampling failed for seed {seed}")


def _rank4_of(q: Polynomial) -> int:
    from .hudson import _rank4

    return _rank4(q)


# -------------------------------------------------------------- (3,4) maps


def cuboquartic(variant: str, seed, field: Field) -> RationalMap:
    if variant == "E6":
        return _build_e6(seed, field)
    if variant in ("E7", "E7.5", "E9"):
        return _build_e7_family(variant, seed, field)
    if variant == "E8":
        return _build_e8(seed, field)
    raise MapError(f"unknown cubo-quartic variant {variant}")


def _pencil_matrix_maps(R: Ring, Ls, t):
    """The 2x4 matrix whose minors cut the quintic: rows
    (t z3, z0, -z1, -z2) and (t z3 L0 + Q, q1, q2, q3)."""
    F = R.field
    z0, z1, z2, z3 = R.vars()
    L0, L1, L2, L3 = Ls
    Q = z0 * z3 - z1 * z2
    tz3 = z3.scale(t)
    r1 = [tz3, z0, -z1, -z2]
    q1 = z2 * z2 + z0 * L1 + tz3 * L2
    q2 = -(z2 * z3) - z1 * L1 + tz3 * L3
    q3 = -(z2 * L0) - z1 * L2 - z0 * L3
    r2 = [tz3 * L0 + Q, q1, q2, q3]
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            m = r1[i] * r2[j] - r1[j] * r2[i]
            if m:
                minors.append(m)
    return minors


def _build_e6(seed, field: Field, t=None) -> RationalMap:
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E6")
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        Ls = [_rand_linear(R, rng.split(f"L{i}")) for i in range(4)]
        tval = t if t is not None else F.rand_nonzero(rng.split("t"))
        minors = _pencil_matrix_maps(R, Ls, tval)
        p1 = _rand_point(R, rng.split("p1"))
        rows = _span_constraints(F, [_vec(m, mons, idx) for m in minors], len(mons))
        rows.append(_eval_row(R, mons, p1))
        try:
            comps = _solve_system(R, rows)
            return new_map(*comps, label="E6", seed=seed)
        except (DegenerateInput, MapError):
            continue
    raise DegenerateInput(f"E6 sampling failed for seed {seed}")


def _build_e7_family(variant: str, seed, field: Field) -> RationalMap:
    """E7 / E7.5 / E9 through the bilinear parametrization
    Q = L0 L3 - L1 L2, S1 = L0 Q1 + L1 Q2, S2 = L2 Q1 + L3 Q2 with the Q_i
    z3-free (cones with vertex p = (0:0:0:1)) and p on Q."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, f"{variant}")
    z3 = R.var(3)
    p = _origin(R)
    expect = {"E7": "DoublePoint", "E7.5": "Binode", "E9": "DoubleContactPoint"}[variant]
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        ls = [_rand_linear(R, rng.split(f"l{i}"), z3free=True) for i in range(4)]
        if variant == "E9":
            a0 = F.rand_nonzero(rng.split("a0"))
            avals = [a0, F.zero, a0, F.zero]
            ls[3] = ls[1]
        else:
            a0 = F.rand_nonzero(rng.split("a0"))
            a1 = F.rand_nonzero(rng.split("a1"))
            a2 = F.rand_nonzero(rng.split("a2"))
            avals = [a0, a1, a2, F.mul(a1, F.div(a2, a0))]
        Ls = [z3.scale(avals[i]) + ls[i] if avals[i] != F.zero else ls[i]
              for i in range(4)]
        Q = Ls[0] * Ls[3] - Ls[1] * Ls[2]
        Q1 = _rand_form(R, 2, rng.split("Q1"), z3free=True)
        if variant == "E7.5":
            # T_pQ (a z3-free linear form) must divide the quadratic part
            T = (ls[3].scale(avals[0]) + ls[0].scale(avals[3])
                 - ls[2].scale(avals[1]) - ls[1].scale(avals[2]))
            if not T:
                continue
            hprime = _rand_linear(R, rng.split("h'"), z3free=True)
            Q2 = (T * hprime - Q1.scale(avals[0])).scale(F.inv(avals[1]))
        else:
            Q2 = _rand_form(R, 2, rng.split("Q2"), z3free=True)
        S1 = Ls[0] * Q1 + Ls[1] * Q2
        S2 = Ls[2] * Q1 + Ls[3] * Q2
        span = [R.var(i) * Q for i in range(3)] + [S1, S2]
        p1 = _rand_point(R, rng.split("p1"))
        rows = _span_constraints(F, [_vec(m, mons, idx) for m in span], len(mons))
        rows.append(_eval_row(R, mons, p1))
        try:
            comps = _solve_system(R, rows)
            psi = new_map(*comps, label=variant, seed=seed)
        except (DegenerateInput, MapError):
            continue
        if classify_point(psi, p, rng.split("verify")).tag != expect:
            continue
        if variant in ("E7", "E7.5") and _rank4_of(Q) != 4:
            continue
        return psi
    raise DegenerateInput(f"{variant} sampling failed for seed {seed}")


def _build_e8(seed, field: Field) -> RationalMap:
    """Binode stratum: the quadric through C2 is an irreducible cone with
    vertex p = (1:0:0:0).

    Built through the bilinear parametrization S1 = L0 Q1 + L1 Q2,
    S2 = L2 Q1 + L3 Q2, Q = L0 L3 - L1 L2 with every L_i vanishing at p (so
    Q is a cone with vertex p) and the two auxiliary cones Q1, Q2 tangent
    at p (parallel gradients); the common tangent direction is the fixed
    plane of the binode."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E8")
    z0, z1, z2, z3 = R.vars()
    p = (F.one, F.zero, F.zero, F.zero)
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    for attempt in range(12):
        rng = rng0.split(f"try-{attempt}")

        def lin_e0(sub):
            while True:
                d = {}
                for i in (1, 2, 3):
                    c = F.rand(sub)
                    if c != F.zero:
                        d[R.pack(tuple(1 if j == i else 0 for j in range(4)))] = c
                if d:
                    return R.poly(d)

        def quad12(sub):
            d = {}
            for e in ((0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)):
                c = F.rand(sub)
                if c != F.zero:
                    d[R.pack(e)] = c
            return R.poly(d) if d else quad12(sub)

        Ls = [lin_e0(rng.split(f"L{i}")) for i in range(4)]
        m = R.poly({R.pack((0, 1, 0, 0)): F.rand_nonzero(rng.split("m1")),
                    R.pack((0, 0, 1, 0)): F.rand(rng.split("m2"))})
        gamma = F.rand_nonzero(rng.split("g"))
        Q1 = z0 * m + quad12(rng.split("c1"))
        Q2 = z0 * m.scale(gamma) + quad12(rng.split("c2"))
        Q = Ls[0] * Ls[3] - Ls[1] * Ls[2]
        if _rank4_of(Q) != 3:
            continue
        S1 = Ls[0] * Q1 + Ls[1] * Q2
        S2 = Ls[2] * Q1 + Ls[3] * Q2
        span = [Q * z1, Q * z2, Q * z3, S1, S2]
        rows = _span_constraints(F, [_vec(g, mons, idx) for g in span], len(mons))
        rows.append(_eval_row(R, mons, _rand_point(R, rng.split("p1"))))
        try:
            comps = _solve_system(R, rows)
            psi = new_map(*comps, label="E8", seed=seed)
        except (DegenerateInput, MapError):
            continue
        if classify_point(psi, p, rng.split("verify")).tag != "Binode":
            continue
        return psi
    raise DegenerateInput(f"E8 sampling failed for seed {seed}")


def _cone_direction(R: Ring, Q, rng: Rng):
    """Rational direction (d0,d1,d2) on the cone Q (z3-free quadric)."""
    F = R.field
    from . import univar

    for k in range(20):
        sub = rng.split(f"draw-{k}")
        x = [F.rand(sub), F.rand(sub), F.rand(sub), F.zero]
        y = [F.rand(sub), F.rand(sub), F.rand(sub), F.zero]
        coeffs = [F.zero] * 3
        for m, cf in Q.terms:
            acc = {0: F.one}
            for i in range(4):
                for _e in range(R.mexp(m, i)):
                    nxt = {}
                    for k, cc in acc.items():
                        if x[i] != F.zero:
                            nxt[k] = F.add(nxt.get(k, F.zero), F.mul(cc, x[i]))
                        if y[i] != F.zero:
                            nxt[k + 1] = F.add(nxt.get(k + 1, F.zero), F.mul(cc, y[i]))
                    acc = nxt
            for k, cc in acc.items():
                coeffs[k] = F.add(coeffs[k], F.mul(cf, cc))
        if all(c == F.zero for c in coeffs):
            continue
        roots = univar.roots_gf(coeffs, F, sub) if isinstance(F, GF) else \
            univar.roots_qq(coeffs, F)
        for t in roots:
            d = tuple(F.add(x[i], F.mul(F.of(t) if not isinstance(t, tuple) else t, y[i]))
                      for i in range(3))
            if any(c != F.zero for c in d):
                return d
    return None


def _forms_through(R: Ring, pts):
    F = R.field
    null = linalg.nullspace(F, [list(p) for p in pts], 4)
    if len(null) != 2:
        return None
    return [R.poly({R.pack(tuple(1 if k == j else 0 for k in range(4))): c
                    for j, c in enumerate(v) if c != F.zero}) for v in null]


def _linear_vanishing_at(R: Ring, d, rng: Rng) -> Polynomial:
    """Random z3-free linear form vanishing on the direction d."""
    F = R.field
    null = linalg.nullspace(F, [[d[0], d[1], d[2]]], 3)
    while True:
        coeffs = [F.zero] * 3
        for v in null:
            c = F.rand(rng)
            coeffs = [F.add(a, F.mul(c, b)) for a, b in zip(coeffs, v)]
        if any(c != F.zero for c in coeffs):
            return R.poly({R.pack(tuple(1 if k == j else 0 for k in range(4))): c
                           for j, c in enumerate(coeffs) if c != F.zero})


def _cubic_vanishing_at(R: Ring, d, rng: Rng) -> Polynomial:
    """Random z3-free cubic vanishing at the direction point."""
    F = R.field
    mons = [m for m in R.monomials_of_degree(3) if R.mexp(m, 3) == 0]
    pt = (d[0], d[1], d[2], F.zero)
    while True:
        dd = {m: F.rand(rng) for m in mons}
        f = R.poly(dd)
        if not f:
            continue
        v = f.evaluate(list(pt))
        # correct the z2^3 (or first) coefficient to force vanishing
        for m in mons:
            mv = _monomial_value(R, m, pt)
            if mv != F.zero:
                cur = dd.get(m, F.zero)
                dd[m] = F.sub(cur, F.div(v, mv))
                f2 = R.poly(dd)
                if f2:
                    return f2
                break
        else:
            return f


def _monomial_value(R: Ring, m, p):
    F = R.field
    v = F.one
    for i in range(4):
        for _ in range(R.mexp(m, i)):
            v = F.mul(v, p[i])
    return v


def _pick_steered_member(R: Ring, span, smons, hbar, known, rng: Rng):
    """Element of the span, singular at p, quadratic part in hbar*(linear),
    independent of the known members."""
    F = R.field
    idx = {m: i for i, m in enumerate(smons)}
    n = len(smons)
    # conditions on a cubic f: coeff z3^3 = 0; coeff z3^2 z_i = 0; quad part
    # restricted to hbar = 0 plane vanishes
    hvec = [F.zero] * 3
    for m, c in hbar.terms:
        for i in range(3):
            if R.mexp(m, i):
                hvec[i] = c
    basisH = linalg.nullspace(F, [hvec], 3)
    conds = []
    row = [F.zero] * n
    m33 = R.pack((0, 0, 0, 3))
    if m33 in idx:
        row[idx[m33]] = F.one
    conds.append(row)
    for i in range(3):
        row = [F.zero] * n
        mm = R.pack(tuple((2 if k == 3 else 0) + (1 if k == i else 0) for k in range(4)))
        if mm in idx:
            row[idx[mm]] = F.one
        conds.append(row)
    # quadratic part: coeff of z3 * (quadratic in z0..z2) as a form on the
    # plane hbar = 0 spanned by basisH: 3 coefficient conditions
    from .hudson import QUAD_MONS3

    for (s_, t_) in ((0, 0), (0, 1), (1, 1)):
        row = [F.zero] * n
        for qi, qe in enumerate(QUAD_MONS3):
            mm = R.pack((qe[0], qe[1], qe[2], 1))
            if mm not in idx:
                continue
            v1, v2 = basisH[s_], basisH[t_]
            val = _sym_eval(F, qe, v1, v2)
            row[idx[mm]] = F.add(row[idx[mm]], val)
        conds.append(row)
    # restrict conditions to the span
    mat = [[F.zero] * len(span) for _ in range(len(conds))]
    for j, vec in enumerate(span):
        for r, cond in enumerate(conds):
            s = F.zero
            for k in range(n):
                if cond[k] != F.zero and vec[k] != F.zero:
                    s = F.add(s, F.mul(cond[k], vec[k]))
            mat[r][j] = s
    null = linalg.nullspace(F, mat, len(span))
    if not null:
        return None
    knownvecs = []
    for f in known:
        knownvecs.append(_vec(f, smons, idx))
    kbasis = linalg.row_space_basis(F, knownvecs)
    for coords in null:
        vec = [F.zero] * n
        for c, sv in zip(coords, span):
            if c != F.zero:
                vec = [F.add(a, F.mul(c, b)) for a, b in zip(vec, sv)]
        if linalg.rank(F, kbasis + [vec]) > len(kbasis):
            return vectors_to_polys([vec], smons, R)[0]
    return None


def _sym_eval(F, qe, v1, v2):
    """Value of the symmetric bilinear form of the quadratic monomial qe on
    (v1, v2): B(v1,v2) with q(v) = B(v,v)."""
    i_s = [k for k in range(3) for _ in range(qe[k])]
    i, j = i_s[0], i_s[1]
    if i == j:
        return F.mul(v1[i], v2[i])
    two_inv = F.inv(F.of(2))
    s = F.add(F.mul(v1[i], v2[j]), F.mul(v1[j], v2[i]))
    return F.mul(s, two_inv)


# -------------------------------------------------------------- (3,5) maps


def cuboquintic(variant: str, seed, field: Field) -> RationalMap:
    builders = {"E12": _build_e12, "E13": _build_e13, "E14": _build_e14,
                "E19": _build_e19, "E23": _build_e23, "E24": _build_e24}
    if variant not in builders:
        raise MapError(f"unknown cubo-quintic variant {variant}")
    return builders[variant](seed, field)


def _twisted_cubic(R: Ring, M=None) -> IdealHandle:
    z0, z1, z2, z3 = R.vars()
    gens = [z0 * z2 - z1 * z1, z1 * z3 - z2 * z2, z0 * z3 - z1 * z2]
    if M is not None:
        gens = [g.substitute_linear(M, check_invertible=False) for g in gens]
    return IdealHandle(gens, R, saturated=True)


def _assemble(R: Ring, span_polys, point_conds, expect_dim=4, label="", seed=None):
    F = R.field
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    rows = _span_constraints(F, [_vec(g, mons, idx) for g in span_polys], len(mons))
    for p in point_conds:
        rows.append(_eval_row(R, mons, p))
    comps = _solve_system(R, rows, expect_dim)
    return new_map(*comps, label=label, seed=seed)


def _build_e12(seed, field: Field) -> RationalMap:
    """C2 = twisted cubic plus a disjoint line; two ordinary base points."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E12")
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        M = linalg.random_invertible(F, 4, rng.split("M"))
        Gamma = _twisted_cubic(R, M)
        a, b = _rand_point(R, rng.split("la")), _rand_point(R, rng.split("lb"))
        forms = _forms_through(R, [a, b])
        if forms is None:
            continue
        ell = IdealHandle(forms, R, saturated=True)
        meet = sat_irrelevant(IdealHandle(list(Gamma.gens) + list(ell.gens), R))
        if not meet.is_unit():
            continue
        mons = _mons3(R)
        idx = {m: i for i, m in enumerate(mons)}
        span_g, _ = piece_span(Gamma, 3)
        span_l, _ = piece_span(ell, 3)
        rows = _span_constraints(F, span_g, len(mons)) + _span_constraints(F, span_l, len(mons))
        rows.append(_eval_row(R, mons, _rand_point(R, rng.split("p1"))))
        rows.append(_eval_row(R, mons, _rand_point(R, rng.split("p2"))))
        try:
            comps = _solve_system(R, rows)
            return new_map(*comps, label="E12", seed=seed)
        except (DegenerateInput, MapError):
            continue
    raise DegenerateInput(f"E12 sampling failed for seed {seed}")


def _build_e13(seed, field: Field) -> RationalMap:
    """C2 a (2,2) complete intersection through p; system I_C2 * I_p plus
    two ordinary points."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E13")
    p = _origin(R)
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        Q1 = _rand_form(R, 2, rng.split("Q1"), z3free=False)
        Q2 = _rand_form(R, 2, rng.split("Q2"), z3free=False)
        # force through p: drop the z3^2 coefficient
        Q1 = Q1 - R.poly({R.pack((0, 0, 0, 2)): Q1.coeff_of((0, 0, 0, 2))})
        Q2 = Q2 - R.poly({R.pack((0, 0, 0, 2)): Q2.coeff_of((0, 0, 0, 2))})
        if not Q1 or not Q2:
            continue
        span = [R.var(i) * Qj for i in range(3) for Qj in (Q1, Q2)]
        try:
            psi = _assemble(R, span, [_rand_point(R, rng.split("p1")),
                                      _rand_point(R, rng.split("p2"))],
                            label="E13", seed=seed)
        except (DegenerateInput, MapError):
            continue
        return psi
    raise DegenerateInput(f"E13 sampling failed for seed {seed}")


def _build_e14(seed, field: Field) -> RationalMap:
    """C2 = twisted cubic and a line meeting at p; system I_Gamma * I_ell."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E14")
    p = _origin(R)
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        Gamma = _twisted_cubic(R)  # contains (0:0:0:1)
        x = _rand_point(R, rng.split("x"))
        forms = _forms_through(R, [p, x])
        if forms is None:
            continue
        meet = sat_irrelevant(IdealHandle(list(Gamma.gens) + forms, R))
        hm = hilbert_from_basis(meet.groebner(), R)
        if hm.dimension != 0 or hm.degree != 1:
            continue  # the line must meet the cubic only at p
        qspan, _ = piece_span(Gamma, 2)
        qpolys = vectors_to_polys(qspan, R.monomials_of_degree(2), R)
        span = [q * l for q in qpolys for l in forms]
        try:
            psi = _assemble(R, span, [_rand_point(R, rng.split("p1")),
                                      _rand_point(R, rng.split("p2"))],
                            label="E14", seed=seed)
        except (DegenerateInput, MapError):
            continue
        return psi
    raise DegenerateInput(f"E14 sampling failed for seed {seed}")


def _build_e19(seed, field: Field) -> RationalMap:
    """C2 = twisted cubic with the secant line through its two marked
    points; all cubics singular at both."""
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E19")
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        Gamma = _twisted_cubic(R)  # contains e0 and e3
        z1, z2 = R.var(1), R.var(2)
        qspan, _ = piece_span(Gamma, 2)
        qpolys = vectors_to_polys(qspan, R.monomials_of_degree(2), R)
        span = [q * l for q in qpolys for l in (z1, z2)]
        try:
            psi = _assemble(R, span, [_rand_point(R, rng.split("p1")),
                                      _rand_point(R, rng.split("p2"))],
                            label="E19", seed=seed)
        except (DegenerateInput, MapError):
            continue
        return psi
    raise DegenerateInput(f"E19 sampling failed for seed {seed}")


def _e23_quartic(R: Ring, a, b, c):
    """(Q, S0, S1, S2): the rational quartic on the standard smooth quadric."""
    z0, z1, z2, z3 = R.vars()
    Q = z0 * z3 - z1 * z2
    S0 = a * (z0 * z2) + b * (z0 * z3) + c * (z1 * z3)
    S1 = a * (z0 * z0) + b * (z0 * z1) + c * (z1 * z1)
    S2 = a * (z2 * z2) + b * (z2 * z3) + c * (z3 * z3)
    return Q, S0, S1, S2


def _contact_point_rows(R: Ring, rng: Rng):
    """A random contact structure: point q, plane H_q through q; returns the
    three linear conditions on cubics and (q, H-points)."""
    F = R.field
    q = _rand_point(R, rng.split("q"))
    # two more points spanning a random plane through q
    while True:
        x = _rand_point(R, rng.split("hx"))
        y = _rand_point(R, rng.split("hy"))
        if linalg.rank(F, [list(q), list(x), list(y)]) == 3:
            break
    mons = _mons3(R)
    return _contact_rows(R, mons, q, [x, y]), q


def _build_e23(seed, field: Field) -> RationalMap:
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E23")
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        a = _rand_linear(R, rng.split("a"))
        b = _rand_linear(R, rng.split("b"))
        c = _rand_linear(R, rng.split("c"))
        Q, S0, S1, S2 = _e23_quartic(R, a, b, c)
        span = [R.var(i) * Q for i in range(4)] + [S0, S1, S2]
        rows = _span_constraints(F, [_vec(g, mons, idx) for g in span], len(mons))
        crow, q = _contact_point_rows(R, rng.split("ct"))
        rows.extend(crow)
        try:
            comps = _solve_system(R, rows)
            psi = new_map(*comps, label="E23", seed=seed)
        except (DegenerateInput, MapError):
            continue
        if classify_point(psi, q, rng.split("verify")).tag != "ContactPoint":
            continue
        return psi
    raise DegenerateInput(f"E23 sampling failed for seed {seed}")


def _build_e24(seed, field: Field) -> RationalMap:
    R = ring(field, 4)
    F = field
    rng0 = Rng(seed, "E24")
    z0, z1, z2, z3 = ring(field, 4).vars()
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    p = _origin(R)
    for attempt in range(10):
        rng = rng0.split(f"try-{attempt}")
        a = _rand_linear(R, rng.split("a"))
        b = _rand_linear(R, rng.split("b"))
        c = _rand_linear(R, rng.split("c"))
        Q0 = z1 * z2 - z0 * z0
        Qp = a * z2 + b * z0 + c * z1
        span = [Q0 * v for v in (z0, z1, z2, z3)] + [Qp * z0, Qp * z1, Qp * z2]
        rows = _span_constraints(F, [_vec(g, mons, idx) for g in span], len(mons))
        crow, q = _contact_point_rows(R, rng.split("ct"))
        rows.extend(crow)
        try:
            comps = _solve_system(R, rows)
            psi = new_map(*comps, label="E24", seed=seed)
        except (DegenerateInput, MapError):
            continue
        if classify_point(psi, p, rng.split("va")).tag != "DoublePoint":
            continue
        if classify_point(psi, q, rng.split("vb")).tag != "ContactPoint":
            continue
        return psi
    raise DegenerateInput(f"E24 sampling failed for seed {seed}")


# ------------------------------------------------------------ golden maps


def special_examples(field: Field = QQ) -> dict:
    """Pinned-coefficient maps used as golden regression objects."""
    R = ring(field, 4)
    pp = lambda s: parse_poly(s, R)
    out = {}
    out["ruled-involution"] = map_of_degree(
        [pp("z0*z1^2"), pp("z0^2*z1"), pp("z0^2*z2"), pp("z1^2*z3")], 3,
        label="ruled-involution")
    out["dJ-ruled"] = map_of_degree(
        [pp("z0^3"), pp("z0^2*z1"), pp("z0^2*z2"), pp("z1^2*z3")], 3, label="dJ-ruled")
    out["cube"] = map_of_degree(
        [pp("z0^3"), pp("z1^3"), pp("z2^3"), pp("z3^3")], 3, label="cube")
    out["segre-squares"] = map_of_degree(
        [pp("z0^2*z2"), pp("z0^2*z3"), pp("z1^2*z2"), pp("z1^2*z3")], 3,
        label="segre-squares")
    out["dJ-smooth-S"] = map_of_degree(
        [pp("z0*z1^2 + z0^2*z3"), pp("z1^3 + z0*z1*z3"), pp("z1^2*z2 + z0*z2*z3"),
         pp("z0^3 + z1^3 + z2^3 + z3^3")], 3, label="dJ-smooth-S")
    return out


def pro_inter(eps, field: Field, p2=None) -> RationalMap:
    """The bidegree-jump family: eps != 0 gives a (3,4) map, eps = 0 a
    ruled (3,3) one."""
    R = ring(field, 4)
    F = field
    eps = F.of(eps)
    pp = lambda s: parse_poly(s, R)
    z0z1 = pp("z0*z1")
    span = [z0z1 * R.var(0), z0z1 * R.var(1), z0z1 * R.var(2),
            pp("z0^2*z2") + pp("z0*z2^2").scale(eps), pp("z1^2*z3")]
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    rows = _span_constraints(F, [_vec(g, mons, idx) for g in span], len(mons))
    if p2 is None:
        p2 = (F.of(1), F.of(2), F.of(3), F.of(5))
    rows.append(_eval_row(R, mons, p2))
    comps = _solve_system(R, rows)
    return new_map(*comps, label=f"pro-inter({eps})")


def a1_example(field: Field = QQ) -> tuple:
    """The explicit double-point-of-contact example on a smooth quadric:
    returns (psi, p, I_C2)."""
    R = ring(field, 4)
    F = field
    pp = lambda s: parse_poly(s, R)
    c2_parts = [
        IdealHandle([pp("z2^2"), pp("z0*z2"), pp("z0^2"), pp("z0*z3-z1*z2")], R),
        IdealHandle([pp("z1"), pp("z2")], R),
        IdealHandle([pp("z0-z2"), pp("z1-z2")], R),
    ]
    IC2 = intersect(intersect(c2_parts[0], c2_parts[1]), c2_parts[2])
    dpc = IdealHandle([pp("z2^2*z3 - z0*z1*z3")] +
                      [vectors_to_polys([v], R.monomials_of_degree(3), R)[0]
                       for v in _cube_ip3_span(R)], R)
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    span_c2, _ = piece_span(IC2, 3)
    span_dpc, _ = piece_span(dpc, 3)
    rows = _span_constraints(F, span_c2, len(mons)) + _span_constraints(F, span_dpc, len(mons))
    rows.append(_eval_row(R, mons, (F.of(1), F.of(2), F.of(5), F.of(3))))
    rows.append(_eval_row(R, mons, (F.of(3), F.of(1), F.of(4), F.of(7))))
    comps = _solve_system(R, rows)
    psi = new_map(*comps, label="a1-example")
    return psi, _origin(R), IC2


def _cube_ip3_span(R: Ring):
    F = R.field
    mons = R.monomials_of_degree(3)
    out = []
    for i, m in enumerate(mons):
        if R.mexp(m, 3) == 0:
            v = [F.zero] * len(mons)
            v[i] = F.one
            out.append(v)
    return out


def a2_example(field: Field = QQ) -> tuple:
    """The explicit example with a plane cubic plus a line through its
    singular point: returns (psi, p, I_C2, J) where J = I_C2 meet I_dpc."""
    R = ring(field, 4)
    F = field
    pp = lambda s: parse_poly(s, R)
    IC3 = IdealHandle([pp("z1-z0"), pp("z1^2*z3 - z1*z2*z3 + z0^3 + z1^3 + z2^3")], R)
    Iell = IdealHandle([pp("z1"), pp("z2")], R)
    IC2 = intersect(IC3, Iell)
    dpc = IdealHandle([pp("z1^2 - z0*z2")] +
                      [vectors_to_polys([v], R.monomials_of_degree(3), R)[0]
                       for v in _cube_ip3_span(R)], R)
    J = intersect(IC2, dpc)
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    span_j, _ = piece_span(J, 3)
    rows = _span_constraints(F, span_j, len(mons))
    rows.append(_eval_row(R, mons, (F.of(1), F.of(2), F.of(5), F.of(3))))
    rows.append(_eval_row(R, mons, (F.of(3), F.of(1), F.of(4), F.of(7))))
    comps = _solve_system(R, rows)
    psi = new_map(*comps, label="a2-example")
    return psi, _origin(R), IC2, J


# ------------------------------------------------------------ deformations


DET_TO_DJ_MATRIX = (
    (None, None, None),
    ("-z1", "-z2", None),
    ("z0", None, "-z2"),
    (None, "z0", "z1"),
)


def det_to_dJ_map(t, seed, field: Field) -> RationalMap:
    """Divided minors det(A_i + t B_i)/t of the pinned degenerate matrix A
    completed by a random linear matrix B; t = 0 is the de Jonquieres limit."""
    R5 = ring(field, 5, ("z0", "z1", "z2", "z3", "t@"))
    R = ring(field, 4)
    F = field
    rng = Rng(seed, "det_to_dJ")
    A = [[parse_poly(e, R5) if e else R5.zero for e in row] for row in DET_TO_DJ_MATRIX]
    B = [[_rand_linear(R, rng.split(f"b{i}{j}")).map_vars(R5, [0, 1, 2, 3])
          for j in range(3)] for i in range(4)]
    tv = R5.var(4)
    M = [[A[i][j] + tv * B[i][j] for j in range(3)] for i in range(4)]
    comps = []
    for i in range(4):
        sub = [M[j] for j in range(4) if j != i]
        d = _det3(sub)
        if i % 2 == 1:
            d = d.scale(F.of(-1))
        # every term carries t at least once; divide and substitute t = value
        dd: dict = {}
        tval = F.of(t)
        for m, cf in d.terms:
            e = R5.mexp(m, 4)
            if e == 0:
                raise DegenerateInput("pinned matrix lost its divisibility by t")
            rest = R.pack(tuple(R5.mexp(m, k) for k in range(4)))
            scale = cf
            for _ in range(e - 1):
                scale = F.mul(scale, tval)
            dd[rest] = F.add(dd.get(rest, F.zero), scale)
        comps.append(R.poly(dd))
    return new_map(*comps, label=f"det_to_dJ(t={t})", seed=seed)


def e6_to_e7_map(t, seed, field: Field) -> RationalMap:
    return _build_e6(seed, field, t=field.of(t))


def ruled_jump_map(eps, seed, field: Field) -> RationalMap:
    rng = Rng(seed, "ruled_jump")
    p2 = _rand_point(ring(field, 4), rng.split("p2"))
    return pro_inter(eps, field, p2=p2)


def e24_to_e23_map(t, seed, field: Field) -> RationalMap:
    """J_t meet ct_q with J_t the coordinate-degenerated quartic pencil."""
    R = ring(field, 4)
    F = field
    rng = Rng(seed, "E24_to_E23")
    z0, z1, z2, z3 = R.vars()
    a = _rand_linear(R, rng.split("a"))
    b = _rand_linear(R, rng.split("b"))
    c = _rand_linear(R, rng.split("c"))
    tv = F.of(t)
    Z0, Z1, Z2, Z3 = z0 + z3.scale(tv), z1, z2, z0 - z3.scale(tv)
    Qt = Z1 * Z2 - Z0 * Z3
    S0 = a * (Z0 * Z2) + b * (Z0 * Z3) + c * (Z1 * Z3)
    S1 = a * (Z0 * Z0) + b * (Z0 * Z1) + c * (Z1 * Z1)
    S2 = a * (Z2 * Z2) + b * (Z2 * Z3) + c * (Z3 * Z3)
    mons = _mons3(R)
    idx = {m: i for i, m in enumerate(mons)}
    span = [Qt * v for v in (z0, z1, z2, z3)] + [S0, S1, S2]
    rows = _span_constraints(F, [_vec(g, mons, idx) for g in span], len(mons))
    # fixed contact structure along the path
    crows, q = _contact_point_rows(R, rng.split("ct"))
    rows.extend(crows)
    comps = _solve_system(R, rows)
    return new_map(*comps, label=f"E24_to_E23(t={t})", seed=seed)


PATH_BUILDERS = {
    "det_to_dJ": det_to_dJ_map,
    "E6_to_E7": e6_to_e7_map,
    "ruled_jump": ruled_jump_map,
    "E24_to_E23": e24_to_e23_map,
}


def deform(path: str, samples, seed, field: Field):
    """[(parameter, RationalMap)] along a named degeneration path."""
    if path not in PATH_BUILDERS:
        raise MapError(f"unknown deformation path {path!r}")
    build = PATH_BUILDERS[path]
    return [(t, build(t, seed, field)) for t in samples]


# --------------------------------------------------------------- dispatch


def build(label: str, seed, field: Field) -> tuple:
    """(map, FamilySpec) for any family label."""
    if label not in FAMILY_LABELS:
        raise MapError(f"unknown family {label!r}")
    if label.startswith("ruled_3_"):
        d = int(label[-1])
        psi = ruled(d, seed, field)
    elif label == "E2":
        psi = determinantal(seed, field)
    elif label in ("E3", "E3.5", "E4"):
        psi = dejonquieres(label, seed, field)
    elif label in ("E6", "E7", "E7.5", "E8", "E9"):
        psi = cuboquartic(label, seed, field)
    else:
        psi = cuboquintic(label, seed, field)
    return psi, family_spec(label, seed=seed, field=field)
