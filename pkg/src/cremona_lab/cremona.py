"""Analysis pipeline for degree-3 rational self-maps of P^3.

Given four cubics without common factor, this module computes the base
scheme, splits the preimage of a generic line into the part supported on
the base locus and its liaison residual, derives the bidegree and genus,
decides ruledness, runs the fiber-sampling birationality oracle and its
independent local-length certificate, and (best effort) extracts the
inverse map by linear algebra on the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .fields import GF, GF2
from .groebner import Budget, BudgetError, normal_form
from .ideals import (DegenerateInput, IdealHandle, extract_points,
                     hilbert_from_basis, ideal_sum, isolated_points,
                     piece_span, quotient, sat_irrelevant, saturate)
from .poly import Polynomial, Ring, ring
from .rng import Rng


class MapError(ValueError):
    pass


class RationalMap:
    """A rational self-map of P^3 given by 4 forms of a common degree."""

    __slots__ = ("ring", "components", "degree", "label", "seed")

    def __init__(self, components, degree: int, label: str | None = None,
                 seed=None, _validated: bool = False):
        components = list(components)
        if len(components) != 4:
            raise MapError("a self-map of P^3 needs 4 components")
        R = components[0].ring
        if R.nvars != 4:
            raise MapError("components must live in a 4-variable ring")
        for f in components:
            if f.ring != R:
                raise MapError("components in different rings")
            if f and f.degree != degree:
                raise MapError(f"component of degree {f.degree}, expected {degree}")
        if all(not f for f in components):
            raise MapError("zero map")
        self.ring = R
        self.components = tuple(components)
        self.degree = degree
        self.label = label
        self.seed = seed

    def __repr__(self):
        return f"RationalMap<{self.label or 'deg %d' % self.degree}>({', '.join(map(str, self.components))})"

    def ideal(self) -> IdealHandle:
        return IdealHandle([f for f in self.components if f], self.ring)

    def apply(self, point):
        """Image of a point, or None if the point is in the base locus."""
        F = self.ring.field
        img = [f.evaluate(point) if f else F.zero for f in self.components]
        if all(v == F.zero for v in img):
            return None
        return tuple(img)

    def member(self, coeffs) -> Polynomial:
        F = self.ring.field
        acc = self.ring.zero
        for c, f in zip(coeffs, self.components):
            if c != F.zero:
                acc = acc + f.scale(c)
        return acc

    def random_member(self, rng: Rng) -> Polynomial:
        while True:
            g = self.member([self.ring.field.rand(rng) for _ in range(4)])
            if g:
                return g

    def conjugate(self, A=None, B=None) -> "RationalMap":
        """(A, B) -> A o psi o B: left action mixes components, right action
        substitutes coordinates."""
        F = self.ring.field
        comps = list(self.components)
        if B is not None:
            comps = [f.substitute_linear(B) if f else f for f in comps]
        if A is not None:
            comps = [
                sum((comps[j].scale(A[i][j]) for j in range(4) if A[i][j] != F.zero),
                    self.ring.zero)
                for i in range(4)
            ]
        return RationalMap(comps, self.degree, label=self.label, seed=self.seed)

    def reduce_mod(self, p: int) -> "RationalMap":
        """Q -> GF(p) reduction (raises FieldError on bad denominators)."""
        R2 = ring(GF(p), 4, self.ring.names)
        return RationalMap([f.map_field(R2) for f in self.components], self.degree,
                           label=self.label, seed=self.seed)

    def components_independent(self) -> bool:
        span, _ = piece_span(IdealHandle(list(self.components), self.ring), self.degree)
        # span of component multiples includes more; check the raw 4 vectors
        R = self.ring
        F = R.field
        mons = R.monomials_of_degree(self.degree)
        idx = {m: i for i, m in enumerate(mons)}
        rows = []
        for f in self.components:
            row = [F.zero] * len(mons)
            for m, c in f.terms:
                row[idx[m]] = c
            rows.append(row)
        return linalg.rank(F, rows) == 4


def new_map(f0, f1, f2, f3, label=None, seed=None) -> RationalMap:
    """Validated degree-3 map: 4 cubics with no common factor."""
    comps = [f0, f1, f2, f3]
    for f in comps:
        if not f or f.degree != 3:
            raise MapError("new_map requires four nonzero cubics")
    psi = RationalMap(comps, 3, label=label, seed=seed)
    if base_dimension(psi) > 1:
        raise MapError("components share a common factor (base locus has a surface)")
    return psi


def map_of_degree(components, degree, label=None) -> RationalMap:
    """Generic-degree variant (no common-factor check); used by tests and
    by inverse extraction."""
    return RationalMap(components, degree, label=label)


def base_dimension(psi: RationalMap) -> int:
    J = sat_irrelevant(psi.ideal())
    return hilbert_from_basis(J.groebner(), psi.ring).dimension


# ------------------------------------------------------------------ data


@dataclass
class CurveRecord:
    """A saturated curve (or empty) with its Hilbert invariants."""

    ideal: IdealHandle
    degree: int
    p_a: int
    sing: list | None = None  # [(point, multiplicity)]; None = not computed

    @classmethod
    def from_ideal(cls, I: IdealHandle) -> "CurveRecord":
        h = hilbert_from_basis(I.groebner(), I.ring)
        if h.dimension == -1:
            return cls(I, 0, 1)  # empty curve: HP = 0, p_a = 1 - HP(0)
        if h.dimension != 1:
            raise DegenerateInput(f"expected a curve, got dimension {h.dimension}")
        return cls(I, h.degree, h.p_a)


@dataclass
class MapAnalysis:
    psi: RationalMap
    seed: object
    base_ideal: IdealHandle = None
    base_dim: int = None
    deg1part: int = 0
    theta_ideal: IdealHandle = None
    theta_count: int = 0
    gamma: IdealHandle = None
    c1: CurveRecord = None
    c2: CurveRecord = None
    genus: int = None
    ruled: bool = None
    ruled_witness: tuple = None
    birational: str = None  # yes / no / inconclusive
    fiber_degree: int = None
    certificate: int = None
    notes: list = field(default_factory=list)

    @property
    def bidegree(self):
        if self.c1 is None:
            return None
        return (self.psi.degree, self.c1.degree)


# ------------------------------------------------------------- base locus


def base_locus(psi: RationalMap, rng: Rng | None = None, c2: IdealHandle | None = None,
               budget: Budget | None = None):
    """(saturated base ideal, degree of its 1-dim part, count of isolated points)."""
    rng = rng or Rng(psi.seed or 0, "base")
    J = sat_irrelevant(psi.ideal(), budget)
    h = hilbert_from_basis(J.groebner(), psi.ring)
    deg1 = h.degree if h.dimension == 1 else 0
    if h.dimension <= 0:
        theta, count = isolated_points(J, None, rng.split("theta"), budget)
        return J, 0, count
    if c2 is None:
        _, _, c2rec = line_preimage_split(psi, rng.split("split"), J, budget)
        c2 = c2rec.ideal
    _, count = isolated_points(J, c2, rng.split("theta"), budget)
    return J, deg1, count


# ------------------------------------------------------- liaison splitting


def line_preimage_split(psi: RationalMap, rng: Rng, J: IdealHandle | None = None,
                        budget: Budget | None = None, retries: int = 5):
    """Preimage of a generic line and its liaison split.

    Returns (Gamma, C1, C2) where Gamma is the complete intersection of two
    generic members, C1 = sat(Gamma, base) is the strict transform of the
    line and C2 = (Gamma : C1) the residual supported on the base locus.
    Redraws the line if the two curves share a component.
    """
    R = psi.ring
    F = R.field
    Ipsi = psi.ideal()
    last_err = None
    for attempt in range(retries):
        sub = rng.split(f"line-{attempt}")
        rows = [[F.rand(sub) for _ in range(4)] for _ in range(2)]
        if linalg.rank(F, [r[:] for r in rows]) < 2:
            continue
        g1, g2 = psi.member(rows[0]), psi.member(rows[1])
        if not g1 or not g2:
            continue
        Gamma = IdealHandle([g1, g2], R, saturated=True)
        h = hilbert_from_basis(Gamma.groebner(), R)
        if h.dimension != 1 or h.degree != psi.degree ** 2:
            last_err = f"degenerate line preimage (dim {h.dimension}, deg {h.degree})"
            continue
        C1i = saturate(Gamma, Ipsi, budget)
        if C1i.is_unit():
            last_err = "line preimage entirely inside the base locus"
            continue
        C1i = IdealHandle(list(C1i.gens), R, saturated=True)
        C2i = quotient(Gamma, C1i, budget)
        C2i = IdealHandle(list(C2i.gens), R, saturated=True)
        # shared component <=> C1 + C2 still 1-dimensional
        both = sat_irrelevant(ideal_sum(C1i, C2i), budget)
        hb = hilbert_from_basis(both.groebner(), R)
        if hb.dimension >= 1:
            last_err = "C1 and C2 share a component"
            continue
        c1 = CurveRecord.from_ideal(C1i)
        c2 = CurveRecord.from_ideal(C2i)
        if c1.degree + c2.degree != psi.degree ** 2:
            raise DegenerateInput(
                f"liaison degree identity failed: {c1.degree} + {c2.degree} != {psi.degree ** 2}")
        # linkage in a (d, d) complete intersection: the genus difference is
        # (d - 2) times the degree difference (factor 1 for cubic maps)
        if c2.p_a - c1.p_a != (psi.degree - 2) * (c2.degree - c1.degree):
            raise DegenerateInput(
                f"liaison genus identity failed: deg {c2.degree}-{c1.degree}, "
                f"p_a {c2.p_a}-{c1.p_a}")
        return Gamma, c1, c2
    raise DegenerateInput(last_err or "no valid generic line found")


def bidegree(psi: RationalMap, rng: Rng | None = None, budget: Budget | None = None):
    """(deg psi, deg C1); the identity deg C1 + deg C2 = (deg psi)^2 is
    asserted inside the split."""
    rng = rng or Rng(psi.seed or 0, "bidegree")
    _, c1, _ = line_preimage_split(psi, rng, budget=budget)
    return (psi.degree, c1.degree)


# ------------------------------------------------------------ birationality


def is_birational(psi: RationalMap, rng: Rng, trials: int = 5,
                  budget: Budget | None = None):
    """Fiber-sampling oracle over GF(p).

    Returns (verdict, fiber_degree) with verdict in {yes, no, inconclusive}:
    yes iff every sampled fiber is a single reduced point; a fiber of degree
    >= 2 (stable under one retry) is a no; positive-dimensional fibers are a
    no (non-dominant map); budget blowups give inconclusive.
    """
    F = psi.ring.field
    if not (isinstance(F, GF) and not isinstance(F, GF2)):
        raise MapError("fiber oracle needs a prime field; reduce mod p first")
    if not psi.components_independent():
        return "no", None
    for t in range(trials):
        sub = rng.split(f"fiber-{t}")
        try:
            d, dim = _fiber_degree(psi, sub, budget)
            if dim > 0 or d != 1:
                # one retry guards against an unlucky sample or bad prime
                d2, dim2 = _fiber_degree(psi, rng.split(f"fiber-retry-{t}"), budget)
                if dim2 > 0 or d2 != 1:
                    return "no", (d2 if dim2 == 0 else None)
        except BudgetError:
            return "inconclusive", None
    return "yes", 1


def _fiber_degree(psi: RationalMap, rng: Rng, budget):
    R = psi.ring
    F = R.field
    x = None
    for _ in range(50):
        cand = tuple(F.rand(rng) for _ in range(4))
        if all(c == F.zero for c in cand):
            continue
        y = psi.apply(cand)
        if y is not None:
            x = cand
            break
    if x is None:
        raise DegenerateInput("could not sample a point off the base locus")
    gens = []
    for i in range(4):
        for j in range(i + 1, 4):
            g = psi.components[i].scale(y[j]) - psi.components[j].scale(y[i])
            if g:
                gens.append(g)
    Fib = IdealHandle(gens, R)
    FibS = saturate(Fib, psi.ideal(), budget)
    FibS = sat_irrelevant(FibS, budget)
    h = hilbert_from_basis(FibS.groebner(), R)
    if h.dimension <= 0:
        return (h.degree if h.dimension == 0 else 0), 0
    return h.degree, h.dimension


def birationality_certificate(psi: RationalMap, analysis: "MapAnalysis", rng: Rng,
                              budget: Budget | None = None, retries: int = 5) -> int:
    """Number of preimage points of a generic target point that avoid the
    base locus: 3*deg C1 minus the local intersection lengths of a generic
    member with C1 at C1 meet C2 and at the isolated base points.  Equals 1
    exactly for birational maps.

    Computed scheme-theoretically: degree of (S meet C1) after stripping the
    points supported on C1 meet C2 and on Theta.
    """
    R = psi.ring
    F = R.field
    c1, c2 = analysis.c1, analysis.c2
    gamma = analysis.gamma
    for attempt in range(retries):
        sub = rng.split(f"cert-{attempt}")
        S = psi.random_member(sub)
        if gamma is not None and not normal_form(S, list(gamma.groebner())):
            continue  # S must be nonzero modulo the pencil cutting C1 u C2
        T = IdealHandle(list(c1.ideal.gens) + [S], R)
        T = sat_irrelevant(T, budget)
        hT = hilbert_from_basis(T.groebner(), R)
        if hT.dimension != 0:
            continue
        if hT.degree != psi.degree * c1.degree:
            continue
        rest = saturate(T, ideal_sum(c1.ideal, c2.ideal), budget) if c2.degree else T
        if analysis.theta_ideal is not None and not analysis.theta_ideal.is_unit():
            rest = saturate(rest, analysis.theta_ideal, budget)
        if rest.is_unit():
            return 0
        hr = hilbert_from_basis(rest.groebner(), R)
        return hr.degree if hr.dimension == 0 else 0
    raise DegenerateInput("no suitable member for the certificate")


# ------------------------------------------------------------------ genus


def genus_of_map(psi: RationalMap, rng: Rng, budget: Budget | None = None) -> int:
    """Geometric genus (0 or 1) of a generic plane section of a generic
    member: 1 iff the plane cubic is smooth.  Majority verdict over 3
    clean draws."""
    R = psi.ring
    F = R.field
    R3 = ring(F, 3, ("u0", "u1", "u2"))
    votes = []
    for attempt in range(12):
        sub = rng.split(f"genus-{attempt}")
        S = psi.random_member(sub)
        M = linalg.random_invertible(F, 4, sub.split("plane"))
        Sp = S.substitute_linear(M, check_invertible=False)
        cubic = _restrict_to_plane(Sp, R3)
        if not cubic or not cubic.is_homogeneous() or cubic.total_degree() != 3:
            continue
        jac = IdealHandle(cubic.partials(), R3)
        sat3 = sat_irrelevant(jac, budget)
        if sat3.is_unit():
            votes.append(1)
        else:
            h = hilbert_from_basis(sat3.groebner(), R3)
            if h.dimension == 0 and h.degree == 1:
                votes.append(0)  # a single node: rational cubic
            else:
                continue  # ambiguous section (cusp or reducible); redraw
        if votes.count(votes[-1]) >= 2:
            return votes[-1]
    raise DegenerateInput("plane sections stayed ambiguous; map likely degenerate")


def _restrict_to_plane(S: Polynomial, R3: Ring) -> Polynomial:
    """Coefficient-wise restriction z3 = 0 into a 3-variable ring."""
    R = S.ring
    F = R3.field
    d: dict = {}
    for m, c in S.terms:
        if R.mexp(m, 3) == 0:
            mm = R3.pack(tuple(R.mexp(m, i) for i in range(3)))
            d[mm] = F.add(d.get(mm, F.zero), c)
    return R3.poly(d)


# ---------------------------------------------------------------- ruledness


def common_singular_locus(psi: RationalMap, budget: Budget | None = None) -> IdealHandle:
    """Saturated ideal of the points where every member of the system is
    singular (all 16 partial derivatives vanish)."""
    gens = []
    for f in psi.components:
        gens.extend(g for g in f.partials() if g)
    return sat_irrelevant(IdealHandle(gens, psi.ring), budget)


def is_ruled(psi: RationalMap, rng: Rng, budget: Budget | None = None):
    """(ruled?, witness double line as a pair of linear forms or None).

    Ruled means the members share a whole line of singular points delta and
    the system lies in I_delta^2; cross-checked by the caller against
    genus = 0.
    """
    R = psi.ring
    F = R.field
    Sigma = common_singular_locus(psi, budget)
    if Sigma.is_unit():
        return False, None
    h = hilbert_from_basis(Sigma.groebner(), R)
    if h.dimension < 1:
        return False, None
    # find the line: intersect Sigma with two generic planes, try point pairs
    samples = []
    for k in range(2):
        sub = rng.split(f"ruled-plane-{k}")
        hp = R.poly({R.pack(tuple(1 if j == i else 0 for j in range(4))): F.rand(sub)
                     for i in range(4)})
        cut = sat_irrelevant(IdealHandle(list(Sigma.gens) + [hp], R), budget)
        if cut.is_unit():
            return False, None
        hc = hilbert_from_basis(cut.groebner(), R)
        if hc.dimension != 0:
            return False, None
        pts, ext, _ = extract_points(cut, sub.split("pts"), budget)
        samples.append(pts)
    for a in samples[0]:
        for b in samples[1]:
            if a == b:
                continue
            forms = _line_forms(R, a, b)
            if forms is None:
                continue
            l1, l2 = forms
            sq = IdealHandle([l1 * l1, l1 * l2, l2 * l2], R)
            if all(sq.contains(f) for f in psi.components):
                return True, (l1, l2)
    return False, None


def _line_forms(R: Ring, a, b):
    """Two independent linear forms vanishing on the line through a, b."""
    F = R.field
    null = linalg.nullspace(F, [list(a), list(b)], 4)
    if len(null) != 2:
        return None
    out = []
    for v in null:
        out.append(R.poly({R.pack(tuple(1 if j == i else 0 for j in range(4))): c
                           for i, c in enumerate(v) if c != F.zero}))
    return out[0], out[1]


# ----------------------------------------------------------------- inverse


class InverseUnavailable(RuntimeError):
    pass


def inverse(psi: RationalMap, dprime: int, rng: Rng | None = None) -> RationalMap:
    """Inverse map of a birational psi with known inverse degree.

    Solves, by plain linear algebra, for a 4-tuple g of degree-d' forms with
    g(psi(x)) parallel to x identically; the solution space must be a line.
    Raises InverseUnavailable when the system is too large for the field
    backend or the solution space has the wrong shape.
    """
    R = psi.ring
    F = R.field
    rng = rng or Rng(psi.seed or 0, "inverse")
    mons_d = R.monomials_of_degree(dprime)
    N = len(mons_d)
    # compositions psi^alpha for every degree-d' monomial alpha
    comp_cache: dict = {}

    def psi_power(i, e):
        key = (i, e)
        got = comp_cache.get(key)
        if got is None:
            got = R.one
            for _ in range(e):
                got = got * psi.components[i]
            comp_cache[key] = got
        return got

    comps = []
    for m in mons_d:
        f = R.one
        for i in range(4):
            e = R.mexp(m, i)
            if e:
                f = f * psi_power(i, e)
        comps.append(f)
    big_mons = R.monomials_of_degree(psi.degree * dprime + 1)
    bidx = {m: i for i, m in enumerate(big_mons)}
    Mrows = len(big_mons)
    xs = [R.pack(tuple(1 if j == i else 0 for j in range(4))) for i in range(4)]

    # unknowns: (k, alpha) for k in 0..3; identities: g_k * x_0 - g_0 * x_k
    ncols = 4 * N
    if isinstance(F, GF) and not isinstance(F, GF2) and F.p < (1 << 20):
        rows = _inverse_rows_numpy(R, comps, xs, bidx, N, Mrows, F.p)
        null = _nullspace_gfp_numpy(rows, ncols, F.p)
    else:
        raise InverseUnavailable(
            "inverse extraction needs a prime field with p < 2^20 (budget)")
    if len(null) != 1:
        raise InverseUnavailable(f"graph solution space has dimension {len(null)}")
    vec = null[0]
    comps_out = []
    for k in range(4):
        d = {}
        for a in range(N):
            c = int(vec[k * N + a]) % F.p
            if c:
                d[mons_d[a]] = c
        comps_out.append(R.poly(d))
    g = RationalMap(comps_out, dprime, label="inverse")
    # verify g o psi = id up to scalar on random points
    for t in range(5):
        sub = rng.split(f"verify-{t}")
        x = tuple(F.rand(sub) for _ in range(4))
        if all(c == F.zero for c in x):
            continue
        y = psi.apply(x)
        if y is None:
            continue
        z = g.apply(y)
        if z is None:
            raise InverseUnavailable("candidate inverse vanishes on the image")
        if not _parallel(F, z, x):
            raise InverseUnavailable("candidate inverse fails point verification")
    return g


def _parallel(F, a, b) -> bool:
    for i in range(4):
        for j in range(i + 1, 4):
            if F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i])) != F.zero:
                return False
    return True


def _inverse_rows_numpy(R, comps, xs, bidx, N, Mrows, p):
    import numpy as np

    # identities k = 1..3:   g_k(psi) * x_0 - g_0(psi) * x_k = 0
    rows = np.zeros((3 * Mrows, 4 * N), dtype=np.int64)
    for a, f in enumerate(comps):
        for m, c in f.terms:
            for k in (1, 2, 3):
                r0 = (k - 1) * Mrows
                rows[r0 + bidx[m + xs[0]], k * N + a] += c
                rows[r0 + bidx[m + xs[k]], 0 * N + a] -= c
    return rows % p


def _nullspace_gfp_numpy(rows, ncols, p):
    import numpy as np

    A = rows % p
    A = A[~np.all(A == 0, axis=1)]
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[fc] = 1
        for rr, pc in enumerate(pivots):
            v[pc] = (-A[rr, fc]) % p
        out.append(v)
    return out


# ------------------------------------------------------------ orchestration


def analyze_map(psi: RationalMap, seed=0, trials: int = 5, with_certificate: bool = True,
                budget: Budget | None = None) -> MapAnalysis:
    """Full invariant analysis over the map's own (prime) field."""
    rng = Rng(seed, f"analyze:{psi.label or ''}")
    an = MapAnalysis(psi=psi, seed=seed)
    an.gamma, an.c1, an.c2 = line_preimage_split(psi, rng.split("split"), budget=budget)
    J = sat_irrelevant(psi.ideal(), budget)
    an.base_ideal = J
    hJ = hilbert_from_basis(J.groebner(), psi.ring)
    an.base_dim = hJ.dimension
    an.deg1part = hJ.degree if hJ.dimension == 1 else 0
    an.theta_ideal, an.theta_count = isolated_points(
        J, an.c2.ideal if an.c2.degree else None, rng.split("theta"), budget)
    if psi.degree == 3:
        an.genus = genus_of_map(psi, rng.split("genus"), budget)
        an.ruled, an.ruled_witness = is_ruled(psi, rng.split("ruled"), budget)
        if an.ruled != (an.genus == 0):
            raise DegenerateInput(
                f"ruledness ({an.ruled}) and genus ({an.genus}) checks disagree")
    if trials:
        an.birational, an.fiber_degree = is_birational(psi, rng.split("bir"), trials, budget)
    if with_certificate:
        try:
            an.certificate = birationality_certificate(psi, an, rng.split("cert"), budget)
        except (DegenerateInput, BudgetError) as e:
            an.notes.append(f"certificate unavailable: {e}")
    return an
