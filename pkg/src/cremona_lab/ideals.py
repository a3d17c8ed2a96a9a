"""Ideal-theoretic toolbox on top of the Groebner engine.

IdealHandle caches a reduced Groebner basis per monomial order and the
Hilbert data derived from it.  The constructions used throughout:

* intersection   -- t * I + (1-t) * J in a scratch ring, eliminate t;
* quotient I:g   -- (I meet (g)) / g, and I:J by intersecting over gens;
* saturation I:g^oo -- Rabinowitsch trick (t*g - 1, eliminate t), with the
  cheaper divide-out-the-last-variable shortcut when g is a variable and I
  is homogeneous;
* saturation I:J^oo  -- intersection of the single-generator saturations
  (valid because saturation only sees the zero locus of J).

Saturated zero-dimensional schemes additionally get point counting (degree
of a squarefree generic eliminant) and point extraction over GF(p) and
GF(p^2).
"""

from __future__ import annotations

from math import comb

from . import linalg, univar
from .fields import GF, GF2, QQ, Field
from .groebner import Budget, groebner_basis, normal_form, exact_divide
from .poly import GREVLEX, ElimBlock, MonomialOrder, Polynomial, Ring, ring
from .rng import Rng


class DegenerateInput(RuntimeError):
    """A probabilistic routine hit persistent degeneracy (bad input or prime)."""


class IdealHandle:
    """A homogeneous ideal with cached Groebner bases and Hilbert data."""

    __slots__ = ("ring", "gens", "saturated", "_gb", "_hilbert")

    def __init__(self, gens, ring_: Ring | None = None, saturated: bool = False):
        gens = [g for g in gens if g]
        if ring_ is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ring_ = gens[0].ring
        for g in gens:
            if g.ring != ring_:
                raise ValueError("mixed rings in ideal")
        self.ring = ring_
        self.gens = tuple(gens)
        self.saturated = saturated
        self._gb: dict = {}
        self._hilbert = None

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def groebner(self, order: MonomialOrder = GREVLEX, budget: Budget | None = None,
                 strategy: str = "normal") -> tuple:
        got = self._gb.get(order)
        if got is None:
            got = tuple(groebner_basis(list(self.gens), order, budget, strategy))
            self._gb[order] = got
        return got

    def with_basis(self, order, basis) -> "IdealHandle":
        self._gb[order] = tuple(basis)
        return self

    def nf(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return normal_form(f, list(self.groebner(order)), order)

    def contains(self, f: Polynomial) -> bool:
        return not self.nf(f)

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].total_degree() == 0

    def is_zero(self) -> bool:
        return not self.groebner()

    def equals(self, other: "IdealHandle") -> bool:
        return self.groebner() == other.groebner()

    def hilbert(self) -> "HilbertData":
        """Hilbert data of the saturation (auto-saturates if needed)."""
        if self._hilbert is None:
            if self.saturated:
                self._hilbert = hilbert_from_basis(self.groebner(), self.ring)
            else:
                self._hilbert = sat_irrelevant(self).hilbert()
        return self._hilbert

    def substituted(self, M) -> "IdealHandle":
        return IdealHandle([g.substitute_linear(M) for g in self.gens], self.ring,
                           saturated=self.saturated)


def unit_ideal(R: Ring) -> IdealHandle:
    return IdealHandle([R.one], R, saturated=False)


# ------------------------------------------------------------- basic ops


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I, J)
    return IdealHandle(list(I.gens) + list(J.gens), I.ring)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I, J)
    return IdealHandle([a * b for a in I.gens for b in J.gens], I.ring)


def _same_ring(I, J):
    if I.ring != J.ring:
        raise ValueError("ring/field mismatch")


def _scratch_ring(R: Ring) -> Ring:
    names = ("t@",) + R.names
    return ring(R.field, R.nvars + 1, names)


def intersect(I: IdealHandle, J: IdealHandle, budget: Budget | None = None) -> IdealHandle:
    """I meet J via the auxiliary-variable construction."""
    _same_ring(I, J)
    R = I.ring
    if not I.gens:
        return I
    if not J.gens:
        return J
    S = _scratch_ring(R)
    t = S.var(0)
    one_minus_t = S.one - t
    lift = [i + 1 for i in range(R.nvars)]
    gens = [t * g.map_vars(S, lift) for g in I.gens]
    gens += [one_minus_t * g.map_vars(S, lift) for g in J.gens]
    gb = groebner_basis(gens, ElimBlock(1), budget)
    out = []
    for g in gb:
        if all(S.mexp(m, 0) == 0 for m, _ in g.terms):
            out.append(g.map_vars(R, _drop_first(R)))
    return IdealHandle(out, R)


def _drop_first(R: Ring):
    # scratch var 0 is gone; scratch var i+1 -> i
    return [0] + list(range(R.nvars))


def quotient_by_poly(I: IdealHandle, g: Polynomial, budget: Budget | None = None) -> IdealHandle:
    """(I : g) = (I meet (g)) / g."""
    if not g:
        raise ZeroDivisionError("quotient by zero")
    meet = intersect(I, IdealHandle([g], I.ring), budget)
    out = []
    for h in meet.gens:
        q = exact_divide(h, g)
        if q is None:
            raise RuntimeError("intersection with (g) not divisible by g")
        out.append(q)
    return IdealHandle(out, I.ring)


def quotient(I: IdealHandle, J: IdealHandle, budget: Budget | None = None) -> IdealHandle:
    """(I : J) over the generators of J."""
    _same_ring(I, J)
    gens = [g for g in J.gens if g]
    if not gens:
        return unit_ideal(I.ring)
    acc = None
    for g in gens:
        q = quotient_by_poly(I, g, budget)
        acc = q if acc is None else intersect(acc, q, budget)
    return acc


def saturate_by_poly(I: IdealHandle, g: Polynomial, budget: Budget | None = None) -> IdealHandle:
    """(I : g^oo) by the Rabinowitsch trick."""
    if not g:
        raise ZeroDivisionError("saturation by zero")
    if g.total_degree() == 0:
        return IdealHandle(list(I.gens), I.ring, saturated=I.saturated)
    vi = _single_variable(g)
    if vi is not None:
        return _saturate_variable(I, vi, budget)
    R = I.ring
    S = _scratch_ring(R)
    t = S.var(0)
    lift = [i + 1 for i in range(R.nvars)]
    gens = [f.map_vars(S, lift) for f in I.gens]
    gens.append(t * g.map_vars(S, lift) - S.one)
    gb = groebner_basis(gens, ElimBlock(1), budget)
    out = [h.map_vars(R, _drop_first(R)) for h in gb
           if all(S.mexp(m, 0) == 0 for m, _ in h.terms)]
    return IdealHandle(out, R)


def _single_variable(g: Polynomial):
    if len(g.terms) != 1:
        return None
    m = g.terms[0][0]
    R = g.ring
    if R.mdeg(m) != 1:
        return None
    for i in range(R.nvars):
        if R.mexp(m, i) == 1:
            return i
    return None


def _saturate_variable(I: IdealHandle, i: int, budget: Budget | None = None) -> IdealHandle:
    """(I : z_i^oo) for homogeneous I: grevlex basis with z_i cheapest, then
    divide each element by its z_i power."""
    R = I.ring
    n = R.nvars
    if any(not g.is_homogeneous() for g in I.gens):
        raise ValueError("variable saturation requires homogeneous input")
    perm = list(range(n))
    perm[i], perm[n - 1] = perm[n - 1], perm[i]
    moved = IdealHandle([g.map_vars(R, perm) for g in I.gens], R)
    gb = moved.groebner(GREVLEX, budget)
    out = []
    step = 1 << (8 * (n - 1))
    dstep = 1 << R.deg_shift
    for g in gb:
        e = min(R.mexp(m, n - 1) for m, _ in g.terms)
        if e:
            g = Polynomial(R, tuple((m - e * step - e * dstep, c) for m, c in g.terms))
        out.append(g.map_vars(R, perm))
    return IdealHandle(out, R)


def saturate(I: IdealHandle, J: IdealHandle, budget: Budget | None = None) -> IdealHandle:
    """(I : J^oo) = intersection over generators g of (I : g^oo)."""
    _same_ring(I, J)
    gens = [g for g in J.gens if g]
    if not gens or any(g.total_degree() == 0 for g in gens):
        return IdealHandle(list(I.gens), I.ring, saturated=I.saturated)
    parts = []
    for g in gens:
        S = saturate_by_poly(I, g, budget)
        if S.is_unit():
            continue
        parts.append(S)
    if not parts:
        return unit_ideal(I.ring)
    seen = []
    acc = None
    for S in parts:
        if any(S.groebner() == T for T in seen):
            continue
        seen.append(S.groebner())
        acc = S if acc is None else intersect(acc, S, budget)
    return acc


def sat_irrelevant(I: IdealHandle, budget: Budget | None = None) -> IdealHandle:
    """Saturation with respect to (z_0, ..., z_{n-1})."""
    R = I.ring
    if not I.gens:
        return IdealHandle([], R, saturated=True)
    parts = []
    gb0 = I.groebner(GREVLEX, budget)
    for i in range(R.nvars):
        S = _saturate_variable(I, i, budget)
        parts.append(S)
    if all(tuple(S.groebner()) == tuple(gb0) for S in parts):
        out = IdealHandle(list(gb0), R, saturated=True)
        return out.with_basis(GREVLEX, gb0)
    acc = None
    seen = []
    for S in parts:
        if S.is_unit():
            continue
        g = S.groebner()
        if any(g == T for T in seen):
            continue
        seen.append(g)
        acc = S if acc is None else intersect(acc, S, budget)
    if acc is None:
        return IdealHandle([R.one], R, saturated=True)
    acc = IdealHandle(list(acc.gens), R, saturated=True)
    return acc


def eliminate(I: IdealHandle, k: int, budget: Budget | None = None) -> IdealHandle:
    """Generators of I meet field[last n-k variables], in a smaller ring."""
    R = I.ring
    if k <= 0 or k >= R.nvars:
        raise ValueError("elimination count out of range")
    gb = I.groebner(ElimBlock(k), budget)
    R2 = ring(R.field, R.nvars - k, R.names[k:])
    var_map = [0] * R.nvars
    for i in range(k, R.nvars):
        var_map[i] = i - k
    out = []
    for g in gb:
        if all(all(R.mexp(m, i) == 0 for i in range(k)) for m, _ in g.terms):
            out.append(g.map_vars(R2, var_map))
    return IdealHandle(out, R2)


def ideal_ops(I: IdealHandle, J: IdealHandle, op: str, budget: Budget | None = None) -> IdealHandle:
    """Dispatcher: op in {sum, product, intersection, quotient, saturation}."""
    table = {
        "sum": ideal_sum,
        "product": ideal_product,
        "intersection": lambda a, b: intersect(a, b, budget),
        "quotient": lambda a, b: quotient(a, b, budget),
        "saturation": lambda a, b: saturate(a, b, budget),
    }
    if op not in table:
        raise ValueError(f"unknown op {op!r}")
    return table[op](I, J)


# ---------------------------------------------------------- Hilbert data


class HilbertData:
    """Projective dimension / degree / arithmetic genus of S/I.

    hilbert_numerator is the numerator of the Hilbert series over
    (1-t)^nvars, as an integer coefficient list.
    """

    __slots__ = ("dimension", "degree", "p_a", "hilbert_numerator", "nvars")

    def __init__(self, dimension, degree, p_a, numerator, nvars):
        self.dimension = dimension
        self.degree = degree
        self.p_a = p_a
        self.hilbert_numerator = numerator
        self.nvars = nvars

    def __repr__(self):
        return f"HilbertData(dim={self.dimension}, deg={self.degree}, p_a={self.p_a})"

    def hf(self, k: int) -> int:
        """Hilbert function of S/I at degree k (from the numerator)."""
        if k < 0:
            return 0
        n = self.nvars
        return sum(c * comb(k - i + n - 1, n - 1) for i, c in enumerate(self.hilbert_numerator) if i <= k)

    def hp(self, k: int) -> int:
        """Hilbert polynomial value at k."""
        d = self.dimension
        if d < 0:
            return 0
        Q = _divide_one_minus_t(self.hilbert_numerator, self.nvars - 1 - d)
        return sum(c * comb(k - i + d, d) for i, c in enumerate(Q))


def _divide_one_minus_t(N: list, times: int) -> list:
    Q = list(N)
    for _ in range(times):
        out = []
        acc = 0
        for c in Q:
            acc += c
            out.append(acc)
        assert out and out[-1] == 0
        out.pop()
        Q = out
        while Q and Q[-1] == 0:
            Q.pop()
    return Q


def monomial_hilbert_numerator(leads: list, R: Ring) -> list:
    """Numerator of the Hilbert series of S/(leads) over (1-t)^n."""
    mons = _minimalize(leads, R)
    poly = _hn(mons, R)
    return poly


def _minimalize(mons: list, R: Ring) -> list:
    mons = sorted(set(mons), key=R.mdeg)
    out = []
    for m in mons:
        if not any(R.mdivides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul_1_minus_td(N: list, d: int) -> list:
    out = list(N) + [0] * d
    for i, c in enumerate(N):
        out[i + d] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _hn(mons: list, R: Ring) -> list:
    """Pivot recursion for the h-numerator of a minimal monomial ideal."""
    if not mons:
        return [1]
    if any(m >> R.deg_shift == 0 for m in mons):
        return []
    if len(mons) == 1:
        return _poly_mul_1_minus_td([1], R.mdeg(mons[0]))
    # pure powers (necessarily of distinct variables, being minimal): product formula
    supports = [_support(m, R) for m in mons]
    if all(len(s) == 1 for s in supports):
        N = [1]
        for m in mons:
            N = _poly_mul_1_minus_td(N, R.mdeg(m))
        return N
    # pivot on the most frequent variable among mixed generators, so both
    # branches strictly shrink
    counts = [0] * R.nvars
    for s in supports:
        if len(s) >= 2:
            for i in s:
                counts[i] += 1
    piv = max(range(R.nvars), key=lambda i: counts[i])
    step = 1 << (8 * piv)
    dstep = 1 << R.deg_shift
    plus = _minimalize([m for m in mons if R.mexp(m, piv) == 0] + [step + dstep], R)
    colon = _minimalize([(m - step - dstep) if R.mexp(m, piv) else m for m in mons], R)
    N1 = _hn(plus, R)
    N2 = _hn(colon, R)
    out = [0] * max(len(N1), len(N2) + 1)
    for i, c in enumerate(N1):
        out[i] += c
    for i, c in enumerate(N2):
        out[i + 1] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _support(m: int, R: Ring) -> list:
    return [i for i in range(R.nvars) if R.mexp(m, i)]


def hilbert_from_basis(gb: tuple, R: Ring) -> HilbertData:
    leads = [g.lead()[0] for g in gb]
    N = monomial_hilbert_numerator(leads, R)
    n = R.nvars
    if not N:
        return HilbertData(-1, 0, None, N, n)
    # strip (1-t) factors
    Q = list(N)
    e = 0
    while Q and sum(Q) == 0:
        Q = _divide_one_minus_t(Q, 1)
        e += 1
    D = n - e  # Krull dimension of S/I
    if D == 0:
        return HilbertData(-1, 0, None, N, n)
    dim = D - 1
    degree = sum(Q)
    p_a = None
    if dim == 1:
        # HP(T) = deg*T + (Q(1) - Q'(1)); p_a = 1 - HP(0)
        q1p = sum(i * c for i, c in enumerate(Q))
        p_a = 1 - degree + q1p
    return HilbertData(dim, degree, p_a, N, n)


def hilbert(I: IdealHandle) -> HilbertData:
    return I.hilbert()


def graded_piece_dim(I: IdealHandle, k: int) -> int:
    """dim of the degree-k piece of I (I expected saturated)."""
    R = I.ring
    h = hilbert_from_basis(I.groebner(), R)
    return comb(k + R.nvars - 1, R.nvars - 1) - h.hf(k)


# --------------------------------------------- degree pieces as subspaces


def piece_span(I: IdealHandle, d: int):
    """Coefficient matrix (rows) spanning the degree-d piece of I."""
    R = I.ring
    mons = R.monomials_of_degree(d)
    idx = {m: i for i, m in enumerate(mons)}
    rows = []
    F = R.field
    for g in I.gens:
        if not g:
            continue
        dg = g.degree
        if dg > d:
            continue
        for mm in R.monomials_of_degree(d - dg):
            gm = g.mul_monomial(mm)
            row = [F.zero] * len(mons)
            for m, c in gm.terms:
                row[idx[m]] = c
            rows.append(row)
    return linalg.row_space_basis(F, rows), mons


def piece_dim(I: IdealHandle, d: int) -> int:
    return len(piece_span(I, d)[0])


def vectors_to_polys(vectors, mons, R: Ring) -> list:
    F = R.field
    out = []
    for v in vectors:
        out.append(R.poly({m: c for m, c in zip(mons, v) if c != F.zero}))
    return out


# ----------------------------------------------------- local information


def point_frame(R: Ring, p) -> list:
    """Invertible matrix whose last column is p (deterministic completion)."""
    F = R.field
    n = R.nvars
    i0 = next(i for i, c in enumerate(p) if c != F.zero)
    cols = [[F.one if r == j else F.zero for r in range(n)] for j in range(n) if j != i0]
    cols.append(list(p))
    M = [[cols[j][r] for j in range(n)] for r in range(n)]
    return M


def local_length(I: IdealHandle, p, budget: Budget | None = None) -> int:
    """Length of the component of a 0-dimensional scheme at the point p."""
    R = I.ring
    Isat = I if I.saturated else sat_irrelevant(I, budget)
    h = hilbert_from_basis(Isat.groebner(), R)
    if h.dimension > 0:
        raise DegenerateInput("local_length requires a 0-dimensional scheme")
    if h.dimension == -1:
        return 0
    M = point_frame(R, p)
    J = Isat.substituted(M)
    # strip the component at e_last: saturate by the point's maximal ideal
    acc = None
    seen = []
    for i in range(R.nvars - 1):
        S = _saturate_variable(J, i, budget)
        if S.is_unit():
            continue
        g = S.groebner()
        if any(g == T for T in seen):
            continue
        seen.append(g)
        acc = S if acc is None else intersect(acc, S, budget)
    if acc is None or acc.is_unit():
        rest_deg = 0
    else:
        hr = hilbert_from_basis(acc.groebner(), R)
        rest_deg = hr.degree if hr.dimension == 0 else 0
    return h.degree - rest_deg


def multiplicity_at(C: IdealHandle, p, rng: Rng, budget: Budget | None = None,
                    trials: int = 5) -> int:
    """Multiplicity of the curve C at p: local length of a generic plane
    section; two independent planes must agree."""
    R = C.ring
    F = R.field
    values = []
    for k in range(trials):
        sub = rng.split(f"mult-plane-{k}")
        # random hyperplane through p
        coeffs = None
        while coeffs is None:
            cand = [F.rand(sub) for _ in range(R.nvars)]
            s = F.zero
            for c, x in zip(cand, p):
                s = F.add(s, F.mul(c, x))
            i0 = next((i for i, x in enumerate(p) if x != F.zero), None)
            # adjust to vanish at p
            corr = F.div(s, p[i0])
            cand[i0] = F.sub(cand[i0], corr)
            if any(c != F.zero for c in cand):
                coeffs = cand
        h = R.poly({R.pack(tuple(1 if j == i else 0 for j in range(R.nvars))): c
                    for i, c in enumerate(coeffs) if c != F.zero})
        section = IdealHandle(list(C.gens) + [h], R)
        try:
            val = local_length(section, p, budget)
        except DegenerateInput:
            continue
        values.append(val)
        if len(values) >= 2 and values[-1] == values[-2]:
            return values[-1]
    raise DegenerateInput(f"multiplicity trials disagree: {values}")


# ----------------------------------------- 0-dimensional scheme analysis


def count_points(I: IdealHandle, rng: Rng, budget: Budget | None = None) -> int:
    """Number of distinct points of a 0-dim scheme over the closure:
    degree of the squarefree part of a generic binary eliminant (max of 3
    draws, collisions only undercount)."""
    R = I.ring
    Isat = I if I.saturated else sat_irrelevant(I, budget)
    if Isat.is_unit():
        return 0
    best = 0
    for k in range(3):
        sub = rng.split(f"count-{k}")
        B = _binary_eliminant(Isat, sub, budget)
        if B is None:
            continue
        sq = _binary_squarefree(B, R.field)
        best = max(best, sq)
    if best == 0:
        raise DegenerateInput("eliminant computation failed")
    return best


def _binary_eliminant(I: IdealHandle, rng: Rng, budget) -> list | None:
    """Image of V(I) under a random P^3 -> P^1; returns a binary form as
    coefficient list in (s, t): [c_0 s^d, ..., c_d t^d] -> list of c_i."""
    R = I.ring
    F = R.field
    n = R.nvars
    S = ring(F, n + 2, R.names + ("s@", "t@"))
    lift = list(range(n))
    gens = [g.map_vars(S, lift) for g in I.gens]
    u = [F.rand(rng) for _ in range(n)]
    v = [F.rand(rng) for _ in range(n)]
    lin_u = S.poly({S.pack(tuple(1 if j == i else 0 for j in range(n + 2))): c
                    for i, c in enumerate(u) if c != F.zero})
    lin_v = S.poly({S.pack(tuple(1 if j == i else 0 for j in range(n + 2))): c
                    for i, c in enumerate(v) if c != F.zero})
    gens.append(S.var(n) - lin_u)
    gens.append(S.var(n + 1) - lin_v)
    # eliminate the original variables: they form the FIRST block
    gb = groebner_basis(gens, ElimBlock(n), budget)
    cands = [g for g in gb if all(all(S.mexp(m, i) == 0 for i in range(n)) for m, _ in g.terms)]
    if not cands:
        return None
    # collect as binary forms, take gcd
    forms = []
    for g in cands:
        d = g.total_degree()
        coeffs = [F.zero] * (d + 1)
        ok = True
        for m, c in g.terms:
            es, et = S.mexp(m, n), S.mexp(m, n + 1)
            if es + et != d:
                ok = False
                break
            coeffs[et] = c
        if ok:
            forms.append(coeffs)
    if not forms:
        return None
    acc = forms[0]
    for f2 in forms[1:]:
        acc = _binary_gcd(acc, f2, F)
    return acc


def _split_binary(B: list, F: Field):
    """B as (s_power, t_power, dehomogenized univariate in t/s ...).

    Representation: B[i] is the coefficient of s^(d-i) t^i.  Dehomogenize by
    s=1: univariate in t with coefficient list B (low degree first after
    stripping t-powers)."""
    lo = 0
    while lo < len(B) and B[lo] == F.zero:
        lo += 1
    hi = len(B) - 1
    while hi >= lo and B[hi] == F.zero:
        hi -= 1
    core = B[lo : hi + 1]
    return lo, len(B) - 1 - hi, core


def _binary_gcd(B1: list, B2: list, F: Field) -> list:
    t1, s1, c1 = _split_binary(B1, F)
    t2, s2, c2 = _split_binary(B2, F)
    g = univar.gcd(c1, c2, F)
    ts, ss = min(t1, t2), min(s1, s2)
    out = [F.zero] * ts + g + [F.zero] * ss
    return out


def _binary_squarefree(B: list, F: Field) -> int:
    """Degree of the squarefree part of a binary form."""
    t, s, core = _split_binary(B, F)
    d = univar.deg(core)
    extra = (1 if t else 0) + (1 if s else 0)
    if d <= 0:
        return extra
    sq = univar.squarefree_part(core, F)
    return univar.deg(sq) + extra


def extract_points(I: IdealHandle, rng: Rng, budget: Budget | None = None,
                   allow_ext: bool = True):
    """Points of a 0-dimensional scheme: (rational points, GF(p^2) points,
    complete_flag).  Points are normalized projective tuples."""
    R = I.ring
    F = R.field
    Isat = I if I.saturated else sat_irrelevant(I, budget)
    if Isat.is_unit():
        return [], [], True
    h = hilbert_from_basis(Isat.groebner(), R)
    if h.dimension != 0:
        raise DegenerateInput("extract_points requires a 0-dimensional scheme")
    pts, ext, complete = _extract_chart(Isat, rng, budget, allow_ext)
    want = count_points(Isat, rng.split("count"), budget)
    complete = complete and (len(pts) + len(ext) >= want)
    return pts, ext, complete


def _extract_chart(Isat, rng, budget, allow_ext, depth: int = 0):
    R = Isat.ring
    F = R.field
    n = R.nvars
    chart = None
    for i in range(n - 1, -1, -1):
        test = IdealHandle(list(Isat.gens) + [R.var(i)], R)
        hh = hilbert_from_basis(test.groebner(GREVLEX, budget), R)
        if hh.dimension == -1:
            chart = i
            break
    if chart is None:
        if depth >= 2:
            return [], [], False
        M = linalg.random_invertible(F, n, rng.split(f"chart-change-{depth}"))
        moved = Isat.substituted(M)
        pts, ext, comp = _extract_chart(moved, rng, budget, allow_ext, depth + 1)
        # map back: x_orig = M x_new
        back_pts = [_normalize_point(linalg.mat_vec(F, M, list(p)), F) for p in pts]
        back_ext = []
        if ext:
            F2 = GF2(F.p)
            M2 = [[F2.lift(c) for c in row] for row in M]
            back_ext = [_normalize_point(linalg.mat_vec(F2, M2, list(p)), F2) for p in ext]
        return back_pts, back_ext, comp
    # dehomogenize: z_chart = 1
    A = ring(F, n - 1, tuple(nm for i, nm in enumerate(R.names) if i != chart))
    affine = [_dehomogenize(g, chart, A) for g in Isat.gens]
    affine = [g for g in affine if g]
    root_sets = []
    ext_root_sets = []
    isGF = isinstance(F, GF) and not isinstance(F, GF2)
    F2 = GF2(F.p) if (isGF and allow_ext) else None
    for w in range(n - 1):
        elim_f = _affine_eliminant(affine, A, w, budget)
        if elim_f is None:
            return [], [], False
        if isGF:
            rs = univar.roots_gf(elim_f, F, rng.split(f"roots-{w}"))
            root_sets.append(rs)
            if F2 is not None:
                quads = univar.irreducible_quadratics(elim_f, F, rng.split(f"quads-{w}"))
                ers = []
                for q in quads:
                    ers.extend(univar.quadratic_roots_ext(q, F, F2))
                ext_root_sets.append([F2.lift(r) for r in rs] + ers)
        elif F == QQ:
            rs = univar.roots_qq(elim_f, F)
            root_sets.append(rs)
            ext_root_sets.append(None)
        else:
            return [], [], False
    pts = _combine_roots(affine, A, root_sets, F, chart, R)
    ext_pts = []
    if F2 is not None and all(e is not None for e in ext_root_sets):
        A2 = ring(F2, n - 1, A.names)
        affine2 = [g.map_field(A2) for g in affine]
        allpts = _combine_roots(affine2, A2, ext_root_sets, F2, chart, R)
        ext_pts = [p for p in allpts if not all(F2.in_base(c) for c in p)]
    complete = True
    return pts, ext_pts, complete


def _dehomogenize(g: Polynomial, chart: int, A: Ring) -> Polynomial:
    R = g.ring
    F = A.field
    d: dict = {}
    for m, c in g.terms:
        exps = []
        for i in range(R.nvars):
            if i != chart:
                exps.append(R.mexp(m, i))
        mm = A.pack(exps)
        d[mm] = F.add(d.get(mm, F.zero), c)
    return A.poly(d)


def _affine_eliminant(affine: list, A: Ring, keep: int, budget) -> list | None:
    """Univariate eliminant in variable `keep` of a 0-dim affine ideal."""
    n = A.nvars
    others = [i for i in range(n) if i != keep]
    perm = others + [keep]
    inv = [0] * n
    for pos, i in enumerate(perm):
        inv[i] = pos
    moved = [g.map_vars(A, inv) for g in affine]
    gb = groebner_basis(moved, ElimBlock(n - 1), budget)
    F = A.field
    best = None
    for g in gb:
        if all(all(A.mexp(m, i) == 0 for i in range(n - 1)) for m, _ in g.terms):
            d = max(A.mexp(m, n - 1) for m, _ in g.terms)
            coeffs = [F.zero] * (d + 1)
            for m, c in g.terms:
                coeffs[A.mexp(m, n - 1)] = c
            best = coeffs if best is None else univar.gcd(best, coeffs, F)
    return best


def _combine_roots(affine, A, root_sets, F, chart, R):
    from itertools import product

    cands = 1
    for rs in root_sets:
        cands *= len(rs)
    if cands == 0 or cands > 4000:
        return []
    pts = []
    for combo in product(*root_sets):
        if all(g.evaluate(list(combo), projective=False) == F.zero for g in affine):
            proj = list(combo)
            proj.insert(chart, F.one)
            pts.append(_normalize_point(proj, F))
    # dedupe
    seen = set()
    out = []
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _normalize_point(p, F) -> tuple:
    i0 = next(i for i, c in enumerate(p) if c != F.zero)
    inv = F.inv(p[i0])
    return tuple(F.mul(c, inv) for c in p)


def isolated_points(J: IdealHandle, curve_part: IdealHandle | None, rng: Rng,
                    budget: Budget | None = None):
    """0-dimensional part of the base scheme: (theta_ideal, distinct count)."""
    R = J.ring
    Jsat = J if J.saturated else sat_irrelevant(J, budget)
    if Jsat.is_unit():
        return unit_ideal(R), 0
    if curve_part is None or curve_part.is_unit() or not curve_part.gens:
        theta = Jsat
    else:
        theta = saturate(Jsat, curve_part, budget)
    if theta.is_unit():
        return theta, 0
    h = hilbert_from_basis(theta.groebner(), R)
    if h.dimension != 0:
        raise DegenerateInput("residual of the curve part is not 0-dimensional")
    theta = IdealHandle(list(theta.gens), R, saturated=True)
    return theta, count_points(theta, rng, budget)


# ---------------------------------------------------------- random forms


def random_form(R: Ring, degree: int, rng: Rng, constraints=()):
    """Uniform sample from the space of degree-d forms satisfying linear
    constraints; deterministic per rng stream.

    Constraints: ("point", p) vanish at p; ("point_power", p, k) lie in
    I_p^k; ("ideal", IdealHandle) lie in the ideal's degree-d piece.
    Raises DegenerateInput when the solution space is zero.
    """
    F = R.field
    mons = R.monomials_of_degree(degree)
    idx = {m: i for i, m in enumerate(mons)}
    rows = []
    for c in constraints:
        kind = c[0]
        if kind == "point":
            rows.append(_eval_monomials(R, mons, c[1]))
        elif kind == "point_power":
            rows.extend(_point_power_rows(R, mons, c[1], c[2]))
        elif kind == "ideal":
            span, _ = piece_span(c[1], degree)
            if not span:
                raise DegenerateInput("ideal has empty degree piece")
            rows.extend(linalg.nullspace(F, [list(r) for r in span], len(mons)))
        else:
            raise ValueError(f"unknown constraint {kind!r}")
    basis = linalg.nullspace(F, rows, len(mons)) if rows else \
        [[F.one if i == j else F.zero for i in range(len(mons))] for j in range(len(mons))]
    if not basis:
        raise DegenerateInput("empty solution space")
    vec = [F.zero] * len(mons)
    for b in basis:
        c = F.rand(rng)
        vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, b)]
    return vectors_to_polys([vec], mons, R)[0], len(basis)


def _eval_monomials(R: Ring, mons, p):
    F = R.field
    row = []
    for m in mons:
        v = F.one
        for i in range(R.nvars):
            for _ in range(R.mexp(m, i)):
                v = F.mul(v, p[i])
        row.append(v)
    return row


def _point_power_rows(R: Ring, mons, p, k):
    """Vanishing to order k at p: all partial derivatives of order < k."""
    from itertools import combinations_with_replacement

    F = R.field
    rows = []
    for order in range(k):
        for combo in combinations_with_replacement(range(R.nvars), order):
            row = []
            for m in mons:
                exps = list(R.unpack(m))
                coef = F.one
                ok = True
                for i in combo:
                    if exps[i] == 0:
                        ok = False
                        break
                    coef = F.mul(coef, F.of(exps[i]))
                    exps[i] -= 1
                if not ok:
                    row.append(F.zero)
                    continue
                v = coef
                for i in range(R.nvars):
                    for _ in range(exps[i]):
                        v = F.mul(v, p[i])
                row.append(v)
            rows.append(row)
    return rows
