"""Quotient algebra attached to a classified marked poset: one relation
X_p Y_p = 1 + tail per unmarked element, a standard-monomial normal form,
the induced valuation into the semialgebra, and numerical certificates
(unit elements, Jacobian rank at variety points).

Monomials are sparse maps p -> (a_p, b_p) of nonnegative X/Y exponents,
canonically keyed by sorted element name; elements are sparse maps from
monomial keys to nonzero rationals.
"""

from __future__ import annotations

from fractions import Fraction

from . import geometry, lattice, semialgebra
from .posets import classify_spade, graded_structure

ONE = ()


class ValuationFail(Exception):
    pass


class RankFail(Exception):
    pass


# ---------------------------------------------------------------------------
# monomials and elements

def mono(pairs):
    """Canonical monomial key from {p: (a, b)}."""
    items = []
    for p, (a, b) in sorted(dict(pairs).items()):
        if a < 0 or b < 0:
            raise ValueError("negative exponent")
        if a or b:
            items.append((p, a, b))
    return tuple(items)


def mono_mul(m1, m2):
    acc = {p: (a, b) for p, a, b in m1}
    for p, a, b in m2:
        a0, b0 = acc.get(p, (0, 0))
        acc[p] = (a0 + a, b0 + b)
    return mono(acc)


def is_standard(m):
    return all(min(a, b) == 0 for _, a, b in m)


def x_var(p):
    return ((p, 1, 0),)


def y_var(p):
    return ((p, 0, 1),)


def element(pairs):
    """Algebra element from an iterable of (monomial key, coefficient)."""
    acc = {}
    for m, c in pairs:
        c = acc.get(m, Fraction(0)) + Fraction(c)
        if c:
            acc[m] = c
        elif m in acc:
            del acc[m]
    return acc


def add(f, g):
    return element(list(f.items()) + list(g.items()))


def scale(c, f):
    c = Fraction(c)
    return {m: c * v for m, v in f.items()} if c else {}


# ---------------------------------------------------------------------------
# relations

def build_relations(poset, classification=None):
    """Tail term of each relation X_p Y_p - 1 - tail, from the level
    component structure: the element above p in its zigzag contributes
    Y (and an extra X when that upper element continues a zigzag one
    level up at an interior position)."""
    classification = classification or classify_spade(poset)
    tails = {}
    for p in poset.axis:
        idx, k = classification.lower_pos[p]
        comp = classification.components[idx]
        if k > comp.n_c:
            tails[p] = None
            continue
        q = comp.upper[k - 1]
        idx2, k2 = classification.lower_pos[q]
        comp2 = classification.components[idx2]
        if 2 <= k2 <= comp2.n_c + 1:
            tails[p] = ("XY", comp2.lower[k2 - 2], q)
        else:
            tails[p] = ("Y", q)
    return tails


def tail_element(tail):
    if tail is None:
        return {}
    if tail[0] == "Y":
        return {y_var(tail[1]): Fraction(1)}
    return {mono_mul(x_var(tail[1]), y_var(tail[2])): Fraction(1)}


def relation_element(p, tails):
    """g_p = X_p Y_p - 1 - tail as an algebra element of the free ring."""
    g = {mono_mul(x_var(p), y_var(p)): Fraction(1), ONE: Fraction(-1)}
    return add(g, scale(-1, tail_element(tails[p])))


def normal_form(f, tails, rank=None):
    """Rewrite X_p Y_p -> 1 + tail until all monomials are standard.

    Tails only mention strictly higher-rank variables, so the rewriting
    terminates; the result is independent of the rewrite order.
    """
    out = {}
    work = list(f.items())
    while work:
        m, c = work.pop()
        target = next((p for p, a, b in m if a and b), None)
        if target is None:
            c = out.get(m, Fraction(0)) + c
            if c:
                out[m] = c
            elif m in out:
                del out[m]
            continue
        rest = mono({p: (a - (p == target), b - (p == target))
                     for p, a, b in m})
        work.append((rest, c))
        for tm, tc in tail_element(tails[target]).items():
            work.append((mono_mul(rest, tm), c * tc))
    return out


def multiply(f, g, tails):
    prod = []
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            prod.append((mono_mul(m1, m2), c1 * c2))
    return normal_form(element(prod), tails)


def leading_coprime_check(relations_vars):
    """Pairwise coprimality of the leading monomials X_p Y_p."""
    seen = set()
    for p in relations_vars:
        if p in seen:
            return False
        seen.add(p)
    return True


# ---------------------------------------------------------------------------
# standard monomials <-> lattice elements

def _zigzag_prefix(classification, p):
    """The lower elements p_1..p_k of p's component when p sits at an
    interior or end position of a genuine zigzag; None otherwise."""
    idx, k = classification.lower_pos[p]
    comp = classification.components[idx]
    if comp.n_c == 0:
        return None
    return comp.lower[:k]


def hat_e(poset, classification, p):
    """Adapted basis vector: the plain unit vector away from zigzags, the
    prefix sum of the component's lower row inside one."""
    axis = poset.axis
    vec = [0] * len(axis)
    prefix = _zigzag_prefix(classification, p)
    if prefix is None:
        vec[axis.index(p)] = 1
    else:
        for q in prefix:
            vec[axis.index(q)] = 1
    return tuple(vec)


def monomial_to_m(poset, classification, m):
    """Chart-0 coordinate of the lattice element attached to a standard
    monomial: the signed exponent sum over the adapted basis."""
    axis = poset.axis
    total = [0] * len(axis)
    for p, a, b in m:
        he = hat_e(poset, classification, p)
        for i, v in enumerate(he):
            total[i] += (a - b) * v
    return tuple(total)


def m_to_monomial(poset, classification, vec):
    """Inverse of monomial_to_m on chart-0 coordinates (exact, triangular)."""
    axis = poset.axis
    coeff = {}
    for p in axis:
        idx, k = classification.lower_pos[p]
        comp = classification.components[idx]
        if comp.n_c == 0:
            coeff[p] = vec[axis.index(p)]
            continue
        nxt = comp.lower[k] if k < len(comp.lower) else None
        here = vec[axis.index(p)]
        there = vec[axis.index(nxt)] if nxt in poset.axis else 0
        coeff[p] = here - there
    return mono({p: (max(c, 0), max(-c, 0)) for p, c in coeff.items()})


# ---------------------------------------------------------------------------
# valuation

def valuation(f, lat, classification):
    if not f:
        return semialgebra.INFINITY
    gens = [lat.element(monomial_to_m(lat.poset, classification, m))
            for m in f]
    return semialgebra.SemialgebraElement(lat, gens)


def random_sparse(rng, poset, terms=2, max_exp=2):
    out = []
    for _ in range(terms):
        m = mono({p: ((rng.randint(0, max_exp), 0)
                      if rng.random() < 0.5
                      else (0, rng.randint(0, max_exp)))
                  for p in poset.axis if rng.random() < 0.7})
        out.append((m, Fraction(rng.randint(1, 5))))
    return element(out)


def verify_valuation(fam, rng, samples=100, mode="EXACT"):
    """Multiplicativity of the valuation on seeded sparse pairs."""
    poset = fam.poset
    classification = classify_spade(poset)
    tails = build_relations(poset, classification)
    lat = lattice.PolyptychLattice(poset)
    functionals = None
    if mode == "SAMPLED":
        functionals = semialgebra.sample_functionals(fam, rng)
    checked = 0
    for _ in range(samples):
        f = normal_form(random_sparse(rng, poset), tails)
        g = normal_form(random_sparse(rng, poset), tails)
        if not f or not g:
            continue
        lhs = valuation(multiply(f, g, tails), lat, classification)
        rhs = semialgebra.star(valuation(f, lat, classification),
                               valuation(g, lat, classification))
        same = semialgebra.equal(lhs, rhs, mode=mode, fam=fam,
                                 functionals=functionals)
        if not same:
            raise ValuationFail(f"nu(fg) != nu(f)*nu(g) for {f} and {g}")
        checked += 1
    return {"pairs": checked, "ok": True}


# ---------------------------------------------------------------------------
# units, localization, Jacobian

def laurent_y_solutions(poset, tails):
    """Each Y_p as a Laurent polynomial in the X variables, obtained by
    substituting Y_p = (1 + tail) / X_p from the top rank downwards.
    Monomials are maps p -> integer X-exponent."""
    graded = graded_structure(poset)
    order = sorted(poset.axis, key=lambda p: -graded.rank[p])
    sol = {}

    def lmul(mon, p, e):
        mon = dict(mon)
        mon[p] = mon.get(p, 0) + e
        if not mon[p]:
            del mon[p]
        return tuple(sorted(mon.items()))

    for p in order:
        terms = {lmul({}, p, -1): Fraction(1)}
        tail = tails[p]
        if tail is not None:
            if tail[0] == "Y":
                base = sol[tail[1]]
                extra = None
            else:
                base = sol[tail[2]]
                extra = tail[1]
            for mon, c in base.items():
                mon = lmul(dict(mon), p, -1)
                if extra is not None:
                    mon = lmul(dict(mon), extra, 1)
                terms[mon] = terms.get(mon, Fraction(0)) + c
        sol[p] = {m: c for m, c in terms.items() if c}
    return sol


def unit_and_dimension_report(poset, classification=None):
    classification = classification or classify_spade(poset)
    tails = build_relations(poset, classification)
    units = [p for p in poset.axis if tails[p] is None]
    unit_ok = all(
        multiply({x_var(p): Fraction(1)}, {y_var(p): Fraction(1)}, tails)
        == {ONE: Fraction(1)} for p in units)
    u_count = sum(1 for comp in classification.components
                  if comp.counts_as_unmarked_zigzag)
    sol = laurent_y_solutions(poset, tails)
    return {
        "units": sorted(units),
        "unit_products_trivial": unit_ok,
        "unit_rank": u_count,
        "unit_rank_matches": len(units) == u_count,
        "dimension": len(poset.axis),
        "localization_laurent": len(sol) == len(poset.axis),
    }


def solve_variety_point(poset, tails, xvals):
    """Given nonzero X values, the unique Y values on the variety,
    solved from the top rank downwards."""
    graded = graded_structure(poset)
    order = sorted(poset.axis, key=lambda p: -graded.rank[p])
    y = {}
    for p in order:
        t = Fraction(0)
        tail = tails[p]
        if tail is not None:
            if tail[0] == "Y":
                t = y[tail[1]]
            else:
                t = xvals[tail[1]] * y[tail[2]]
        y[p] = (1 + t) / xvals[p]
    return y


def jacobian_matrix(poset, tails, xvals, yvals):
    """Rows g_p, columns X then Y in axis order, evaluated exactly."""
    axis = poset.axis
    rows = []
    for p in axis:
        dx = {p: yvals[p]}
        dy = {p: xvals[p]}
        tail = tails[p]
        if tail is not None:
            if tail[0] == "Y":
                dy[tail[1]] = dy.get(tail[1], Fraction(0)) - 1
            else:
                dx[tail[1]] = dx.get(tail[1], Fraction(0)) - yvals[tail[2]]
                dy[tail[2]] = dy.get(tail[2], Fraction(0)) - xvals[tail[1]]
        rows.append([dx.get(q, Fraction(0)) for q in axis]
                    + [dy.get(q, Fraction(0)) for q in axis])
    return rows


def matrix_rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


def evaluate_relations(poset, tails, xvals, yvals):
    vals = []
    for p in poset.axis:
        t = Fraction(0)
        tail = tails[p]
        if tail is not None:
            if tail[0] == "Y":
                t = yvals[tail[1]]
            else:
                t = xvals[tail[1]] * yvals[tail[2]]
        vals.append(xvals[p] * yvals[p] - 1 - t)
    return vals


def jacobian_rank_at_samples(poset, rng, count=50, extra_points=()):
    """Exact Jacobian rank at seeded variety points (plus supplied ones)."""
    tails = build_relations(poset)
    n = len(poset.axis)
    report = {"points": 0, "rank": n, "ok": True}
    for _ in range(count):
        xvals = {p: Fraction(rng.randint(1, 9) * rng.choice([-1, 1]),
                             rng.randint(1, 4)) for p in poset.axis}
        yvals = solve_variety_point(poset, tails, xvals)
        if any(v != 0 for v in evaluate_relations(poset, tails, xvals, yvals)):
            raise RankFail("sample point not on the variety")
        if matrix_rank(jacobian_matrix(poset, tails, xvals, yvals)) != n:
            raise RankFail(f"rank drop at {xvals}")
        report["points"] += 1
    for xvals, yvals in extra_points:
        if any(v != 0 for v in evaluate_relations(poset, tails, xvals, yvals)):
            raise RankFail("supplied point not on the variety")
        if matrix_rank(jacobian_matrix(poset, tails, xvals, yvals)) != n:
            raise RankFail("rank drop at supplied degenerate point")
        report["points"] += 1
    return report


def degenerate_point_gt(fam):
    """A variety point where one X_p Y_p pair vanishes (at the top interior
    position), exercising the degenerate branch of the smoothness case
    split.  The relation there then reads 0 = 1 + tail, so the tail value
    is pinned to -1; everything else is solved rank-descending."""
    tails = build_relations(fam.poset)
    p0 = fam.positions[max(fam.pihat)]
    tail0 = tails[p0]
    if tail0 is None:
        raise RankFail("interior position with trivial tail")
    q0 = tail0[-1]
    graded = graded_structure(fam.poset)
    order = sorted(fam.poset.axis, key=lambda p: -graded.rank[p])
    xvals, yvals = {}, {}
    for p in order:
        if p == p0:
            xvals[p] = yvals[p] = Fraction(0)
        elif p == q0:
            yvals[p] = Fraction(-1)
            xvals[p] = (1 + _tail_value(tails, xvals, yvals, p)) / yvals[p]
        else:
            xvals[p] = Fraction(1)
            yvals[p] = 1 + _tail_value(tails, xvals, yvals, p)
    return xvals, yvals


def _tail_value(tails, xvals, yvals, p):
    tail = tails[p]
    if tail is None:
        return Fraction(0)
    if tail[0] == "Y":
        return yvals[tail[1]]
    return xvals[tail[1]] * yvals[tail[2]]


# ---------------------------------------------------------------------------
# serialization

def element_to_json(f):
    out = []
    for m in sorted(f):
        coef = f[m]
        out.append({"mono": {p: [a, b] for p, a, b in m},
                    "coef": f"{coef.numerator}/{coef.denominator}"})
    return out


def element_from_json(data):
    pairs = []
    for item in data:
        m = mono({p: tuple(ab) for p, ab in item["mono"].items()})
        num, den = item["coef"].split("/")
        pairs.append((m, Fraction(int(num), int(den))))
    return element(pairs)
