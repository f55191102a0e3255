"""Generic decomposition combinatorics for twisted products of GL_n.

This module computes, purely combinatorially and in exact arithmetic:

* the nonvanishing criterion for baby Verma multiplicities,
* the generic Jordan-Holder factor set of a parameter pair (s, mu),
* covering parameter pairs whose decomposition contains a fixed simple,
* the involution-style R operator and the predicted weight set W?,
* presentation equivalence of parameter pairs, and
* admissibility of (type, parameter) pairs against the eta-admissible set.

Factor multiplicity values are out of scope; every emitted factor carries
a guaranteed-nonzero marker instead (its baby Verma criterion is checked).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import (
    AffineElt,
    adm_contains,
    enumerate_up_below,
    fold_weight,
    is_restricted_elt,
    p_alcove_of,
    restricted_transversal,
    translation,
    vertex_hmax,
    w_h,
    weight_up,
    weyl_elt,
)
from .errors import (
    InternalInvariantError,
    MuNotDeep,
    MuNotInC0,
    NoHypothesisApplies,
    NotRegular,
    NotRestricted,
    PrimeMismatch,
)
from .root_datum import RootDatum, format_weight


# -- weight predicates ---------------------------------------------------------


def is_restricted_weight(datum: RootDatum, lam, p: int) -> bool:
    """lam in X_1: dominant with simple pairings in [0, p-1]."""
    if not datum.is_dominant(lam):
        return False
    return all(
        datum.pairing(lam, datum.roots[i]) <= p - 1 for i in datum.simple_indices
    )


def is_regular_weight(datum: RootDatum, lam, p: int) -> bool:
    """lam in X_reg: restricted with strict bound < p-1 on simple pairings."""
    if not datum.is_dominant(lam):
        return False
    return all(
        datum.pairing(lam, datum.roots[i]) < p - 1 for i in datum.simple_indices
    )


def central_expand(datum: RootDatum, c):
    """Per-copy constants c (length f) as a central lattice vector."""
    out = []
    for j in range(datum.f):
        out.extend([c[j]] * datum.n)
    return tuple(out)


def _twist_minus_p(datum: RootDatum, s, nu, p: int):
    """(s pi - p) nu = s(pi(nu)) - p nu."""
    return datum.sub(datum.act(s, datum.frobenius(nu)), datum.smul(p, nu))


# -- canonical representatives modulo (p - pi) X0 -------------------------------


def _central_solve(datum: RootDatum, p: int, vec):
    """M^{-1} vec over the rationals for M = p - shift on central f-vectors.

    (M c)_j = p c_j - c_{j+1 mod f}; M is invertible since p^f != 1, with
    inverse sum_i p^(f-1-i) shift^i / (p^f - 1).
    """
    f = datum.f
    denom = p**f - 1
    out = []
    for j in range(f):
        acc = 0
        for i in range(f):
            acc += p ** (f - 1 - i) * vec[(j + i) % f]
        out.append(Fraction(acc, denom))
    return tuple(out)


def canonical_weight(datum: RootDatum, lam, p: int):
    """Canonical representative of lam modulo (p - pi) X0.

    Returns (rep, c) with rep = lam - (p - pi)(c) and c the unique integer
    central vector putting the per-copy sums into a fixed fundamental
    parallelepiped.  Two weights are in one class iff their reps agree.
    """
    sums = datum.copy_sums(lam)
    v = _central_solve(datum, p, sums)
    c = tuple((x / datum.n).__floor__() for x in v)
    shift = tuple(p * c[j] - c[(j + 1) % datum.f] for j in range(datum.f))
    rep = datum.sub(lam, central_expand(datum, shift))
    return rep, c


@dataclass(frozen=True)
class WeightClass:
    """A weight up to (p - pi)-twisted central shifts, held canonically."""

    datum: RootDatum
    p: int
    rep: tuple

    @classmethod
    def of(cls, datum: RootDatum, lam, p: int) -> "WeightClass":
        rep, _ = canonical_weight(datum, lam, p)
        return cls(datum, p, rep)

    def __str__(self) -> str:
        return format_weight(self.datum, self.rep)


# -- presentations and factors ---------------------------------------------------


@dataclass(frozen=True)
class DLPresentation:
    """Parameter pair (s, mu) at a prime p; characters are not modeled."""

    datum: RootDatum
    s: tuple
    mu: tuple
    p: int


@dataclass(frozen=True)
class JHFactor:
    """One factor: canonical highest weight, its witnessing element pair,
    and the baby Verma parameter certifying nonvanishing."""

    lam: tuple
    w_tilde: AffineElt
    w_lambda: AffineElt
    bv_param: tuple


def decomposition_pairs(datum: RootDatum) -> tuple:
    """All (w_tilde, w_lambda) with w_lambda in the restricted transversal
    and w_tilde dominant below w_h * w_lambda.  Depends only on the datum;
    cached and shared by every decomposition run."""
    if "jh_pairs" not in datum.caches:
        wh = w_h(datum)
        pairs = []
        for wl in restricted_transversal(datum):
            for wt in enumerate_up_below(wh * wl):
                pairs.append((wt, wl))
        datum.caches["jh_pairs"] = tuple(pairs)
    return datum.caches["jh_pairs"]


# -- baby Verma nonvanishing -----------------------------------------------------


def baby_verma_nonzero(datum: RootDatum, bv_param, lam, p: int) -> bool:
    """Whether the baby Verma module with the given parameter admits the
    restricted simple of highest weight lam: for every finite Weyl sigma,
    sigma . (bv_param - p eta) lies below w_0 . (lam - p eta) in the
    weight-level semi-infinite order.  Wall-adjacent weights are handled
    by the point engine directly."""
    if not is_restricted_weight(datum, lam, p):
        raise NotRestricted(
            f"{format_weight(datum, lam)} is not restricted at p={p}")
    mu_t = datum.sub(bv_param, datum.smul(p, datum.eta))
    target = weyl_elt(datum, datum.w0).dot(
        datum.sub(lam, datum.smul(p, datum.eta)), p)
    if datum.copy_sums(mu_t) != datum.copy_sums(target):
        return False
    for sigma in datum.weyl():
        src = weyl_elt(datum, sigma).dot(mu_t, p)
        if not weight_up(datum, src, target, p):
            return False
    return True


def hom_nu_set(datum: RootDatum, lam, s, mu, p: int) -> tuple:
    """Translations nu with nonvanishing baby Verma summand for (s, mu, lam).

    Root components are scanned inside the a-priori window h_nu <= h_eta+1;
    central components are solved exactly from the linkage constraint on
    per-copy sums and kept only when integral.  Multiplicity values are not
    computed."""
    if not is_restricted_weight(datum, lam, p):
        raise NotRestricted(
            f"{format_weight(datum, lam)} is not restricted at p={p}")
    n = datum.n
    f = datum.f
    target = weyl_elt(datum, datum.w0).dot(
        datum.sub(lam, datum.smul(p, datum.eta)), p)
    t_sums = datum.copy_sums(target)
    mme = datum.sub(mu, datum.eta)
    m_sums = datum.copy_sums(mme)
    bound = datum.h_eta + 1

    def copy_reps():
        if n == 1:
            return [(0,)]
        reps = []
        def rec(prefix):
            if len(prefix) == n - 1:
                vec = prefix + (0,)
                if max(vec) - min(vec) <= bound:
                    reps.append(vec)
                return
            for v in range(-bound, bound + 1):
                rec(prefix + (v,))
        rec(())
        return reps

    reps = copy_reps()
    out = []
    from itertools import product as _product
    for combo in _product(reps, repeat=f):
        base = tuple(c for copy_vec in combo for c in copy_vec)
        sigma_sums = datum.copy_sums(base)
        e_vec = tuple(
            (t_sums[j] - m_sums[j]) - sigma_sums[(j + 1) % f] + p * sigma_sums[j]
            for j in range(f)
        )
        sol = _central_solve(datum, p, e_vec)
        c = tuple(-x / n for x in sol)
        if any(x.denominator != 1 for x in c):
            continue
        nu = datum.add(base, central_expand(datum, tuple(int(x) for x in c)))
        mu_tilde = datum.add(mme, _twist_minus_p(datum, s, nu, p))
        if datum.copy_sums(mu_tilde) != t_sums:
            continue
        ok = True
        for sigma in datum.weyl():
            src = weyl_elt(datum, sigma).dot(mu_tilde, p)
            if not weight_up(datum, src, target, p):
                ok = False
                break
        if ok:
            out.append(nu)
    out.sort()
    return tuple(out)


# -- the decomposition pattern ---------------------------------------------------


def jh_factors(pres: DLPresentation) -> list:
    """The generic Jordan-Holder factor set of the parameter pair.

    Requires mu - eta to lie h_eta-deep in the base scaled alcove; shallower
    parameters are refused (the uniform pattern can overcount there).  Every
    emitted factor is certified: its inner weight lies in the base alcove,
    the highest weight is restricted, its baby Verma criterion holds, and
    the pair-to-class map is injective.
    """
    d = pres.datum
    p = pres.p
    s = pres.s
    mme = d.sub(pres.mu, d.eta)
    depth = d.depth_in(mme, d.base_key(), p)
    if depth < 0:
        raise MuNotInC0(f"mu - eta outside the base alcove (depth {depth})")
    if depth < d.h_eta:
        raise MuNotDeep(depth, d.h_eta)
    factors = []
    seen = set()
    for wt, wl in decomposition_pairs(d):
        nu = wt.inverse().act(d.zero())
        inner = d.add(mme, d.act(s, d.frobenius(nu)))
        if not d.in_c0(inner, p):
            raise InternalInvariantError(
                "inner weight escaped the base alcove; decomposition bug")
        lam = wl.dot(inner, p)
        if not is_restricted_weight(d, lam, p):
            raise InternalInvariantError("factor weight is not restricted")
        rep, c = canonical_weight(d, lam, p)
        shift = translation(d, central_expand(d, tuple(-x for x in c)))
        wt2 = shift * wt
        wl2 = shift * wl
        nu2 = wt2.inverse().act(d.zero())
        if wl2.dot(d.add(mme, d.act(s, d.frobenius(nu2))), p) != rep:
            raise InternalInvariantError("canonical shift broke the factor formula")
        bv = d.add(d.add(pres.mu, _twist_minus_p(d, s, nu2, p)),
                   d.smul(p - 1, d.eta))
        if not baby_verma_nonzero(d, bv, rep, p):
            raise InternalInvariantError("emitted factor fails the baby Verma test")
        if rep in seen:
            raise InternalInvariantError("pair-to-class map is not injective")
        seen.add(rep)
        factors.append(JHFactor(rep, wt2, wl2, bv))
    factors.sort(key=lambda fac: fac.lam)
    return factors


def r_operator(datum: RootDatum, lam, p: int):
    """The regular-weight involution-style operator: the shift element's
    scaled dot action.  Defined on X_reg and mapping it to itself."""
    if not is_regular_weight(datum, lam, p):
        raise NotRegular(
            f"{format_weight(datum, lam)} is not regular restricted at p={p}")
    out = w_h(datum).dot(lam, p)
    if not is_regular_weight(datum, out, p):
        raise InternalInvariantError("R image left the regular restricted set")
    return out


def w_question(pres: DLPresentation) -> tuple:
    """Predicted weight set: classes of R applied to every factor."""
    d = pres.datum
    out = set()
    for fac in jh_factors(pres):
        if not is_regular_weight(d, fac.lam, pres.p):
            raise NotRegular(
                f"factor {format_weight(d, fac.lam)} is not regular restricted")
        out.add(WeightClass.of(d, r_operator(d, fac.lam, pres.p), pres.p))
    return tuple(sorted(out, key=lambda wc: wc.rep))


def covering_types(datum: RootDatum, lam, p: int) -> list:
    """Parameter pairs (s, mu_s) whose decomposition contains the class of
    lam, each tagged with the hypothesis that admits it.

    Hypothesis one (deep case): p > (h_eta+1)^2 and the base-alcove part of
    lam is at least vertex_hmax(w_h w_lambda)-deep; every s is admitted.
    Hypothesis two (small case): all pairings of lam_0 + eta stay below
    p - h_eta - vertex_hmax(w_h w_lambda); only s = pi(w_0 w_lambda).

    The decomposition lam = w_lambda . lam_0 is not unique: the base-alcove
    stabilizer moves lam_0 inside the alcove.  The canonical affine-Weyl
    fold is tried first; when neither hypothesis applies to it, stabilizer
    translates of the decomposition are scanned in a fixed order, which
    can shrink the pairings of lam_0 enough for the small case.
    """
    from itertools import product as _product
    from .affine_weyl import omega_delta

    p_alcove_of(datum, lam, p)  # raises SingularWeight on walls
    if not is_restricted_weight(datum, lam, p):
        raise NotRestricted(
            f"{format_weight(datum, lam)} is not restricted at p={p}")
    g, lam0 = fold_weight(datum, lam, p)
    if not is_restricted_elt(g):
        raise InternalInvariantError("regular restricted weight folded badly")
    decomps = [(g, lam0)]
    for ks in sorted(_product(range(datum.n), repeat=datum.f)):
        if any(ks):
            delta = omega_delta(datum, ks)
            decomps.append((g * delta, delta.inverse().dot(lam0, p)))
    wh = w_h(datum)
    if p > (datum.h_eta + 1) ** 2:
        for wl, l0 in decomps:
            top = wh * wl
            if datum.depth_in(l0, datum.base_key(), p) >= vertex_hmax(top):
                top_zero = top.inverse().act(datum.zero())
                return [(s, d_mu(datum, l0, s, top_zero), "hyp1")
                        for s in datum.weyl()]
    for wl, l0 in decomps:
        top = wh * wl
        bound = p - datum.h_eta - vertex_hmax(top)
        l0_eta = datum.add(l0, datum.eta)
        if all(datum.pairing(l0_eta, r) < bound for r in datum.roots):
            s_star = datum.frobenius_w(datum.w_mul(datum.w0, wl.w))
            top_zero = top.inverse().act(datum.zero())
            return [(s_star, d_mu(datum, l0, s_star, top_zero), "hyp2")]
    raise NoHypothesisApplies(
        f"neither covering hypothesis admits any Weyl element for "
        f"{format_weight(datum, lam)} at p={p}")


def d_mu(datum: RootDatum, lam0, s, top_zero):
    """mu_s = lam0 + eta - s(pi(top^{-1}(0)))."""
    return datum.sub(datum.add(lam0, datum.eta),
                     datum.act(s, datum.frobenius(top_zero)))


# -- presentation equivalence and admissibility ----------------------------------


def _twist_perm(datum: RootDatum, s):
    """Index permutation of x -> s(pi(x)) as a source map."""
    n = datum.n
    src = [0] * datum.rank
    sinv = datum.w_inv(s)
    for j in range(datum.f):
        for i in range(n):
            # output slot j*n + i receives x at pi-source of (j, sinv_j(i))
            src[j * n + i] = ((j + 1) % datum.f) * n + sinv[j][i]
    return tuple(src)


def _perm_order(src) -> int:
    from math import lcm as _lcm
    seen = [False] * len(src)
    order = 1
    for start in range(len(src)):
        if seen[start]:
            continue
        ln = 0
        t = start
        while not seen[t]:
            seen[t] = True
            t = src[t]
            ln += 1
        order = _lcm(order, ln)
    return order


def presentation_equivalent(a: DLPresentation, b: DLPresentation) -> bool:
    """Whether two parameter pairs present the same object: some sigma
    conjugates the twisted Weyl parts into each other and the weight gap is
    (p - twist)-integral.  The twist operator has finite order, so the gap
    equation is solved exactly by a geometric series."""
    if a.datum != b.datum:
        raise PrimeMismatch("presentations over different data")
    if a.p != b.p:
        raise PrimeMismatch(f"primes differ: {a.p} != {b.p}")
    d = a.datum
    p = a.p
    src = _twist_perm(d, b.s)
    order = _perm_order(src)
    denom = p**order - 1
    for sigma in d.weyl():
        tgt = d.w_mul(d.w_mul(sigma, a.s), d.w_inv(d.frobenius_w(sigma)))
        if tgt != b.s:
            continue
        dd = d.sub(b.mu, d.act(sigma, a.mu))
        acc = [Fraction(0)] * d.rank
        cur = tuple(Fraction(x) for x in dd)
        for i in range(order):
            coeff = p ** (order - 1 - i)
            acc = [u + coeff * v for u, v in zip(acc, cur)]
            cur = tuple(cur[src[k]] for k in range(d.rank))
        omega = tuple(x / denom for x in acc)
        if any(x.denominator != 1 for x in omega):
            continue
        omega = tuple(int(x) for x in omega)
        twisted = tuple(omega[src[k]] for k in range(d.rank))
        if d.sub(d.smul(p, omega), twisted) != dd:
            raise InternalInvariantError("twist-gap solution failed to verify")
        return True
    return False


def admissible_pair(datum: RootDatum, type_w, type_nu, s, mu, p: int = None) -> bool:
    """(t_nu w)^{-1} t_mu s against the eta-admissible set.  The set is a
    union of Bruhat lower intervals, so the prime plays no role."""
    lhs = translation(datum, type_nu) * weyl_elt(datum, type_w)
    rhs = translation(datum, mu) * weyl_elt(datum, s)
    return adm_contains(lhs.inverse() * rhs)


# -- weight elimination report ----------------------------------------------------


@dataclass(frozen=True)
class CoveringRow:
    s: tuple
    mu: tuple
    hypothesis: str
    admissible: bool


@dataclass(frozen=True)
class EliminationReport:
    """Combinatorial layer of weight elimination for one candidate weight:
    predicted-set membership, covering parameter pairs, and admissibility
    of each covering pair against the given presentation.  Statements that
    need Galois-theoretic input are deliberately not decided here."""

    lam: tuple
    lam_class: tuple
    in_w_question: bool
    rows: tuple


def eliminate(pres: DLPresentation, lam) -> EliminationReport:
    d = pres.datum
    p = pres.p
    p_alcove_of(d, lam, p)  # SingularWeight on walls
    if not is_restricted_weight(d, lam, p):
        raise NotRestricted(
            f"{format_weight(d, lam)} is not restricted at p={p}")
    wq = w_question(pres)
    cls = WeightClass.of(d, lam, p)
    member = cls in set(wq)
    rows = []
    for s, mu_s, tag in covering_types(d, lam, p):
        adm = admissible_pair(d, s, mu_s, pres.s, pres.mu, p)
        rows.append(CoveringRow(s, mu_s, tag, adm))
    return EliminationReport(tuple(lam), cls.rep, member, tuple(rows))
