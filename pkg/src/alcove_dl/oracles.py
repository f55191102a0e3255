"""Independent oracles and randomized lemma verifiers.

The oracles reimplement the three production orders from scratch: the
semi-infinite order by memoized recursion on lowering reflections, the
Bruhat order by a subword scan over one fixed reduced word, and convex
hull membership by exact linear programming over the full Weyl orbit.
They are deliberately slower and bounded; production code never calls
them.

The verifiers draw hypothesis-filtered random samples for the supporting
facts the engine relies on.  Sampling mixes a targeted arm (instances
built to satisfy the hypotheses, so that hit counts stay high) with a
free arm (uniform boxes, hunting for counterexamples); every sample is
checked against the literal hypotheses before it may count as a hit.
Trials are independent, seeded by a splitmix derivation from the run
seed, and merge by summation, so reports do not depend on execution
order or on the ALCOVE_DL_THREADS worker count.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import exactlp
from .affine_weyl import (
    AffineElt,
    Alcove,
    alcove_key,
    alcoves_containing_point,
    bary0,
    elt_bary,
    enumerate_up_below,
    frobenius_elt,
    identity,
    is_dominant_elt,
    is_restricted_elt,
    length,
    omega_component,
    omega_delta,
    omega_power,
    p_alcove_of,
    points_up,
    reflection,
    restricted_transversal,
    same_omega,
    translation,
    up_leq,
    vertex_hmax,
    w_h,
    weight_point,
    weight_up,
    weyl_elt,
    _dom_leq_int,
    _scale,
    _scale_den,
)
from .dl_decomposition import is_restricted_weight
from .errors import InputTooLarge, InsufficientHypothesisHits, InternalInvariantError
from .root_datum import RootDatum, format_weight

_MASK = (1 << 64) - 1
_ORACLE_BUDGET = 400000


# -- reports -------------------------------------------------------------------


@dataclass
class TrialReport:
    """Outcome of one verifier run; reproducible from (datum, p, trials, seed)."""

    lemma: str
    trials: int
    violations: int
    filtered_out: int
    seed: int
    elapsed_ms: int
    breakdown: dict = field(default_factory=dict)

    @property
    def hits(self) -> int:
        return self.trials - self.filtered_out

    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma,
            "trials": self.trials,
            "violations": self.violations,
            "filtered_out": self.filtered_out,
            "hits": self.hits,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.breakdown:
            out["breakdown"] = self.breakdown
        return out


def derive_seed(seed: int, i: int) -> int:
    """Splitmix-style per-trial seed; order-independent."""
    z = (seed + 0x9E3779B97F4A7C15 * (i + 1)) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _worker_count() -> int:
    raw = os.environ.get("ALCOVE_DL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_trials(lemma: str, trials: int, seed: int, trial_fn) -> TrialReport:
    """trial_fn(rng) returns "hit", "skip", or "viol"."""
    t0 = time.perf_counter()

    def block(lo: int, hi: int):
        viol = skip = 0
        for i in range(lo, hi):
            rng = random.Random(derive_seed(seed, i))
            res = trial_fn(rng)
            if res == "skip":
                skip += 1
            elif res == "viol":
                viol += 1
        return viol, skip

    workers = _worker_count()
    if workers == 1 or trials < 2 * workers:
        viol, skip = block(0, trials)
    else:
        from concurrent.futures import ThreadPoolExecutor

        step = (trials + workers - 1) // workers
        ranges = [(i, min(i + step, trials)) for i in range(0, trials, step)]
        viol = skip = 0
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for v, s in pool.map(lambda r: block(*r), ranges):
                viol += v
                skip += s
    elapsed = int((time.perf_counter() - t0) * 1000)
    return TrialReport(lemma, trials, viol, skip, seed, elapsed)


# -- independent oracles ---------------------------------------------------------


def conv_oracle(datum: RootDatum, nu, kappa) -> bool:
    """kappa in Conv(W nu) by exact LP feasibility over the full orbit."""
    if len(datum.weyl()) > 36:
        raise InputTooLarge("conv_oracle is bounded to |W| <= 36")
    orbit = sorted({datum.act(w, nu) for w in datum.weyl()})
    rows = [[pt[r] for pt in orbit] for r in range(datum.rank)]
    rows.append([1] * len(orbit))
    rhs = list(kappa) + [1]
    return exactlp.feasible_eq_nonneg(rows, rhs)


def _find_descent(elt: AffineElt):
    d = elt.datum
    key = alcove_key(elt)
    for i in d.simple_indices:
        if key[i] < 0:
            return reflection(d, d.roots[i], 0)
    for i in d.highest_indices:
        if key[i] >= 1:
            return reflection(d, d.roots[i], 1)
    return None


def reduced_word(elt: AffineElt) -> list:
    """A reduced expression of an affine-Weyl-group element as a list of
    wall reflections, leftmost letter first."""
    word = []
    cur = elt
    while True:
        s = _find_descent(cur)
        if s is None:
            if cur != identity(elt.datum):
                raise InternalInvariantError("length-zero element is not identity")
            return word
        word.append(s)
        cur = s * cur


def bruhat_subword_oracle(u: AffineElt, w: AffineElt, max_length: int = 6) -> bool:
    """Bruhat comparison via the lower interval of one reduced word of w.

    Builds {v : v <= w} letter by letter using the lifting identity
    {v <= s w'} = {v, s v : v <= w'}; exponential in length, hence bounded.
    """
    if not same_omega(u, w):
        return False
    _, delta = omega_component(u)
    dinv = delta.inverse()
    ua = u * dinv
    wa = w * dinv
    if length(wa) > max_length:
        raise InputTooLarge(f"subword oracle bounded to length {max_length}")
    word = reduced_word(wa)
    lower = {identity(u.datum)}
    for s in reversed(word):
        lower = lower | {s * b for b in lower}
    return ua in lower


def up_order_oracle(u: AffineElt, w: AffineElt, budget: int = _ORACLE_BUDGET) -> bool:
    """Semi-infinite comparison by memoized recursion on the definition:
    u up w iff u equals w or u lies below some one-step lowering of w."""
    if not same_omega(u, w):
        return False
    d = u.datum
    x = elt_bary(u)
    y = elt_bary(w)
    den = _scale_den(x, y)
    X = _scale(x, den)
    Y = _scale(y, den)
    memo = d.caches.setdefault("up_oracle", {})
    counter = [0]

    def rec(Z):
        if Z == X:
            return True
        key = (X, Z, den)
        if key in memo:
            return memo[key]
        counter[0] += 1
        if counter[0] > budget:
            raise InputTooLarge("up_order_oracle budget exhausted")
        if not _dom_leq_int(d, X, Z):
            memo[key] = False
            return False
        n = d.n
        res = False
        for (j, a, b) in d.roots:
            ia = j * n + a
            ib = j * n + b
            pr = Z[ia] - Z[ib]
            m_scaled = (pr // den) * den
            while True:
                c = m_scaled - pr
                Znew = list(Z)
                Znew[ia] += c
                Znew[ib] -= c
                Znew = tuple(Znew)
                if not _dom_leq_int(d, X, Znew):
                    break
                if rec(Znew):
                    res = True
                    break
                m_scaled -= den
            if res:
                break
        memo[key] = res
        return res

    return rec(Y)


# -- brute-force enumerations ---------------------------------------------------


def wall_generators(datum: RootDatum) -> tuple:
    gens = [reflection(datum, datum.roots[i], 0) for i in datum.simple_indices]
    gens.extend(reflection(datum, datum.roots[i], 1) for i in datum.highest_indices)
    return tuple(gens)


def affine_ball(datum: RootDatum, radius: int) -> tuple:
    """All affine-Weyl-group elements of length at most radius."""
    gens = wall_generators(datum)
    seen = {identity(datum)}
    frontier = [identity(datum)]
    for _ in range(radius):
        nxt = []
        for cur in frontier:
            for g in gens:
                new = g * cur
                if new not in seen and length(new) == length(cur) + 1:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return tuple(sorted(seen, key=lambda e: (length(e), alcove_key(e))))


def adm_ball_oracle(datum: RootDatum) -> tuple:
    """The eta-admissible set by brute force: scan the length ball in the
    coset of t_eta and compare against every t_{sigma(eta)} with the
    subword oracle."""
    t_eta = translation(datum, datum.eta)
    bound = length(t_eta)
    delta = omega_delta(datum, datum.copy_sums(datum.eta))
    targets = [
        translation(datum, datum.act(s, datum.eta)) for s in datum.weyl()
    ]
    out = []
    for b in affine_ball(datum, bound):
        cand = b * delta
        if any(bruhat_subword_oracle(cand, t, max_length=bound) for t in targets):
            out.append(cand)
    return tuple(out)


def dominant_slab(datum: RootDatum, radius: int) -> tuple:
    """Dominant-image elements whose alcove barycenter is dominance-bounded
    by bary(base) + radius * (highest root, per copy).  Raising search is
    complete here because every dominant alcove sits above the base one."""
    n = datum.n
    b0 = bary0(datum)
    bound = list(b0)
    for j in range(datum.f):
        if n >= 2:
            bound[j * n] += radius
            bound[j * n + n - 1] -= radius
    den = _scale_den(b0, tuple(bound))
    B = _scale(tuple(bound), den)
    start = identity(datum)
    Z0 = _scale(b0, den)
    found = {Z0: start}
    stack = [(start, Z0)]
    while stack:
        cur, Z = stack.pop()
        for root in datum.roots:
            j, a, b = root
            ia = j * n + a
            ib = j * n + b
            pr = Z[ia] - Z[ib]
            m_scaled = (pr // den + 1) * den
            while True:
                c = m_scaled - pr
                Znew = list(Z)
                Znew[ia] += c
                Znew[ib] -= c
                Znew = tuple(Znew)
                if not _dom_leq_int(datum, Znew, B):
                    break
                if Znew not in found:
                    new = reflection(datum, root, m_scaled // den) * cur
                    found[Znew] = new
                    stack.append((new, Znew))
                m_scaled += den
    out = [e for e in found.values() if is_dominant_elt(e)]
    out.sort(key=alcove_key)
    return tuple(out)


def generic_pair_count_oracle(datum: RootDatum) -> int:
    """Brute-force count of decomposition pairs, bypassing the production
    enumerations: box scans for the restricted transversal and for dominant
    elements, with the recursive oracle deciding the semi-infinite order."""
    n = datum.n
    wh = w_h(datum)
    # restricted transversal by raw scan: translations with coordinates in
    # [-n, n], per-copy sums in [0, n), every finite part
    from itertools import product as _product

    def box_elements(radius):
        coords = range(-radius, radius + 1)
        for nu in _product(coords, repeat=datum.rank):
            for w in datum.weyl():
                yield AffineElt(datum, tuple(nu), w)

    transversal = {}
    for elt in box_elements(n):
        sums = datum.copy_sums(elt.nu)
        if not all(0 <= s < n for s in sums):
            continue
        if not is_restricted_elt(elt):
            continue
        transversal.setdefault((alcove_key(elt), sums), elt)
    total = 0
    h = datum.h_eta
    for (_, _), wl in sorted(transversal.items()):
        top = wh * wl
        seen_alcoves = set()
        for elt in box_elements(h + 2):
            if not same_omega(elt, top):
                continue
            if not is_dominant_elt(elt):
                continue
            key = alcove_key(elt)
            if key in seen_alcoves:
                continue
            if up_order_oracle(elt, top):
                seen_alcoves.add(key)
        total += len(seen_alcoves)
    return total


# -- samplers --------------------------------------------------------------------


def rand_fraction(rng, lo: int, hi: int, max_den: int = 16) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_point_closed_base(rng, datum: RootDatum, central: bool = True):
    """Rational convex combination of base-alcove vertices per copy, with
    denominators at most 16; optionally shifted along central directions."""
    point = [Fraction(0)] * datum.rank
    for j in range(datum.f):
        den = rng.randint(1, 16)
        cuts = sorted(rng.randint(0, den) for _ in range(datum.n - 1)) if datum.n > 1 else []
        weights = []
        prev = 0
        for c in cuts:
            weights.append(c - prev)
            prev = c
        weights.append(den - prev)
        for w_i, v in zip(weights, datum.vertices[j]):
            if w_i:
                q = Fraction(w_i, den)
                for t in range(datum.rank):
                    if v[t]:
                        point[t] += q * v[t]
    if central and rng.random() < 0.5:
        for j in range(datum.f):
            off = rand_fraction(rng, -2, 2, 8)
            for i in range(datum.n):
                point[j * datum.n + i] += off
    return tuple(point)


def rand_weyl(rng, datum: RootDatum):
    return rng.choice(datum.weyl())


def rand_element(rng, datum: RootDatum, box: int = 2) -> AffineElt:
    nu = tuple(rng.randint(-box, box) for _ in range(datum.rank))
    return AffineElt(datum, nu, rand_weyl(rng, datum))


def rand_dominant_small(rng, datum: RootDatum, lo: int = 0, hi: int = 2):
    out = []
    for _ in range(datum.f):
        coords = sorted((rng.randint(lo, hi) for _ in range(datum.n)), reverse=True)
        out.extend(coords)
    return tuple(out)


def rand_conv_lattice_point(rng, datum: RootDatum, nu):
    """A lattice point of Conv(W nu), by rejection inside the coordinate box."""
    n = datum.n
    for _ in range(64):
        kappa = []
        ok = True
        for j in range(datum.f):
            copy = nu[j * n : (j + 1) * n]
            lo, hi, s = min(copy), max(copy), sum(copy)
            coords = [rng.randint(lo, hi) for _ in range(n - 1)]
            last = s - sum(coords)
            if not lo <= last <= hi:
                ok = False
                break
            kappa.extend(coords + [last])
        if ok and datum.conv_contains(nu, tuple(kappa)):
            return tuple(kappa)
    return datum.act(rand_weyl(rng, datum), nu)


def rand_weight_pairings(rng, datum: RootDatum, p: int, min_margin: int = 1):
    """A weight y with every positive-root pairing in (min_margin-1, p-min_margin+1),
    i.e. y - eta is (min_margin-1)-deep in the base scaled alcove.  Returns
    None when the sampler cannot satisfy the margins."""
    n = datum.n
    lo = min_margin
    hi = p - min_margin
    if lo > hi or (n >= 2 and (n - 1) * lo > hi):
        return None
    for _ in range(256):
        out = []
        ok = True
        for _ in range(datum.f):
            diffs = [rng.randint(lo, max(lo, hi // max(1, n - 1))) for _ in range(n - 1)]
            for a in range(n - 1):
                run = 0
                for b in range(a, n - 1):
                    run += diffs[b]
                    if not lo <= run <= hi:
                        ok = False
            if not ok:
                break
            base = rng.randint(-3, 3)
            coords = [base] * n
            for i in range(n - 2, -1, -1):
                coords[i] = coords[i + 1] + diffs[i]
            out.extend(coords)
        if ok:
            return tuple(out)
    return None


def rand_c0_weight(rng, datum: RootDatum, p: int, depth: int = 0):
    """A weight lam with lam depth-deep in the base scaled alcove."""
    y = rand_weight_pairings(rng, datum, p, min_margin=depth + 1)
    if y is None:
        return None
    return datum.sub(y, datum.eta)


def rand_restricted(rng, datum: RootDatum, p: int):
    """A restricted weight: simple pairings in [0, p-1]."""
    n = datum.n
    out = []
    for _ in range(datum.f):
        base = rng.randint(-3, 3)
        coords = [base] * n
        for i in range(n - 2, -1, -1):
            coords[i] = coords[i + 1] + rng.randint(0, p - 1)
        out.extend(coords)
    return tuple(out)


def rand_closed_c0_weight(rng, datum: RootDatum, p: int):
    """A weight in the closure of the base scaled alcove (walls allowed)."""
    n = datum.n
    for _ in range(256):
        out = []
        ok = True
        for _ in range(datum.f):
            diffs = [rng.randint(0, p // max(1, n - 1)) for _ in range(n - 1)]
            for a in range(n - 1):
                run = 0
                for b in range(a, n - 1):
                    run += diffs[b]
                    if run > p:
                        ok = False
            if not ok:
                break
            base = rng.randint(-3, 3)
            coords = [base] * n
            for i in range(n - 2, -1, -1):
                coords[i] = coords[i + 1] + diffs[i]
            out.extend(coords)
        if ok:
            return datum.sub(tuple(out), datum.eta)
    return None


def rand_h_bounded(rng, datum: RootDatum, bound: Fraction):
    """A rational vector eps with h_eps <= bound."""
    raw = tuple(rand_fraction(rng, -2, 2, 8) for _ in range(datum.rank))
    h = datum.h_max(raw)
    if h == 0:
        return raw
    scale = bound * Fraction(rng.randint(0, 8), 8) / h
    return tuple(scale * c for c in raw)


def weight_raise_random(rng, datum: RootDatum, lam, p: int, steps: int):
    """Applies up to `steps` raising dot-reflections to a weight."""
    z = tuple(lam)
    for _ in range(steps):
        root = datum.roots[rng.randrange(len(datum.roots))]
        v = datum.pairing(datum.add(z, datum.eta), root)
        m = v // p + 1 + rng.randint(0, 1)
        coeff = m * p - v
        j, a, b = root
        zl = list(z)
        zl[j * datum.n + a] += coeff
        zl[j * datum.n + b] -= coeff
        z = tuple(zl)
    return z


def elt_lower_random(rng, elt: AffineElt, steps: int) -> AffineElt:
    """Applies up to `steps` lowering reflections to an element's alcove."""
    d = elt.datum
    cur = elt
    for _ in range(steps):
        bary = elt_bary(cur)
        root = d.roots[rng.randrange(len(d.roots))]
        v = d.pairing(bary, root)
        m = v.__floor__() - rng.randint(0, 1)
        cur = reflection(d, root, m) * cur
    return cur


# -- lemma verifiers --------------------------------------------------------------


def verify_convex(datum: RootDatum, trials: int, seed: int) -> TrialReport:
    """Chamber folding stays inside the convex hull of the perturbation."""

    def trial(rng):
        w = rand_weyl(rng, datum)
        xd = []
        for _ in range(datum.f):
            coords = sorted(
                (rand_fraction(rng, 0, 4) for _ in range(datum.n)), reverse=True
            )
            xd.extend(coords)
        x = datum.act(w, tuple(xd))
        eps = tuple(rand_fraction(rng, -2, 2) for _ in range(datum.rank))
        z = datum.add(x, eps)
        zplus, _ = datum.dominization(z)
        eps_prime = datum.sub(datum.act(w, zplus), x)
        eplus, _ = datum.dominization(eps)
        return "hit" if datum.conv_contains(eplus, eps_prime) else "viol"

    return _run_trials("convex", trials, seed, trial)


def verify_barycenter(datum: RootDatum, trials: int, seed: int) -> TrialReport:
    """Points of the closed base alcove are either h-small or sit at
    distance >= 1/(h_eta+1) from some simple wall."""
    h = datum.h_eta
    small = Fraction(h, h + 1)
    margin = Fraction(1, h + 1)

    def trial(rng):
        x = rand_point_closed_base(rng, datum)
        if datum.h_max(x) <= small:
            return "hit"
        for i in datum.simple_indices:
            if datum.pairing(x, datum.roots[i]) >= margin:
                return "hit"
        return "viol"

    return _run_trials("barycenter", trials, seed, trial)


def verify_facet(datum: RootDatum, trials: int, seed: int) -> TrialReport:
    """An h-small perturbation of a closed-alcove point lands in the closure
    of an adjacent alcove."""
    bound = Fraction(1, datum.h_eta + 1)

    def vertex_sets(elt):
        n = datum.n
        return [
            {elt.act(v)[j * n : (j + 1) * n] for v in datum.vertices[j]}
            for j in range(datum.f)
        ]

    def closures_meet(a: AffineElt, b: AffineElt) -> bool:
        if datum.n == 1:
            return True
        for sa, sb in zip(vertex_sets(a), vertex_sets(b)):
            if not sa & sb:
                return False
        return True

    def trial(rng):
        g = identity(datum)
        for _ in range(rng.randint(0, 4)):
            root = datum.roots[rng.randrange(len(datum.roots))] if datum.roots else None
            if root is None:
                break
            g = reflection(datum, root, rng.randint(-2, 2)) * g
        x = g.act(rand_point_closed_base(rng, datum))
        eps = rand_h_bounded(rng, datum, bound)
        z = datum.add(x, eps)
        for cand in alcoves_containing_point(datum, z):
            if closures_meet(cand, g):
                return "hit"
        return "viol"

    return _run_trials("facet", trials, seed, trial)


def verify_apriori(datum: RootDatum, p: int, trials: int, seed: int) -> TrialReport:
    """Translation size of elements passing the two ordering hypotheses is
    bounded by h_eta + 1, and by h_eta in the 1-deep case."""
    wh = w_h(datum)

    def trial(rng):
        s = rand_weyl(rng, datum)
        if rng.random() < 0.5:
            wl = rng.choice(restricted_transversal(datum))
            wt = rng.choice(enumerate_up_below(wh * wl))
            mu_base = rand_c0_weight(rng, datum, p, depth=rng.randint(0, datum.h_eta))
            if mu_base is None:
                return "skip"
            mu = datum.add(mu_base, datum.eta)
            nu = wt.inverse().act(datum.zero())
            lam = wl.dot(datum.add(mu_base, datum.act(s, datum.frobenius(nu))), p)
        else:
            wt = rand_element(rng, datum, box=2)
            mu_base = rand_c0_weight(rng, datum, p)
            if mu_base is None:
                return "skip"
            mu = datum.add(mu_base, datum.eta)
            lam = rand_restricted(rng, datum, p)
        if not datum.in_c0(datum.sub(mu, datum.eta), p):
            return "skip"
        if not is_restricted_weight(datum, lam, p):
            return "skip"
        nu = wt.inverse().act(datum.zero())
        inner = datum.add(datum.sub(mu, datum.eta), datum.act(s, datum.frobenius(nu)))
        x1 = wt.dot(inner, p)
        if not datum.is_dominant(datum.add(x1, datum.eta)):
            return "skip"
        if not datum.dominance_leq(x1, wh.dot(lam, p)):
            return "skip"
        h_fwd = datum.h_max(wt.act(datum.zero()))
        h_bwd = datum.h_max(nu)
        if h_fwd != h_bwd or h_fwd > datum.h_eta + 1:
            return "viol"
        deep = (
            datum.depth_in(datum.sub(mu, datum.eta), datum.base_key(), p) >= 1
            or datum.alcove_depth(lam, p) >= 1
        )
        if deep and h_fwd > datum.h_eta:
            return "viol"
        return "hit"

    return _run_trials("apriori", trials, seed, trial)


def verify_packet(datum: RootDatum, p: int, trials: int, seed: int) -> TrialReport:
    """When lam + p nu lies below lam' + pi(nu') in the weight order, the
    translation nu is bounded by the vertex maximum of w_h w_lambda."""
    wh = w_h(datum)

    def trial(rng):
        lam0 = rand_c0_weight(rng, datum, p)
        if lam0 is None:
            return "skip"
        wl = rng.choice(restricted_transversal(datum))
        if rng.random() < 0.3:
            wl = translation(datum, tuple(
                c for j in range(datum.f)
                for c in [rng.randint(-1, 1)] * datum.n)) * wl
        lam = wl.dot(lam0, p)
        arm = rng.random()
        if arm < 0.3:
            nu = datum.zero()
            nup = datum.zero()
            lamp = weight_raise_random(rng, datum, lam, p, rng.randint(0, 2))
        elif arm < 0.55:
            c = rng.randint(0, 2)
            nu = tuple(c for _ in range(datum.rank))
            nup = nu
            lamp = datum.sub(datum.add(lam, datum.smul(p, nu)), datum.frobenius(nup))
        elif arm < 0.8:
            nu = rand_dominant_small(rng, datum, 0, 2)
            nup = rand_conv_lattice_point(rng, datum, nu)
            z = weight_raise_random(
                rng, datum, datum.add(lam, datum.smul(p, nu)), p, rng.randint(0, 1)
            )
            lamp = datum.sub(z, datum.frobenius(nup))
        else:
            nu = rand_dominant_small(rng, datum, 0, 2)
            nup = rand_conv_lattice_point(rng, datum, nu)
            lamp = rand_restricted(rng, datum, p)
        if not is_restricted_weight(datum, lamp, p):
            return "skip"
        if not datum.is_dominant(nu):
            return "skip"
        if not datum.conv_contains(datum.dominization(nu)[0], nup):
            return "skip"
        lhs = datum.add(lam, datum.smul(p, nu))
        rhs = datum.add(lamp, datum.frobenius(nup))
        if not weight_up(datum, lhs, rhs, p):
            return "skip"
        m = vertex_hmax(wh * wl)
        if not (datum.h_max(nu) <= m <= datum.h_eta):
            return "viol"
        return "hit"

    return _run_trials("packet", trials, seed, trial)


def verify_presentation(datum: RootDatum, p: int, trials: int, seed: int) -> TrialReport:
    """A twisted-gap relation between deep parameters forces the connecting
    element into the base-alcove stabilizer."""
    zero_key = datum.base_key()

    def trial(rng):
        m = rng.randint(0, 3)
        if not datum.validate_depth_feasible(m, p):
            m = 0
        mu_base = rand_c0_weight(rng, datum, p, depth=m)
        if mu_base is None:
            return "skip"
        mu = datum.add(mu_base, datum.eta)
        s = rand_weyl(rng, datum)
        if rng.random() < 0.4:
            delta = identity(datum)
            for j in range(datum.f):
                delta = delta * omega_power(datum, j, rng.randint(-1, 1))
            sigma = delta.w
            nu = delta.nu
        else:
            sigma = rand_weyl(rng, datum)
            nu = tuple(rng.randint(-2, 2) for _ in range(datum.rank))
        cand = datum.sub(
            datum.add(datum.act(sigma, mu), datum.smul(p, nu)),
            datum.add(datum.act(s, datum.frobenius(nu)), datum.eta),
        )
        if datum.depth_in(cand, zero_key, p) < -m + 1:
            return "skip"
        elt = translation(datum, nu) * weyl_elt(datum, sigma)
        return "hit" if alcove_key(elt) == zero_key else "viol"

    return _run_trials("presentation", trials, seed, trial)


def verify_lap(datum: RootDatum, p: int, trials: int, seed: int) -> TrialReport:
    """Linkage plus a coset condition pin the base-alcove parameter, and for
    interior parameters transfer to the element-level order."""

    def trial(rng):
        if rng.random() < 0.6:
            lam0 = rand_closed_c0_weight(rng, datum, p)
            mu0 = lam0
            v_mu = rand_element(rng, datum, box=2)
            v_lam = elt_lower_random(rng, v_mu, rng.randint(0, 3))
            wlam = frobenius_elt(datum, v_lam, 1)
            wmu = frobenius_elt(datum, v_mu, 1)
        else:
            lam0 = rand_closed_c0_weight(rng, datum, p)
            mu0 = rand_closed_c0_weight(rng, datum, p)
            wlam = rand_element(rng, datum, box=2)
            wmu = rand_element(rng, datum, box=2)
        if lam0 is None or mu0 is None:
            return "skip"
        lhs = frobenius_elt(datum, wlam, -1).dot(lam0, p)
        rhs = frobenius_elt(datum, wmu, -1).dot(mu0, p)
        if not weight_up(datum, lhs, rhs, p):
            return "skip"
        if datum.copy_sums(datum.add(lam0, wlam.nu)) != datum.copy_sums(
            datum.add(mu0, wmu.nu)
        ):
            return "skip"
        if lam0 != mu0:
            return "viol"
        if not weight_up(
            datum,
            frobenius_elt(datum, wlam, -1).dot(lam0, p),
            frobenius_elt(datum, wmu, -1).dot(lam0, p),
            p,
        ):
            return "viol"
        if datum.depth_in(lam0, datum.base_key(), p) >= 0:
            if not up_leq(wlam, wmu):
                return "viol"
        return "hit"

    return _run_trials("lap", trials, seed, trial)


# -- the three covering-construction lemmas ---------------------------------------


def _alcove_elements_of_weight(datum: RootDatum, lam, p: int):
    """Affine-Weyl elements u with lam in the closure of u . C_0."""
    return alcoves_containing_point(datum, weight_point(datum, lam, p))


def _restricted_cands(datum: RootDatum, lam, p: int, coset_elt: AffineElt):
    """Restricted elements in the coset of coset_elt whose closed alcove
    contains lam."""
    delta = omega_delta(datum, datum.copy_sums(coset_elt.nu))
    out = []
    for u in _alcove_elements_of_weight(datum, lam, p):
        cand = u * delta
        if is_restricted_elt(cand):
            out.append(cand)
    return out


def _in_weyl_orbit_alcove(datum: RootDatum, x, p: int, base: AffineElt) -> bool:
    """x in base * W . C_0 (open alcoves)."""
    try:
        target = p_alcove_of(datum, x, p)
    except Exception:
        return False
    for w in datum.weyl():
        if alcove_key(base * weyl_elt(datum, w)) == target.key:
            return True
    return False


def _section5_samples(rng, datum: RootDatum, p: int, wh: AffineElt):
    """Shared sample skeleton for the covering lemmas."""
    s = rand_weyl(rng, datum)
    lam0 = rand_c0_weight(rng, datum, p, depth=rng.choice([0, 0, 1, datum.h_eta]))
    if lam0 is None:
        return None
    wl = rng.choice(restricted_transversal(datum))
    arm = rng.random()
    if arm < 0.4:
        nu = datum.zero()
    elif arm < 0.7:
        c = rng.randint(0, 1)
        nu = tuple(c for _ in range(datum.rank))
    else:
        nu = rand_dominant_small(rng, datum, 0, 1)
    nup = nu if arm < 0.7 else rand_conv_lattice_point(rng, datum, nu)
    tnu_wl = translation(datum, nu) * wl
    base = tnu_wl.dot(lam0, p)
    if rng.random() < 0.7:
        lamp = datum.sub(
            weight_raise_random(rng, datum, base, p, rng.randint(0, 1)),
            datum.frobenius(nup),
        )
    else:
        lamp = rand_restricted(rng, datum, p)
    if rng.random() < 0.7:
        wt = wh * tnu_wl
    else:
        wt = rand_element(rng, datum, box=2)
    return s, lam0, wl, nu, nup, tnu_wl, lamp, wt


def _verify_vertex_trial(rng, datum, p, wh):
    sample = _section5_samples(rng, datum, p, wh)
    if sample is None:
        return "skip"
    s, lam0, wl, nu, nup, tnu_wl, lamp, wt = sample
    if not is_restricted_weight(datum, lamp, p):
        return "skip"
    if not datum.conv_contains(datum.dominization(nu)[0], nup):
        return "skip"
    if not weight_up(datum, tnu_wl.dot(lam0, p),
                     datum.add(lamp, datum.frobenius(nup)), p):
        return "skip"
    # conditional hypothesis on every admissible restricted candidate
    for cand in _restricted_cands(datum, lamp, p, tnu_wl):
        if not _in_weyl_orbit_alcove(
            datum, datum.add(lamp, datum.frobenius(nup)), p, cand
        ):
            return "skip"
        if not up_leq(tnu_wl, cand):
            return "skip"
    top_zero = (wh * wl).inverse().act(datum.zero())
    inner = datum.add(
        datum.sub(lam0, datum.act(s, datum.frobenius(top_zero))),
        datum.act(s, datum.frobenius(wt.inverse().act(datum.zero()))),
    )
    if not datum.in_c0(inner, p):
        return "skip"
    x4 = wt.dot(inner, p)
    if not datum.is_dominant(datum.add(x4, datum.eta)):
        return "skip"
    if not weight_up(datum, x4, wh.dot(lamp, p), p):
        return "skip"
    # conclusions: nu is central and the shifted weights agree
    n = datum.n
    central = all(
        nu[j * n + i] == nu[j * n] for j in range(datum.f) for i in range(n)
    )
    if not central:
        return "viol"
    if tnu_wl.dot(lam0, p) != datum.add(lamp, datum.frobenius(nu)):
        return "viol"
    return "hit"


def _verify_anydirection_trial(rng, datum, p, wh):
    sample = _section5_samples(rng, datum, p, wh)
    if sample is None:
        return "skip"
    s, lam0, wl, nu, nup, tnu_wl, lamp, wt = sample
    m = vertex_hmax(wh * wl)
    if datum.depth_in(lam0, datum.base_key(), p) < m:
        return "skip"
    if not is_restricted_weight(datum, lamp, p):
        return "skip"
    if not datum.conv_contains(datum.dominization(nu)[0], nup):
        return "skip"
    if not weight_up(datum, tnu_wl.dot(lam0, p),
                     datum.add(lamp, datum.frobenius(nup)), p):
        return "skip"
    top_zero = (wh * wl).inverse().act(datum.zero())
    inner = datum.add(
        datum.sub(lam0, datum.act(s, datum.frobenius(top_zero))),
        datum.act(s, datum.frobenius(wt.inverse().act(datum.zero()))),
    )
    x = wt.dot(inner, p)
    if not datum.is_dominant(datum.add(x, datum.eta)):
        return "skip"
    if not weight_up(datum, x, wh.dot(lamp, p), p):
        return "skip"
    cands = _restricted_cands(datum, lamp, p, tnu_wl)
    if len(cands) != 1:
        return "skip"
    wlp = cands[0]
    try:
        a1 = p_alcove_of(datum, lamp, p)
        a2 = p_alcove_of(datum, datum.add(lamp, datum.frobenius(nup)), p)
    except Exception:
        return "viol"
    if a1 != a2:
        return "viol"
    if not datum.in_c0(inner, p):
        return "viol"
    if not up_leq(tnu_wl, wlp):
        return "viol"
    return "hit"


def _verify_domdirection_trial(rng, datum, p, wh):
    sample = _section5_samples(rng, datum, p, wh)
    if sample is None:
        return "skip"
    s, lam0, wl, nu, nup, tnu_wl, lamp, wt = sample
    m = vertex_hmax(wh * wl)
    bound = p - datum.h_eta - m
    lam0_eta = datum.add(lam0, datum.eta)
    if not all(datum.pairing(lam0_eta, r) < bound for r in datum.roots):
        return "skip"
    if not is_restricted_weight(datum, lamp, p):
        return "skip"
    if not datum.conv_contains(datum.dominization(nu)[0], nup):
        return "skip"
    if not weight_up(datum, tnu_wl.dot(lam0, p),
                     datum.add(lamp, datum.frobenius(nup)), p):
        return "skip"
    wh_wl_zero = (wh * wl).act(datum.zero())
    w0wl = datum.w_mul(datum.w0, wl.w)
    inner = datum.add(
        lam0,
        datum.add(
            datum.frobenius(wh_wl_zero),
            datum.frobenius(datum.act(w0wl, wt.inverse().act(datum.zero()))),
        ),
    )
    x = wt.dot(inner, p)
    if not datum.is_dominant(datum.add(x, datum.eta)):
        return "skip"
    if not weight_up(datum, x, wh.dot(lamp, p), p):
        return "skip"
    cands = _restricted_cands(datum, lamp, p, tnu_wl)
    if len(cands) != 1:
        return "skip"
    wlp = cands[0]
    if not _in_weyl_orbit_alcove(
        datum, datum.add(lamp, datum.frobenius(nup)), p, wlp
    ):
        return "viol"
    if not datum.in_c0(inner, p):
        return "viol"
    if not up_leq(tnu_wl, wlp):
        return "viol"
    return "hit"


def verify_section5(datum: RootDatum, p: int, trials: int, seed: int) -> TrialReport:
    """Runs the three covering-construction lemma verifiers, `trials` each.
    The middle lemma needs p > (h_eta+1)^2 and is skipped otherwise."""
    wh = w_h(datum)
    offsets = {"vertex": 1, "anydirection": 2, "domdirection": 3}
    subs = [("vertex", _verify_vertex_trial)]
    if p > (datum.h_eta + 1) ** 2:
        subs.append(("anydirection", _verify_anydirection_trial))
    subs.append(("domdirection", _verify_domdirection_trial))
    t0 = time.perf_counter()
    total_viol = 0
    total_skip = 0
    breakdown = {}
    for name, fn in subs:
        rep = _run_trials(
            name,
            trials,
            seed * 8 + offsets[name],
            lambda rng, f=fn: f(rng, datum, p, wh),
        )
        breakdown[name] = {"hits": rep.hits, "violations": rep.violations}
        total_viol += rep.violations
        total_skip += rep.filtered_out
    ran = trials * len(subs)
    elapsed = int((time.perf_counter() - t0) * 1000)
    report = TrialReport("section5", ran, total_viol, total_skip, seed, elapsed,
                         breakdown)
    for name, stats in breakdown.items():
        if stats["hits"] == 0:
            raise InsufficientHypothesisHits(
                f"no hypothesis-satisfying samples for {name}")
    return report


VERIFIERS = {
    "convex": lambda datum, p, trials, seed: verify_convex(datum, trials, seed),
    "barycenter": lambda datum, p, trials, seed: verify_barycenter(datum, trials, seed),
    "facet": lambda datum, p, trials, seed: verify_facet(datum, trials, seed),
    "apriori": verify_apriori,
    "packet": verify_packet,
    "presentation": verify_presentation,
    "lap": verify_lap,
    "section5": verify_section5,
}
