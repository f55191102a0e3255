"""Extended affine Weyl group, alcove keys, Bruhat and semi-infinite orders.

Elements t_nu * w act on the character lattice by x -> nu + w(x).  All
alcove combinatorics is run in normalized coordinates x -> (x + eta)/p, so
one engine serves the standard and the p-scaled arrangements: the scaled
action on scaled alcoves corresponds to the plain affine action on plain
alcoves, and alcove keys agree.

The semi-infinite order is decided on exact rational points: a raising
step reflects a point across a hyperplane strictly above it.  Applied to
alcove barycenters this is the alcove order; applied to normalized weights
it is the weight-level order, including weights on walls.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from . import exactlp
from .errors import InternalInvariantError, ParseError, SingularWeight
from .root_datum import RootDatum, format_weight, parse_weight, root_label

_FOLD_GUARD = 100000


@dataclass(frozen=True)
class AffineElt:
    """t_nu * w with nu in the character lattice and w a finite Weyl element."""

    datum: RootDatum
    nu: tuple
    w: tuple

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        d = self.datum
        if other.datum != d:
            raise ValueError("cannot multiply elements over different data")
        return AffineElt(d, d.add(self.nu, d.act(self.w, other.nu)),
                         d.w_mul(self.w, other.w))

    def inverse(self) -> "AffineElt":
        d = self.datum
        winv = d.w_inv(self.w)
        return AffineElt(d, d.neg(d.act(winv, self.nu)), winv)

    def act(self, x):
        """Affine action x -> nu + w(x); exact on integer or Fraction tuples."""
        d = self.datum
        return d.add(self.nu, d.act(self.w, x))

    def dot(self, lam, p: int):
        """Scaled dot action: p*nu + w(lam + eta) - eta."""
        d = self.datum
        return d.sub(d.add(d.smul(p, self.nu), d.act(self.w, d.add(lam, d.eta))),
                     d.eta)

    def is_identity(self) -> bool:
        return self == identity(self.datum)

    def __str__(self) -> str:
        return elt_str(self)


def identity(datum: RootDatum) -> AffineElt:
    return AffineElt(datum, datum.zero(), datum.id_w)


def translation(datum: RootDatum, nu) -> AffineElt:
    return AffineElt(datum, tuple(nu), datum.id_w)


def weyl_elt(datum: RootDatum, w) -> AffineElt:
    return AffineElt(datum, datum.zero(), tuple(w))


def reflection(datum: RootDatum, root, m: int) -> AffineElt:
    """s_{alpha,m} = t_{m*alpha} s_alpha, the reflection in <x,a_vee> = m."""
    j, a, b = root
    nu = [0] * datum.rank
    nu[j * datum.n + a] = m
    nu[j * datum.n + b] = -m
    perm = list(range(datum.n))
    perm[a], perm[b] = perm[b], perm[a]
    w = tuple(tuple(perm) if t == j else datum.id_w[t] for t in range(datum.f))
    return AffineElt(datum, tuple(nu), w)


def w_h(datum: RootDatum) -> AffineElt:
    """w_0 t_{-eta}, the shift element of the restricted region."""
    return weyl_elt(datum, datum.w0) * translation(datum, datum.neg(datum.eta))


def frobenius_elt(datum: RootDatum, elt: AffineElt, power: int = 1) -> AffineElt:
    return AffineElt(datum, datum.frobenius(elt.nu, power),
                     datum.frobenius_w(elt.w, power))


# -- alcove keys ---------------------------------------------------------------


def alcove_key(elt: AffineElt) -> tuple:
    """Key of the image of the base alcove, indexed like datum.roots."""
    d = elt.datum
    n = d.n
    winv = d.w_inv(elt.w)
    key = []
    for (j, a, b) in d.roots:
        k = elt.nu[j * n + a] - elt.nu[j * n + b]
        if winv[j][a] > winv[j][b]:
            k -= 1
        key.append(k)
    return tuple(key)


@dataclass(frozen=True)
class Alcove:
    """An alcove named by its integer key (k_alpha over positive roots)."""

    datum: RootDatum
    key: tuple

    @classmethod
    def base(cls, datum: RootDatum) -> "Alcove":
        return cls(datum, datum.base_key())

    @classmethod
    def of_element(cls, elt: AffineElt) -> "Alcove":
        return cls(elt.datum, alcove_key(elt))

    def is_dominant(self) -> bool:
        return all(k >= 0 for k in self.key)

    def is_restricted(self) -> bool:
        return all(self.key[i] == 0 for i in self.datum.simple_indices)

    def validate(self) -> bool:
        """Geometric consistency: within every copy, the key of a root
        e_a - e_c must be the sum over a chain a < b < c, or that sum
        plus one.  Equivalent to the strict system having a solution."""
        d = self.datum
        for j in range(d.f):
            for a in range(d.n):
                for b in range(a + 1, d.n):
                    for c in range(b + 1, d.n):
                        s = (self.key[d.root_index[(j, a, b)]]
                             + self.key[d.root_index[(j, b, c)]])
                        if self.key[d.root_index[(j, a, c)]] not in (s, s + 1):
                            return False
        return True

    def interior_point(self):
        """An exact interior point, found by rational linear programming.

        Every true alcove admits a point with margin 1/n from all walls
        (the barycenter does), so a margin of 1/(2n) is always feasible.
        Returns None when the key is inconsistent.
        """
        d = self.datum
        t = Fraction(1, 2 * d.n)
        rows = []
        lo = []
        hi = []
        for i, (j, a, b) in enumerate(d.roots):
            row = [Fraction(0)] * d.rank
            row[j * d.n + a] = Fraction(1)
            row[j * d.n + b] = Fraction(-1)
            rows.append(row)
            lo.append(self.key[i] + t)
            hi.append(self.key[i] + 1 - t)
        if not rows:
            return tuple(Fraction(0) for _ in range(d.rank))
        return exactlp.feasible_ineq(rows, lo, hi, d.rank)

    def as_json(self) -> dict:
        return {root_label(r): self.key[i] for i, r in enumerate(self.datum.roots)}


def is_dominant_elt(elt: AffineElt) -> bool:
    return all(k >= 0 for k in alcove_key(elt))


def is_restricted_elt(elt: AffineElt) -> bool:
    """Whether the image of the base alcove is restricted (key zero on all
    simple roots).  Agrees with the dominant-pair characterization through
    the shift element; that equivalence is exercised by the test suite."""
    key = alcove_key(elt)
    return all(key[i] == 0 for i in elt.datum.simple_indices)


def length(elt: AffineElt) -> int:
    """Separating-hyperplane count between the base alcove and its image."""
    return sum(abs(k) for k in alcove_key(elt))


def p_alcove_of(datum: RootDatum, lam, p: int) -> Alcove:
    """Key of the scaled alcove containing lam; the weight must be regular."""
    lp = datum.add(lam, datum.eta)
    key = []
    for root in datum.roots:
        v = datum.pairing(lp, root)
        if v % p == 0:
            raise SingularWeight(
                f"pairing {v} at root {root_label(root)} divisible by {p}")
        key.append(v // p)
    return Alcove(datum, tuple(key))


# -- the stabilizer of the base alcove ----------------------------------------


def omega_generator(datum: RootDatum, j: int) -> AffineElt:
    """Length-zero generator for copy j: t_{e_0} followed by the n-cycle."""
    nu = [0] * datum.rank
    nu[j * datum.n] = 1
    cyc = tuple((i + 1) % datum.n for i in range(datum.n))
    w = tuple(cyc if t == j else datum.id_w[t] for t in range(datum.f))
    return AffineElt(datum, tuple(nu), w)


def omega_power(datum: RootDatum, j: int, k: int) -> AffineElt:
    cache = datum.caches.setdefault("omega_pow", {})
    if (j, k) not in cache:
        gen = omega_generator(datum, j)
        if k >= 0:
            out = identity(datum)
            for _ in range(k):
                out = out * gen
        else:
            out = identity(datum)
            inv = gen.inverse()
            for _ in range(-k):
                out = out * inv
        cache[(j, k)] = out
    return cache[(j, k)]


def omega_delta(datum: RootDatum, sums) -> AffineElt:
    """The unique base-alcove stabilizer whose translation has the given
    per-copy coordinate sums."""
    out = identity(datum)
    for j, s in enumerate(sums):
        out = out * omega_power(datum, j, s)
    return out


def omega_component(elt: AffineElt):
    """Unique factorization elt = w_a * delta with w_a in the affine Weyl
    group (root-lattice translations) and delta stabilizing the base alcove."""
    d = elt.datum
    delta = omega_delta(d, d.copy_sums(elt.nu))
    w_a = elt * delta.inverse()
    return w_a, delta


def same_omega(u: AffineElt, w: AffineElt) -> bool:
    d = u.datum
    return d.copy_sums(u.nu) == d.copy_sums(w.nu)


# -- Bruhat order --------------------------------------------------------------


def _copy_inv(perm):
    inv = [0] * len(perm)
    for i, t in enumerate(perm):
        inv[t] = i
    return tuple(inv)


def _copy_key_val(nu, perm_inv, a, b):
    k = nu[a] - nu[b]
    if perm_inv[a] > perm_inv[b]:
        k -= 1
    return k


def _copy_len(n, nu, perm):
    inv = _copy_inv(perm)
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            total += abs(_copy_key_val(nu, inv, a, b))
    return total


def _copy_descent(n, nu, perm):
    """A Coxeter generator taking the element strictly down, or None."""
    inv = _copy_inv(perm)
    for i in range(n - 1):
        if _copy_key_val(nu, inv, i, i + 1) < 0:
            return ("s", i)
    if n >= 2 and _copy_key_val(nu, inv, 0, n - 1) >= 1:
        return ("a",)
    return None


def _copy_lmul(n, gen, nu, perm):
    if gen[0] == "s":
        i = gen[1]
        nu2 = list(nu)
        nu2[i], nu2[i + 1] = nu2[i + 1], nu2[i]
        swap = {i: i + 1, i + 1: i}
    else:
        nu2 = list(nu)
        nu2[0], nu2[n - 1] = nu2[n - 1] + 1, nu2[0] - 1
        swap = {0: n - 1, n - 1: 0}
    perm2 = tuple(swap.get(t, t) for t in perm)
    return tuple(nu2), perm2


def _copy_bruhat(n, u, w, cache) -> bool:
    if u == w:
        return True
    key = (u, w)
    if key in cache:
        return cache[key]
    lu = _copy_len(n, *u)
    lw = _copy_len(n, *w)
    if lu >= lw:
        cache[key] = False
        return False
    gen = _copy_descent(n, *w)
    if gen is None:
        raise InternalInvariantError("positive-length element with no descent")
    sw = _copy_lmul(n, gen, *w)
    su = _copy_lmul(n, gen, *u)
    if _copy_len(n, *su) < lu:
        res = _copy_bruhat(n, su, sw, cache)
    else:
        res = _copy_bruhat(n, u, sw, cache)
    cache[key] = res
    return res


def bruhat_leq(u: AffineElt, w: AffineElt) -> bool:
    """Bruhat order with the base-alcove wall reflections as generators;
    elements in different base-alcove-stabilizer cosets are incomparable."""
    d = u.datum
    if not same_omega(u, w):
        return False
    _, delta = omega_component(u)
    dinv = delta.inverse()
    ua = u * dinv
    wa = w * dinv
    cache = d.caches.setdefault("bruhat", {})
    n = d.n
    for j in range(d.f):
        base = j * n
        uj = (ua.nu[base : base + n], ua.w[j])
        wj = (wa.nu[base : base + n], wa.w[j])
        if not _copy_bruhat(n, uj, wj, cache):
            return False
    return True


# -- semi-infinite order on exact points ---------------------------------------


def _scale_den(*points) -> int:
    den = 1
    for pt in points:
        for c in pt:
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
    return den


def _scale(point, den):
    return tuple(int(c * den) for c in point)


def _dom_leq_int(datum: RootDatum, x, y) -> bool:
    n = datum.n
    for j in range(datum.f):
        base = j * n
        run = 0
        for i in range(n):
            run += y[base + i] - x[base + i]
            if run < 0:
                return False
        if run != 0:
            return False
    return True


def points_up(datum: RootDatum, x, y) -> bool:
    """Semi-infinite comparison of two exact points of the same arrangement.

    True iff y is reachable from x by reflections across hyperplanes lying
    strictly above the current point.  Complete by barycenter monotonicity:
    every chain stays inside the dominance interval [x, y].
    """
    memo = datum.caches.setdefault("points_up", {})
    key = (x, y)
    if key in memo:
        return memo[key]
    den = _scale_den(x, y)
    res = _points_up_scaled(datum, _scale(x, den), _scale(y, den), den)
    memo[key] = res
    return res


def _points_up_scaled(datum: RootDatum, X, Y, den) -> bool:
    if X == Y:
        return True
    if not _dom_leq_int(datum, X, Y):
        return False
    n = datum.n
    seen = {X}
    dq = deque([X])
    while dq:
        Z = dq.popleft()
        for (j, a, b) in datum.roots:
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
                if not _dom_leq_int(datum, Znew, Y):
                    break
                if Znew == Y:
                    return True
                if Znew not in seen:
                    seen.add(Znew)
                    dq.append(Znew)
                m_scaled += den
    return False


def bary0(datum: RootDatum):
    """Barycenter of the base alcove (central components zero): eta / n."""
    if "bary0" not in datum.caches:
        datum.caches["bary0"] = tuple(Fraction(e, datum.n) for e in datum.eta)
    return datum.caches["bary0"]


def elt_bary(elt: AffineElt):
    return elt.act(bary0(elt.datum))


def up_leq(u: AffineElt, w: AffineElt) -> bool:
    """The semi-infinite order on the extended group: equal stabilizer
    components and alcove comparison via barycenters."""
    if not same_omega(u, w):
        return False
    return points_up(u.datum, elt_bary(u), elt_bary(w))


def weight_point(datum: RootDatum, lam, p: int):
    """Normalized coordinates (lam + eta)/p for scaled-arrangement orders."""
    return tuple(Fraction(a + b, p) for a, b in zip(lam, datum.eta))


def weight_up(datum: RootDatum, lam, mu, p: int) -> bool:
    """Weight-level semi-infinite order under the scaled dot action.
    Works for singular weights as well; walls need no special casing."""
    return points_up(datum, weight_point(datum, lam, p), weight_point(datum, mu, p))


# -- enumeration ---------------------------------------------------------------


def enumerate_restricted(datum: RootDatum) -> tuple:
    """One affine-Weyl-group representative per restricted alcove, found by
    wall-crossing search from the base alcove inside the restricted box."""
    if "restricted" in datum.caches:
        return datum.caches["restricted"]
    start = identity(datum)
    found = {alcove_key(start): start}
    dq = deque([start])
    while dq:
        cur = dq.popleft()
        key = alcove_key(cur)
        for i, root in enumerate(datum.roots):
            for m in (key[i], key[i] + 1):
                new = reflection(datum, root, m) * cur
                nk = alcove_key(new)
                if nk in found:
                    continue
                if all(nk[t] == 0 for t in datum.simple_indices):
                    found[nk] = new
                    dq.append(new)
    reps = tuple(found[k] for k in sorted(found))
    datum.caches["restricted"] = reps
    return reps


def restricted_transversal(datum: RootDatum) -> tuple:
    """Restricted elements modulo central translations: one alcove
    representative times each stabilizer class, translation sums in [0, n)."""
    if "restricted_transversal" in datum.caches:
        return datum.caches["restricted_transversal"]
    out = []
    for rep in enumerate_restricted(datum):
        for ks in product(range(datum.n), repeat=datum.f):
            out.append(rep * omega_delta(datum, ks))
    datum.caches["restricted_transversal"] = tuple(out)
    return datum.caches["restricted_transversal"]


def _lower_ok(datum: RootDatum, Z, sums_scaled) -> bool:
    # z >= central projection of its copy sums: n * prefix_i >= i * S_j
    n = datum.n
    for j in range(datum.f):
        base = j * n
        run = 0
        for i in range(n):
            run += Z[base + i]
            if n * run < (i + 1) * sums_scaled[j]:
                return False
    return True


def enumerate_up_below(w: AffineElt) -> tuple:
    """All dominant-image elements below w in the semi-infinite order, in
    the same stabilizer coset.  Downward search over lowering reflections;
    complete because chains stay above the central projection."""
    datum = w.datum
    cache = datum.caches.setdefault("up_below", {})
    if w in cache:
        return cache[w]
    n = datum.n
    top = elt_bary(w)
    den = _scale_den(top)
    TOP = _scale(top, den)
    sums_scaled = datum.copy_sums(TOP)
    found = {TOP: w}
    dq = deque([(w, TOP)])
    while dq:
        cur, Z = dq.popleft()
        for root in datum.roots:
            j, a, b = root
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
                if not _lower_ok(datum, Znew, sums_scaled):
                    break
                if Znew not in found:
                    new = reflection(datum, root, m_scaled // den) * cur
                    found[Znew] = new
                    dq.append((new, Znew))
                m_scaled -= den
    out = [e for e in found.values() if is_dominant_elt(e)]
    out.sort(key=alcove_key)
    result = tuple(out)
    cache[w] = result
    return result


def adm_contains(elt: AffineElt) -> bool:
    """Membership in the admissible set: below some t_{sigma(eta)}."""
    d = elt.datum
    if d.copy_sums(elt.nu) != d.copy_sums(d.eta):
        return False
    for s in d.weyl():
        if bruhat_leq(elt, translation(d, d.act(s, d.eta))):
            return True
    return False


def vertex_hmax(elt: AffineElt):
    """max over vertices v of the closed base alcove of h_{elt(v)}.
    h is convex and blind to central directions, so the per-copy vertex
    set {0, fundamental weights} suffices."""
    d = elt.datum
    n = d.n
    best = 0
    for j in range(d.f):
        for v in d.vertices[j]:
            y = elt.act(v)
            coords = y[j * n : (j + 1) * n]
            if n >= 2:
                h = max(coords) - min(coords)
                if h > best:
                    best = h
    return best


# -- folding into the fundamental domain ---------------------------------------


def fold_point(datum: RootDatum, x):
    """(g, x0) with g in the affine Weyl group, x0 in the closed base
    alcove, and x = g(x0).  Wall reflections strictly reduce the number of
    separating hyperplanes, so the loop terminates."""
    g = identity(datum)
    y = tuple(x)
    for _ in range(_FOLD_GUARD):
        moved = False
        for i in datum.simple_indices:
            root = datum.roots[i]
            if datum.pairing(y, root) < 0:
                r = reflection(datum, root, 0)
                y = r.act(y)
                g = g * r
                moved = True
                break
        if moved:
            continue
        for i in datum.highest_indices:
            root = datum.roots[i]
            if datum.pairing(y, root) > 1:
                r = reflection(datum, root, 1)
                y = r.act(y)
                g = g * r
                moved = True
                break
        if not moved:
            return g, y
    raise InternalInvariantError("folding failed to terminate")


def fold_weight(datum: RootDatum, lam, p: int):
    """(g, lam0) with lam = g . lam0 under the scaled dot action and lam0
    in the closed base scaled alcove."""
    g, y0 = fold_point(datum, weight_point(datum, lam, p))
    lam0 = tuple(p * c - e for c, e in zip(y0, datum.eta))
    out = []
    for c in lam0:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise InternalInvariantError("non-integral folded weight")
            c = c.numerator
        out.append(int(c))
    return g, tuple(out)


def point_stabilizer(datum: RootDatum, y0) -> tuple:
    """The subgroup fixing a point of the closed base alcove, generated by
    the base-alcove wall reflections through it."""
    gens = []
    for i in datum.simple_indices:
        root = datum.roots[i]
        if datum.pairing(y0, root) == 0:
            gens.append(reflection(datum, root, 0))
    for i in datum.highest_indices:
        root = datum.roots[i]
        if datum.pairing(y0, root) == 1:
            gens.append(reflection(datum, root, 1))
    group = {identity(datum)}
    frontier = [identity(datum)]
    while frontier:
        nxt = []
        for g in frontier:
            for r in gens:
                h = g * r
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
        if len(group) > 10000:
            raise InternalInvariantError("point stabilizer did not close")
    return tuple(sorted(group, key=alcove_key))


def alcoves_containing_point(datum: RootDatum, x) -> tuple:
    """Elements u, one per alcove whose closure contains x."""
    g, y0 = fold_point(datum, x)
    return tuple(g * h for h in point_stabilizer(datum, y0))


# -- serialization -------------------------------------------------------------


def weyl_str(datum: RootDatum, w) -> str:
    return ";".join(",".join(str(i + 1) for i in wj) for wj in w)


def parse_weyl(datum: RootDatum, s: str):
    """Finite Weyl element: "e", "w0", or one-line notation "2,1;1,2"
    (optionally wrapped as "w[...]"), 1-based within each copy."""
    s = s.strip()
    if s == "e":
        return datum.id_w
    if s == "w0":
        return datum.w0
    if s.startswith("w[") and s.endswith("]"):
        s = s[2:-1]
    copies = s.split(";")
    if len(copies) != datum.f:
        raise ParseError(f"expected {datum.f} permutation(s), got {len(copies)}")
    out = []
    for part in copies:
        try:
            vals = tuple(int(t) - 1 for t in part.split(","))
        except ValueError as exc:
            raise ParseError(f"bad permutation {part!r}") from exc
        if sorted(vals) != list(range(datum.n)):
            raise ParseError(f"{part!r} is not a permutation of 1..{datum.n}")
        out.append(vals)
    return tuple(out)


def elt_str(elt: AffineElt) -> str:
    return (f"t[{format_weight(elt.datum, elt.nu)}]"
            f"*w[{weyl_str(elt.datum, elt.w)}]")


def parse_elt(datum: RootDatum, s: str) -> AffineElt:
    raw = s.strip().replace("·", "*")
    if not raw.startswith("t["):
        raise ParseError(f"element must start with 't[': {s!r}")
    close = raw.find("]")
    if close < 0:
        raise ParseError(f"unterminated translation in {s!r}")
    nu = parse_weight(datum, raw[2:close])
    rest = raw[close + 1 :]
    if not rest.startswith("*w[") or not rest.endswith("]"):
        raise ParseError(f"element must end with '*w[...]': {s!r}")
    w = parse_weyl(datum, rest[3:-1])
    for c in nu:
        if isinstance(c, Fraction):
            raise ParseError("translation part must be integral")
    return AffineElt(datum, nu, w)
