"""Root datum of a product of f copies of GL_n twisted by a cyclic shift.

The character lattice is Z^(n*f); copy j occupies the coordinate slice
[j*n, (j+1)*n).  Positive roots are e_i - e_j (i < j) within a single copy,
the finite Weyl group is an f-tuple of permutations of n letters acting
within copies, and the twist pi cyclically shifts copies.  All geometry is
exact: weights are integer tuples and points are tuples of Fractions.
Floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .errors import ParseError

Weight = tuple  # integer coordinates
RationalPoint = tuple  # Fraction coordinates
Perm = tuple  # one-line permutation of range(n)
WeylElt = tuple  # f-tuple of Perm

_DATUM_CACHE: dict = {}


def gl(n: int, f: int = 1) -> "RootDatum":
    """Shared RootDatum instance for f copies of GL_n."""
    key = (n, f)
    if key not in _DATUM_CACHE:
        _DATUM_CACHE[key] = RootDatum(n, f)
    return _DATUM_CACHE[key]


class RootDatum:
    """Ambient combinatorial data: roots, eta, Weyl group, twist."""

    def __init__(self, n: int, f: int = 1):
        if n < 1 or f < 1:
            raise ParseError(f"invalid datum gl:{n}:{f}")
        self.n = n
        self.f = f
        self.rank = n * f
        # positive roots e_a - e_b (a < b) per copy, in a fixed order
        self.roots = tuple(
            (j, a, b) for j in range(f) for a in range(n) for b in range(a + 1, n)
        )
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.simple_indices = tuple(
            self.root_index[(j, i, i + 1)] for j in range(f) for i in range(n - 1)
        )
        self.highest_indices = tuple(
            self.root_index[(j, 0, n - 1)] for j in range(f) if n >= 2
        )
        eta = []
        for _ in range(f):
            eta.extend(range(n - 1, -1, -1))
        self.eta = tuple(eta)
        self.h_eta = n - 1
        self.id_w = tuple(tuple(range(n)) for _ in range(f))
        self.w0 = tuple(tuple(range(n - 1, -1, -1)) for _ in range(f))
        # vertices of the closed base alcove, per copy: 0 and the
        # fundamental weights (1,..,1,0,..,0), embedded in the full lattice
        verts = []
        for j in range(f):
            copy_verts = [tuple(0 for _ in range(self.rank))]
            for i in range(1, n):
                v = [0] * self.rank
                for t in range(i):
                    v[j * n + t] = 1
                copy_verts.append(tuple(v))
            verts.append(tuple(copy_verts))
        self.vertices = tuple(verts)
        self.caches: dict = {}

    def __eq__(self, other):
        return isinstance(other, RootDatum) and (self.n, self.f) == (other.n, other.f)

    def __hash__(self):
        return hash((self.n, self.f))

    def __repr__(self):
        return f"RootDatum(gl:{self.n}:{self.f})"

    # -- pairings and basic vector arithmetic ------------------------------

    def pairing(self, x, root):
        """<x, alpha_vee> for the root e_a - e_b of one copy."""
        j, a, b = root
        return x[j * self.n + a] - x[j * self.n + b]

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def smul(self, c, x):
        return tuple(c * a for a in x)

    def zero(self):
        return tuple(0 for _ in range(self.rank))

    def copy_sums(self, x):
        n = self.n
        return tuple(sum(x[j * n : (j + 1) * n]) for j in range(self.f))

    # -- finite Weyl group --------------------------------------------------

    def act(self, w: WeylElt, x):
        """Linear action of a finite Weyl element: permutes within copies."""
        n = self.n
        out = [None] * self.rank
        for j in range(self.f):
            wj = w[j]
            base = j * n
            for i in range(n):
                out[base + wj[i]] = x[base + i]
        return tuple(out)

    def w_mul(self, w: WeylElt, u: WeylElt) -> WeylElt:
        return tuple(tuple(wj[uj[i]] for i in range(self.n)) for wj, uj in zip(w, u))

    def w_inv(self, w: WeylElt) -> WeylElt:
        out = []
        for wj in w:
            inv = [0] * self.n
            for i, t in enumerate(wj):
                inv[t] = i
            out.append(tuple(inv))
        return tuple(out)

    def weyl(self) -> tuple:
        """All (n!)^f finite Weyl elements, in a fixed order."""
        if "weyl" not in self.caches:
            perms = tuple(permutations(range(self.n)))
            self.caches["weyl"] = tuple(product(perms, repeat=self.f))
        return self.caches["weyl"]

    # -- Frobenius twist ----------------------------------------------------

    def frobenius(self, x, power: int = 1):
        """pi^power on a weight or point: shifts copy j to copy j-1 ... i.e.
        pi(x)^(j) = x^(j+1 mod f)."""
        k = power % self.f
        if k == 0:
            return tuple(x)
        n = self.n
        out = []
        for j in range(self.f):
            src = ((j + k) % self.f) * n
            out.extend(x[src : src + n])
        return tuple(out)

    def frobenius_w(self, w: WeylElt, power: int = 1) -> WeylElt:
        k = power % self.f
        return tuple(w[(j + k) % self.f] for j in range(self.f))

    # -- order-theoretic helpers --------------------------------------------

    def is_dominant(self, x) -> bool:
        n = self.n
        for j in range(self.f):
            base = j * n
            for i in range(n - 1):
                if x[base + i] < x[base + i + 1]:
                    return False
        return True

    def dominization(self, x):
        """The dominant W-conjugate together with the sorting element w,
        so that w(x) is dominant.  Stable, hence deterministic."""
        n = self.n
        out = []
        welt = []
        for j in range(self.f):
            base = j * n
            coords = x[base : base + n]
            order = sorted(range(n), key=lambda i: (-coords[i], i))
            wj = [0] * n
            for k, i in enumerate(order):
                wj[i] = k
            welt.append(tuple(wj))
            out.extend(coords[i] for i in order)
        return tuple(out), tuple(welt)

    def dominance_leq(self, x, y) -> bool:
        """x <= y in the order generated by positive roots: y - x has
        nonnegative prefix sums and zero total sum within every copy."""
        n = self.n
        for j in range(self.f):
            base = j * n
            run = 0
            for i in range(n):
                run += y[base + i] - x[base + i]
                if run < 0:
                    return False
            if run != 0:
                return False
        return True

    def h_max(self, x):
        """max over all roots of <x, alpha_vee>; 0 when there are no roots."""
        n = self.n
        best = 0
        for j in range(self.f):
            base = j * n
            coords = x[base : base + n]
            if n >= 2:
                h = max(coords) - min(coords)
                if h > best:
                    best = h
        return best

    def conv_contains(self, nu, kappa) -> bool:
        """kappa in Conv(W nu) for dominant nu: equal per-copy sums and
        dominization(kappa) <= nu."""
        if not self.is_dominant(nu):
            raise ValueError("conv_contains requires a dominant first argument")
        if self.copy_sums(nu) != self.copy_sums(kappa):
            return False
        kplus, _ = self.dominization(kappa)
        return self.dominance_leq(kplus, nu)

    # -- depth in scaled alcoves ---------------------------------------------

    def depth_in(self, lam, key, p: int):
        """Wall margin of lam within the scaled alcove with coordinates
        `key`, minus one.  Nonnegative iff lam lies in the open alcove;
        lam is m-deep iff the result is >= m.  `key` is indexed like
        self.roots; the base alcove is the all-zero key."""
        margin = None
        lp = self.add(lam, self.eta)
        for i, root in enumerate(self.roots):
            v = self.pairing(lp, root)
            m = min(v - key[i] * p, (key[i] + 1) * p - v)
            if margin is None or m < margin:
                margin = m
        if margin is None:
            # rank-one copies have no walls; treat everything as infinitely
            # deep, capped for arithmetic convenience
            return p
        return margin - 1

    def alcove_depth(self, lam, p: int):
        """Depth of lam in whichever scaled alcove contains it: distance of
        the pairings of lam + eta to the nearest multiples of p, minus one.
        Total; weights on walls get -1."""
        margin = None
        lp = self.add(lam, self.eta)
        for root in self.roots:
            r = self.pairing(lp, root) % p
            m = min(r, p - r)
            if margin is None or m < margin:
                margin = m
        if margin is None:
            return p
        return margin - 1

    def base_key(self):
        return tuple(0 for _ in self.roots)

    def in_c0(self, lam, p: int) -> bool:
        return self.depth_in(lam, self.base_key(), p) >= 0

    def validate_depth_feasible(self, m: int, p: int) -> bool:
        """Whether an m-deep weight can exist at all: p >= (m+1)*(h_eta+1)."""
        if m < 0:
            raise ValueError("depth must be nonnegative")
        return p >= (m + 1) * (self.h_eta + 1)


# -- serialization ------------------------------------------------------------


def format_coord(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_weight(datum: RootDatum, x) -> str:
    """Per-copy comma lists joined by semicolons, e.g. "3,0;1,1"."""
    n = datum.n
    return ";".join(
        ",".join(format_coord(c) for c in x[j * n : (j + 1) * n])
        for j in range(datum.f)
    )


def _parse_coord(tok: str):
    tok = tok.strip()
    try:
        if "/" in tok:
            num, den = tok.split("/")
            q = Fraction(int(num), int(den))
            return int(q) if q.denominator == 1 else q
        return int(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate {tok!r}") from exc


def parse_weight(datum: RootDatum, s: str):
    """Inverse of format_weight; accepts integer or a/b coordinates."""
    copies = s.strip().split(";")
    if len(copies) != datum.f:
        raise ParseError(
            f"expected {datum.f} copies separated by ';', got {len(copies)}"
        )
    out = []
    for part in copies:
        toks = [t for t in part.split(",") if t.strip() != ""]
        if len(toks) != datum.n:
            raise ParseError(f"expected {datum.n} coordinates per copy in {part!r}")
        out.extend(_parse_coord(t) for t in toks)
    return tuple(out)


def root_label(root) -> str:
    """Label "(i,j,copy)" with 1-based positions inside the copy."""
    j, a, b = root
    return f"({a + 1},{b + 1},{j})"
