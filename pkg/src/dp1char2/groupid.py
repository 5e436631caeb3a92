"""Finite groups given by Cayley tables, invariants, a catalog and identification."""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from functools import lru_cache

import numpy as np


class GroupError(ValueError):
    pass


UNRECOGNIZED = "UNRECOGNIZED"


class FiniteGroup:
    """Group on {0, ..., n-1}; table[i, j] is the index of e_i * e_j."""

    def __init__(self, table, identity=0, check=True, name=None):
        t = np.asarray(table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise GroupError("Cayley table must be square")
        self.table = t
        self.n = t.shape[0]
        self.identity = int(identity)
        self.name = name
        self._cache = {}
        if check:
            audit(self)

    def __len__(self):
        return self.n

    @property
    def order(self):
        return self.n

    def mul(self, i, j):
        return int(self.table[i, j])

    @property
    def inverses(self):
        if "inv" not in self._cache:
            rows, cols = np.nonzero(self.table == self.identity)
            inv = np.empty(self.n, dtype=np.int32)
            inv[rows] = cols
            self._cache["inv"] = inv
        return self._cache["inv"]

    @property
    def element_orders(self):
        if "ord" not in self._cache:
            n = self.n
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n, dtype=np.int32)
            k = 1
            todo = np.ones(n, dtype=bool)
            while todo.any():
                hit = todo & (cur == self.identity)
                orders[hit] = k
                todo &= ~hit
                cur = self.table[cur, np.arange(n)]
                k += 1
                if k > n + 1:
                    raise GroupError("element of infinite order: table is not a group")
            self._cache["ord"] = orders
        return self._cache["ord"]

    def power(self, i, e):
        r = self.identity
        b = i
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def center(self):
        return [i for i in range(self.n) if (self.table[i] == self.table[:, i]).all()]

    def commutator(self, i, j):
        inv = self.inverses
        t = self.table
        return int(t[t[inv[i], inv[j]], t[i, j]])

    def closure(self, gens):
        """Indices of the subgroup generated by gens."""
        members = np.zeros(self.n, dtype=bool)
        members[self.identity] = True
        frontier = [self.identity]
        gens = list(dict.fromkeys(int(g) for g in gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if not members[y]:
                        members[y] = True
                        nxt.append(y)
            frontier = nxt
        return np.nonzero(members)[0].tolist()

    def derived_subgroup(self):
        t = self.table
        inv = self.inverses
        # [a, b] = a^-1 b^-1 a b for all pairs, vectorised
        ab = t  # ab[a, b]
        ainv_binv = t[np.ix_(inv, inv)]
        comm = t[ainv_binv, ab]
        comms = np.unique(comm)
        return self.closure(_small_generating_subset(self, comms.tolist()))

    def is_normal(self, sub):
        s = set(sub)
        inv = self.inverses
        t = self.table
        for g in range(self.n):
            for h in sub:
                if int(t[t[g, h], inv[g]]) not in s:
                    return False
        return True

    def generators(self):
        if "gens" not in self._cache:
            self._cache["gens"] = _small_generating_subset(self, range(self.n))
        return self._cache["gens"]

    def exponent(self):
        return int(np.lcm.reduce(self.element_orders))


def _small_generating_subset(G: FiniteGroup, candidates):
    """Greedy generators of the subgroup spanned by candidates (largest orders first)."""
    cands = sorted(set(int(c) for c in candidates), key=lambda x: (-int(G.element_orders[x]), x))
    gens = []
    members = {G.identity}
    for c in cands:
        if c in members:
            continue
        gens.append(c)
        members = set(G.closure(gens))
    return gens


def audit(G: FiniteGroup, generators=None):
    """Latin square, identity, and associativity (Light's test over a generating set)."""
    t = G.table
    n = G.n
    ar = np.arange(n)
    if (t[G.identity] != ar).any() or (t[:, G.identity] != ar).any():
        raise GroupError("identity row/column is wrong")
    srt = np.sort(t, axis=1)
    if (srt != ar).any() or (np.sort(t, axis=0) != ar[:, None]).any():
        raise GroupError("table is not a Latin square")
    gens = generators if generators is not None else G.generators()
    if sorted(G.closure(gens)) != list(range(n)):
        raise GroupError("audit generators do not generate")
    for s in gens:
        if (t[t[:, s], :] != t[:, t[s, :]]).any():
            raise GroupError("associativity fails")
    return True


def table_from_generators(elements, mul, key, gens=None):
    """Cayley table of a finite set of group elements closed under mul.

    Only |gens| * n products are evaluated: row i is obtained from the row of
    its breadth-first parent p (e_i = s * e_p) by the left-multiplication
    permutation of the generator s.  Element 0 must be the identity.
    """
    n = len(elements)
    index = {key(e): i for i, e in enumerate(elements)}
    if len(index) != n:
        raise GroupError("duplicate elements")
    perms = {}

    def left_perm(g):
        if g not in perms:
            ge = elements[g]
            p = np.empty(n, dtype=np.int32)
            for j, e in enumerate(elements):
                kk = key(mul(ge, e))
                if kk not in index:
                    raise GroupError("set is not closed under composition")
                p[j] = index[kk]
            perms[g] = p
        return perms[g]

    def bfs(gs):
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        parent[0] = 0
        order = [0]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gs:
                    y = int(perms[g][x])
                    if parent[y] < 0:
                        parent[y] = x
                        via[y] = g
                        order.append(y)
                        nxt.append(y)
            frontier = nxt
        return parent, via, order

    chosen = []
    if gens is not None:
        for g in gens:
            left_perm(g)
            chosen.append(g)
    parent, via, order = bfs(chosen) if chosen else (None, None, [0])
    while len(order) < n:
        reached = np.zeros(n, dtype=bool)
        reached[order] = True
        g = int(np.nonzero(~reached)[0][0])
        left_perm(g)
        chosen.append(g)
        parent, via, order = bfs(chosen)
    table = np.empty((n, n), dtype=np.int32)
    table[0] = np.arange(n)
    for i in order[1:]:
        table[i] = perms[int(via[i])][table[int(parent[i])]]
    return table, chosen


def spot_check(G: FiniteGroup, elements, mul, key, samples=1000, seed=0):
    """Compare random table entries with direct products; returns the count checked."""
    rng = random.Random(seed)
    n = G.n
    index = {key(e): i for i, e in enumerate(elements)}
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)] if n * n > samples else list(
        itertools.product(range(n), repeat=2)
    )
    for i, j in pairs:
        if index[key(mul(elements[i], elements[j]))] != G.mul(i, j):
            raise GroupError(f"table entry ({i},{j}) disagrees with composition")
    return len(pairs)


def subgroup(G: FiniteGroup, members) -> FiniteGroup:
    members = sorted(int(m) for m in members)
    if G.identity in members:
        members.remove(G.identity)
    members = [G.identity] + members
    pos = np.full(G.n, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    sub = G.table[np.ix_(members, members)]
    t = pos[sub]
    if (t < 0).any():
        raise GroupError("subset is not closed")
    return FiniteGroup(t, 0)


def coset_labels(G: FiniteGroup, normal):
    """Label of the coset g N for each g; representatives in order of first appearance."""
    labels = np.full(G.n, -1, dtype=np.int64)
    reps = []
    normal = np.asarray(sorted(normal), dtype=np.int64)
    for g in range(G.n):
        if labels[g] < 0:
            labels[G.table[g, normal]] = len(reps)
            reps.append(g)
    return labels, reps


def quotient(G: FiniteGroup, normal) -> FiniteGroup:
    if not G.is_normal(list(normal)):
        raise GroupError("quotient by a non-normal subgroup")
    labels, reps = coset_labels(G, normal)
    r = np.asarray(reps)
    t = labels[G.table[np.ix_(r, r)]]
    return FiniteGroup(t, int(labels[G.identity]))


# -- constructions ---------------------------------------------------------------


def group_from_generators(gens, mul, identity, key=lambda x: x, name=None):
    """Close a set of generators under mul and return (FiniteGroup, elements)."""
    elements = [identity]
    seen = {key(identity)}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                ky = key(y)
                if ky not in seen:
                    seen.add(ky)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    table, _ = table_from_generators(elements, mul, key)
    return FiniteGroup(table, 0, name=name), elements


def _perm_mul(p, q):
    # (p * q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def perm_group(gens, name=None):
    n = len(gens[0])
    return group_from_generators([tuple(g) for g in gens], _perm_mul, tuple(range(n)), name=name)[0]


def cyclic(n):
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(t, 0, name=f"Z/{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n2 = H.n
    t = G.table[:, None, :, None] * n2 + H.table[None, :, None, :]
    t = t.reshape(G.n * n2, G.n * n2)
    return FiniteGroup(t, G.identity * n2 + H.identity)


def _mat_mul_mod(p):
    def mul(a, b):
        (a00, a01), (a10, a11) = a
        (b00, b01), (b10, b11) = b
        return (
            ((a00 * b00 + a01 * b10) % p, (a00 * b01 + a01 * b11) % p),
            ((a10 * b00 + a11 * b10) % p, (a10 * b01 + a11 * b11) % p),
        )

    return mul


def _matrix_group(gens, p):
    ident = ((1, 0), (0, 1))
    return group_from_generators(gens, _mat_mul_mod(p), ident)[0]


def signed_permutation_group(gens):
    """Signed permutations of 8 coordinates, each given as a tuple of (image, sign bit)."""

    def mul(g, h):
        # (g h)(e_i) = g(h(e_i))
        return tuple((g[j][0], g[j][1] ^ s) for j, s in h)

    ident = tuple((i, 0) for i in range(len(gens[0])))
    return group_from_generators(gens, mul, ident)


def extraspecial_signed():
    """2_+^{1+6} inside the signed permutations of the 8 points of F2^3.

    Translations x -> x + t make the regular elementary abelian group C of order 8
    whose involutions have cycle type (2,2,2,2); the sign changes compatible with
    C are the affine functions F2^3 -> F2 (16 of them).  Together they generate
    a group M of order 128 whose centre is the sign change of all coordinates.
    """
    pts = list(range(8))
    gens = []
    for t in (1, 2, 4):
        gens.append(tuple((x ^ t, 0) for x in pts))
    for lin in (1, 2, 4):
        gens.append(tuple((x, bin(x & lin).count("1") & 1) for x in pts))
    gens.append(tuple((x, 1) for x in pts))
    return signed_permutation_group(gens)


# quadratic space of plus type on F2^6 = F16 + F4 used for the extensions


def _f16_mul(a, b):
    r = 0
    for i in range(4):
        if b >> i & 1:
            r ^= a << i
    for i in range(7, 3, -1):
        if r >> i & 1:
            r ^= 0b10011 << (i - 4)
    return r


def _f4_mul(a, b):
    r = 0
    for i in range(2):
        if b >> i & 1:
            r ^= a << i
    if r & 4:
        r ^= 0b111
    return r


def _f16_pow(a, e):
    r = 1
    for _ in range(e):
        r = _f16_mul(r, a)
    return r


def _q_plus(v):
    """q(x, y) = Tr_{F4/F2}(N(x)) + y^3 with v = x + 16 y, x in F16, y in F4."""
    x, y = v & 15, v >> 4
    n = _f16_pow(x, 5)  # lies in the subfield F4 = {0, 1, 6, 7} of F16
    tr = 0 if n in (0, 1) else 1
    y3 = _f4_mul(_f4_mul(y, y), y)
    return tr ^ (1 if y3 else 0)


def _bilinear_from_q(q, dim):
    """Matrix E (list of rows, ints) with E(v, v) = q(v); upper triangular."""
    basis = [1 << i for i in range(dim)]
    E = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        E[i][i] = q(basis[i])
        for j in range(i + 1, dim):
            E[i][j] = q(basis[i] ^ basis[j]) ^ q(basis[i]) ^ q(basis[j])
    return E


def _bil(E, v, w):
    dim = len(E)
    s = 0
    for i in range(dim):
        if v >> i & 1:
            row = E[i]
            for j in range(dim):
                if w >> j & 1:
                    s ^= row[j]
    return s


def _isometry(order):
    """Linear map on F2^6 preserving q: x -> zeta x on F16 (zeta of order 5 when 5 | order),
    y -> omega y on F4 (omega of order 3 when 3 | order)."""
    z = _f16_pow(2, 3) if order % 5 == 0 else 1  # 2 generates F16^*, 2^3 has order 5
    w = 2 if order % 3 == 0 else 1

    def g(v):
        x, y = v & 15, v >> 4
        return _f16_mul(z, x) | (_f4_mul(w, y) << 4)

    return g


def extraspecial_extension(n):
    """2_+^{1+6} : Z/n for n in {1, 3, 5, 15} realised on pairs (v, c) in F2^6 x F2."""
    E = _bilinear_from_q(_q_plus, 6)
    g = _isometry(n)
    # phi(v, c) = (g v, c + f(v)) is an automorphism when f(v+w)+f(v)+f(w) = E(gv,gw)+E(v,w)
    dim = 6
    D = [[_bil(E, g(1 << i), g(1 << j)) ^ E[i][j] for j in range(dim)] for i in range(dim)]
    Ep = [[D[i][j] if i < j else 0 for j in range(dim)] for i in range(dim)]
    f = lambda v: _bil(Ep, v, v)

    def phi(e):
        v, c = e
        return g(v), c ^ f(v)

    def emul(a, b):
        return a[0] ^ b[0], a[1] ^ b[1] ^ _bil(E, a[0], b[0])

    # phi may have order 2n; phi^(n+1) then has order n with the same action on V
    def phi_pow(e, k):
        for _ in range(k):
            e = phi(e)
        return e

    probe = [(1 << i, 0) for i in range(dim)]
    power = 1 if all(phi_pow(p, n) == p for p in probe) else n + 1
    autos = [None] * n
    elems = [(v, c) for v in range(64) for c in (0, 1)]
    for k in range(n):
        autos[k] = {e: phi_pow(e, power * k) for e in elems}

    def mul(a, b):
        (e1, k1), (e2, k2) = a, b
        return emul(e1, autos[k1][e2]), (k1 + k2) % n

    gens = [((1 << i, 0), 0) for i in range(dim)]
    if n > 1:
        gens.append(((0, 0), 1))
    return group_from_generators(gens, mul, ((0, 0), 0))[0]


def center_quotient(G: FiniteGroup) -> FiniteGroup:
    return quotient(G, G.center())


def _s3():
    return perm_group([(1, 2, 0), (1, 0, 2)])


@lru_cache(maxsize=None)
def catalog_group(label: str) -> FiniteGroup:
    if label not in CATALOG:
        raise GroupError(f"unknown catalog label {label!r}")
    G = CATALOG[label]()
    G.name = label
    return G


CATALOG = {
    "trivial": lambda: cyclic(1),
    "Z/2": lambda: cyclic(2),
    "Z/3": lambda: cyclic(3),
    "Z/4": lambda: cyclic(4),
    "(Z/2)^2": lambda: direct_product(cyclic(2), cyclic(2)),
    "Z/5": lambda: cyclic(5),
    "Z/6": lambda: cyclic(6),
    "S3": _s3,
    "Q8": lambda: _matrix_group([((0, 2), (1, 0)), ((1, 1), (1, 2))], 3),
    "D8": lambda: perm_group([(1, 2, 3, 0), (2, 1, 0, 3)]),
    "(Z/2)^3": lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
    "Z/10": lambda: cyclic(10),
    "A4": lambda: perm_group([(1, 2, 0, 3), (1, 0, 3, 2)]),
    "Z/2 x Z/6": lambda: direct_product(cyclic(2), cyclic(6)),
    "Z/2 x S3": lambda: direct_product(cyclic(2), _s3()),
    "Z/15": lambda: cyclic(15),
    "(Z/2)^4": lambda: direct_product(catalog_group("(Z/2)^3"), cyclic(2)),
    "Z/3 x S3": lambda: direct_product(cyclic(3), _s3()),
    "SL2(F3)": lambda: _matrix_group([((1, 1), (0, 1)), ((0, 2), (1, 0))], 3),
    "Z/6 x S3": lambda: direct_product(cyclic(6), _s3()),
    "(Z/2)^6": lambda: direct_product(catalog_group("(Z/2)^3"), catalog_group("(Z/2)^3")),
    "2_+^{1+6}": lambda: extraspecial_signed()[0],
    "(Z/2)^6 : Z/3": lambda: center_quotient(extraspecial_extension(3)),
    "2_+^{1+6} : Z/3": lambda: extraspecial_extension(3),
    "(Z/2)^6 : Z/15": lambda: center_quotient(extraspecial_extension(15)),
    "2_+^{1+6} : Z/15": lambda: extraspecial_extension(15),
}

CATALOG_ORDERS = {
    "trivial": 1, "Z/2": 2, "Z/3": 3, "Z/4": 4, "(Z/2)^2": 4, "Z/5": 5, "Z/6": 6, "S3": 6,
    "Q8": 8, "D8": 8, "(Z/2)^3": 8, "Z/10": 10, "A4": 12, "Z/2 x Z/6": 12, "Z/2 x S3": 12,
    "Z/15": 15, "(Z/2)^4": 16, "Z/3 x S3": 18, "SL2(F3)": 24, "Z/6 x S3": 36, "(Z/2)^6": 64,
    "2_+^{1+6}": 128, "(Z/2)^6 : Z/3": 192, "2_+^{1+6} : Z/3": 384, "(Z/2)^6 : Z/15": 960,
    "2_+^{1+6} : Z/15": 1920,
}


# -- invariants ---------------------------------------------------------------------


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(order_histogram: dict):
    """Invariant factors d1 | d2 | ... of an abelian group from its element orders."""
    n = sum(order_histogram.values())
    if n == 1:
        return ()
    per_prime = []
    for p in _prime_factors(n):
        counts = []
        i = 0
        while True:
            c = sum(v for o, v in order_histogram.items() if (p ** i) % o == 0)
            counts.append(c)
            if i > 0 and counts[-1] == counts[-2]:
                break
            i += 1
        ranks = [round(math.log(counts[j] / counts[j - 1], p)) for j in range(1, len(counts))]
        ranks = [r for r in ranks if r > 0]
        parts = [sum(1 for r in ranks if r >= j) for j in range(1, (ranks[0] if ranks else 0) + 1)]
        per_prime.append((p, parts))
    # combine: the largest parts of every prime multiply into the largest factor
    length = max(len(parts) for _, parts in per_prime)
    factors = [1] * length
    for p, parts in per_prime:
        parts = sorted(parts, reverse=True)
        for i, e in enumerate(parts):
            factors[i] *= p ** e
    return tuple(sorted(f for f in factors if f > 1))


def order_histogram(G: FiniteGroup) -> dict:
    return dict(sorted(Counter(int(o) for o in G.element_orders).items()))


def fingerprint(G: FiniteGroup):
    if "fp" in G._cache:
        return G._cache["fp"]
    hist = order_histogram(G)
    center = len(G.center())
    derived = G.derived_subgroup()
    ab = quotient(G, derived) if len(derived) > 1 else G
    ab_inv = abelian_invariants(order_histogram(ab))
    fp = (G.n, tuple(hist.items()), center, len(derived), ab_inv, G.exponent())
    G._cache["fp"] = fp
    return fp


def _catalog_fingerprints():
    return {label: fingerprint(catalog_group(label)) for label in CATALOG}


# -- homomorphism search -------------------------------------------------------------


def _extend_hom(G: FiniteGroup, H: FiniteGroup, gens, images):
    """Map defined on words in gens, or None if the assignment is not a homomorphism."""
    img = np.full(G.n, -1, dtype=np.int64)
    img[G.identity] = H.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            ix = int(img[x])
            for g, h in zip(gens, images):
                y = int(G.table[x, g])
                iy = int(H.table[ix, h])
                if img[y] < 0:
                    img[y] = iy
                    nxt.append(y)
                elif img[y] != iy:
                    return None
        frontier = nxt
    return img


def find_embedding(G: FiniteGroup, H: FiniteGroup, budget=2_000_000):
    """An injective homomorphism G -> H as an index array, or None."""
    if H.n % G.n:
        return None
    gens = G.generators()
    go, ho = G.element_orders, H.element_orders
    cands = [[h for h in range(H.n) if ho[h] == go[g]] for g in gens]
    work = 0
    for combo in itertools.product(*cands):
        work += 1
        if work > budget:
            raise GroupError("homomorphism search exceeded its budget")
        m = _extend_hom(G, H, gens, combo)
        if m is not None and len(set(m.tolist())) == G.n:
            return m
    return None


def is_subgroup_embeddable(small: FiniteGroup, big: FiniteGroup) -> bool:
    return find_embedding(small, big) is not None


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.n != H.n or fingerprint(G) != fingerprint(H):
        return False
    return find_embedding(G, H) is not None


# -- structural recognition of the large catalog groups ------------------------------


def _two_part(n):
    a = 0
    while n % 2 == 0:
        n //= 2
        a += 1
    return a, n


def is_elementary_abelian_2(G: FiniteGroup) -> bool:
    return G.is_abelian() and all(int(o) <= 2 for o in G.element_orders)


def extraspecial_type(G: FiniteGroup):
    """'+' or '-' when G is extraspecial of order 2^(1+2m), else None."""
    a, odd = _two_part(G.n)
    if odd != 1 or a % 2 == 0 or a < 3:
        return None
    Z = G.center()
    if len(Z) != 2:
        return None
    if len(G.derived_subgroup()) != 2:
        return None
    Q = quotient(G, Z)
    if not is_elementary_abelian_2(Q):
        return None
    labels, reps = coset_labels(G, Z)
    # q(x) = x~^2 in Z; isotropic classes
    iso = sum(1 for r in reps if G.mul(r, r) == G.identity)
    m = (a - 1) // 2
    if iso == 2 ** (2 * m - 1) + 2 ** (m - 1):
        return "+"
    if iso == 2 ** (2 * m - 1) - 2 ** (m - 1):
        return "-"
    return None


def normal_sylow2(G: FiniteGroup):
    """Indices of the unique Sylow 2-subgroup when it is normal, else None."""
    a, _ = _two_part(G.n)
    twos = [i for i in range(G.n) if int(G.element_orders[i]) & (int(G.element_orders[i]) - 1) == 0]
    if len(twos) != 2 ** a:
        return None
    if sorted(G.closure(twos)) != sorted(twos):
        return None
    return twos


def _structural_match(G: FiniteGroup, label: str) -> bool:
    if label == "(Z/2)^6":
        return G.n == 64 and is_elementary_abelian_2(G)
    if label == "2_+^{1+6}":
        return G.n == 128 and extraspecial_type(G) == "+"
    if label in ("(Z/2)^6 : Z/3", "(Z/2)^6 : Z/15", "2_+^{1+6} : Z/3", "2_+^{1+6} : Z/15"):
        n = 3 if label.endswith("Z/3") else 15
        base = "(Z/2)^6" if label.startswith("(Z/2)") else "2_+^{1+6}"
        P = normal_sylow2(G)
        if P is None:
            return False
        if not _structural_match(subgroup(G, P), base):
            return False
        Q = quotient(G, P)
        return Q.n == n and int(Q.element_orders.max()) == n
    return False


STRUCTURAL = {"(Z/2)^6", "2_+^{1+6}", "(Z/2)^6 : Z/3", "(Z/2)^6 : Z/15", "2_+^{1+6} : Z/3", "2_+^{1+6} : Z/15"}


def identify(G: FiniteGroup) -> str:
    fp = fingerprint(G)
    cands = [L for L, n in CATALOG_ORDERS.items() if n == G.n]
    for L in cands:
        if fingerprint(catalog_group(L)) != fp:
            continue
        if L in STRUCTURAL:
            if _structural_match(G, L):
                return L
        elif is_isomorphic(G, catalog_group(L)):
            return L
    return UNRECOGNIZED
