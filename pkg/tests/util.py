"""Shared helpers for the test suite: tiny fixtures and brute-force oracles."""

import random

from posetmc import poset as P


def chain(n, colors=None):
    """Total order 0 < 1 < ... < n-1 built from cover pairs."""
    return P.from_relation(n, [(i, i + 1) for i in range(n - 1)],
                           colors=colors or {})


def antichain(n, colors=None):
    return P.from_relation(n, [], colors=colors or {})


def diamond():
    """Bottom, two incomparable middles, top; width 2."""
    return P.from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def two_chains(n):
    """Two disjoint n-chains: 0..n-1 and n..2n-1."""
    pairs = [(i, i + 1) for i in range(n - 1)]
    pairs += [(n + i, n + i + 1) for i in range(n - 1)]
    return P.from_relation(2 * n, pairs)


def random_posets(count, seed, max_n=12, max_width=3, color_count=2, min_n=1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        w = rng.randint(1, max_width)
        out.append(P.random_poset(n, w, color_count, rng.randrange(1 << 30)))
    return out


def min_chain_cover_exhaustive(p):
    """Least number of chains covering p, by backtracking over a linear
    extension.  Exponential; keep n small."""
    n = p.n
    if n == 0:
        return 0
    order = sorted(range(n), key=lambda e: sum(p.leq(d, e) for d in range(n)))

    def place(i, tops):
        if i == n:
            return True
        e = order[i]
        seen_empty = False
        for j, t in enumerate(tops):
            if t is None:
                if seen_empty:
                    continue
                seen_empty = True
                tops[j] = e
                if place(i + 1, tops):
                    return True
                tops[j] = None
            elif p.leq(t, e):
                tops[j] = e
                if place(i + 1, tops):
                    return True
                tops[j] = t
        return False

    for c in range(1, n + 1):
        if place(0, [None] * c):
            return c
    return n


def _leq_pairs(nb):
    out = set()
    for i, mask in enumerate(nb.leq):
        m = mask
        while m:
            low = m & -m
            out.add((i, low.bit_length() - 1))
            m ^= low
    return out


def neighborhood_isomorphic(a, b):
    """Exhaustive search for a root-, label-, arc-, and order-preserving
    bijection between two rooted neighborhoods.  Independent of the canonical
    labeling; exponential, so keep the structures small."""
    n = len(a.members)
    if n != len(b.members):
        return False
    if sorted(a.labels) != sorted(b.labels):
        return False
    if a.labels[a.root_local] != b.labels[b.root_local]:
        return False
    arcs_a, arcs_b = set(a.arcs), set(b.arcs)
    if len(arcs_a) != len(arcs_b):
        return False
    leq_a, leq_b = _leq_pairs(a), _leq_pairs(b)
    if len(leq_a) != len(leq_b):
        return False

    order = [a.root_local] + [v for v in range(n) if v != a.root_local]
    mapping = [-1] * n
    used = [False] * n

    def compatible(v, w, upto):
        if a.labels[v] != b.labels[w]:
            return False
        for code in range(4):
            if ((code, v, v) in arcs_a) != ((code, w, w) in arcs_b):
                return False
        for k in range(upto):
            u, mu = order[k], mapping[order[k]]
            for code in range(4):
                if ((code, v, u) in arcs_a) != ((code, w, mu) in arcs_b):
                    return False
                if ((code, u, v) in arcs_a) != ((code, mu, w) in arcs_b):
                    return False
            if ((v, u) in leq_a) != ((w, mu) in leq_b):
                return False
            if ((u, v) in leq_a) != ((mu, w) in leq_b):
                return False
        return True

    def search(k):
        if k == n:
            return True
        v = order[k]
        candidates = (b.root_local,) if k == 0 else range(n)
        for w in candidates:
            if used[w] or not compatible(v, w, k):
                continue
            mapping[v] = w
            used[w] = True
            if search(k + 1):
                return True
            used[w] = False
            mapping[v] = -1
        return False

    return search(0)


def arc_triples(d):
    """All arcs of a rank digraph as (source, code, target) triples."""
    out = set()
    for e in range(d.n):
        for code, t in d.arcs[e]:
            out.add((e, code, t))
    return out
