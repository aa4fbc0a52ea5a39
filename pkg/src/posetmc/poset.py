"""Finite colored posets with explicit chain partitions.

The order relation is stored as one Python-int bitmask per element: bit j of
rows[i] is set iff i <= j.  Big-int bitwise operations make the transitive
closure, the axiom checks and the matching word-parallel.
"""

import random
from functools import cmp_to_key

from .formula import DEFAULT_COLOR


class PosetError(Exception):
    pass


class CycleError(PosetError):
    pass


class AxiomError(PosetError):
    pass


class Poset:
    """A finite colored poset on elements 0..n-1.

    ``chains`` is the chain partition the rank digraphs are built against,
    each chain listed in ascending order.  ``width`` is the minimum number of
    chains covering the poset, which can be smaller than ``len(chains)`` when
    a partition was supplied explicitly.
    """

    def __init__(self, n, rows, colors, chains, width, min_chains):
        self.n = n
        self.rows = rows
        self.colors = colors
        self.chains = chains
        self.width = width
        self._min_chains = min_chains
        self.chain_index = [0] * n
        self.chain_pos = [0] * n
        for j, chain in enumerate(chains):
            for k, e in enumerate(chain):
                self.chain_index[e] = j
                self.chain_pos[e] = k
        self._bounds = None
        self._digraphs = []  # rank-indexed cache, managed by typegraph

    def leq(self, i, j) -> bool:
        return (self.rows[i] >> j) & 1 == 1

    def above(self, i) -> int:
        """Bitmask of elements above-or-equal i."""
        return self.rows[i]

    def color_names(self):
        return sorted(set(self.colors))

    def chain_bounds(self):
        """Comparability thresholds against every chain.

        Returns (lo, hi) where lo[e][j] is the first position in chain j whose
        element is above-or-equal e (len(chain) if none) and hi[e][j] the last
        position below-or-equal e (-1 if none).  Each {q in C_j : e <= q} is a
        suffix of the chain and each {q : q <= e} a prefix, so binary search
        applies.
        """
        if self._bounds is None:
            lo = []
            hi = []
            for e in range(self.n):
                lo_e = []
                hi_e = []
                for chain in self.chains:
                    a, b = 0, len(chain)
                    while a < b:  # first position with e <= chain[mid]
                        mid = (a + b) // 2
                        if self.leq(e, chain[mid]):
                            b = mid
                        else:
                            a = mid + 1
                    lo_e.append(a)
                    a, b = -1, len(chain) - 1
                    while a < b:  # last position with chain[mid] <= e
                        mid = (a + b + 1) // 2
                        if self.leq(chain[mid], e):
                            a = mid
                        else:
                            b = mid - 1
                    hi_e.append(a)
                lo.append(lo_e)
                hi.append(hi_e)
            self._bounds = (lo, hi)
        return self._bounds

    def __repr__(self):
        return "Poset(n=%d, width=%d, chains=%d)" % (self.n, self.width, len(self.chains))


# ---------------------------------------------------------------------------
# construction

def from_relation(n, pairs, colors=None, mode="cover", chains=None) -> Poset:
    """Build a poset from a pair list.

    In "cover" mode the pairs may be any acyclic partial description; the
    transitive closure is taken.  In "full" mode the pairs must be the entire
    relation, including reflexive pairs, and the order axioms are validated.
    An explicit chain partition may be supplied; otherwise a minimum one is
    computed by matching.
    """
    if n < 0:
        raise PosetError("negative size")
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError("pair (%s, %s) out of range" % (a, b))
    if mode == "cover":
        rows = _closure_cover(n, pairs)
    elif mode == "full":
        rows = _validate_full(n, pairs)
    else:
        raise PosetError("unknown mode %r" % mode)

    color_list = [DEFAULT_COLOR] * n
    if colors:
        for key, name in colors.items():
            e = int(key)
            if not 0 <= e < n:
                raise PosetError("color for element %s out of range" % key)
            color_list[e] = str(name)

    width, min_chains = _min_chain_partition(n, rows)
    if chains is None:
        chains = [list(c) for c in min_chains]
    else:
        chains = _validated_chains(n, rows, chains)
    return Poset(n, rows, color_list, chains, width, min_chains)


def _closure_cover(n, pairs):
    adj = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in pairs:
        if a == b:
            continue
        adj[a].append(b)
        indeg[b] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    if len(order) < n:
        raise CycleError("cover relation has a cycle")
    rows = [1 << i for i in range(n)]
    for u in reversed(order):
        for v in adj[u]:
            rows[u] |= rows[v]
    return rows


def _validate_full(n, pairs):
    rows = [0] * n
    for a, b in pairs:
        rows[a] |= 1 << b
    for i in range(n):
        if not (rows[i] >> i) & 1:
            raise AxiomError("reflexivity violated: pair (%d, %d) missing" % (i, i))
    cols = [0] * n
    for i in range(n):
        m = rows[i]
        while m:
            b = m & -m
            m ^= b
            cols[b.bit_length() - 1] |= 1 << i
    for i in range(n):
        bad = rows[i] & cols[i] & ~(1 << i)
        if bad:
            j = (bad & -bad).bit_length() - 1
            raise AxiomError("antisymmetry violated between %d and %d" % (i, j))
    for i in range(n):
        m = rows[i] & ~(1 << i)
        while m:
            b = m & -m
            m ^= b
            j = b.bit_length() - 1
            missing = rows[j] & ~rows[i]
            if missing:
                k = (missing & -missing).bit_length() - 1
                raise AxiomError(
                    "transitivity violated: %d <= %d <= %d but (%d, %d) missing"
                    % (i, j, k, i, k))
    return rows


def _min_chain_partition(n, rows):
    """Minimum chain cover via maximum bipartite matching on the strict order.

    A matched pair u -> v makes v the successor of u inside a chain; the
    uncovered elements head the chains, so the cover size is n - |matching|,
    which equals the width.
    """
    adj = [rows[u] & ~(1 << u) for u in range(n)]
    match_left = [-1] * n   # element -> its chain successor
    match_right = [-1] * n  # element -> its chain predecessor
    for u0 in range(n):
        parent = {}
        seen = 0
        queue = [u0]
        head = 0
        end = -1
        while head < len(queue) and end < 0:
            u = queue[head]
            head += 1
            cand = adj[u] & ~seen
            seen |= cand
            while cand:
                b = cand & -cand
                cand ^= b
                v = b.bit_length() - 1
                parent[v] = u
                w = match_right[v]
                if w < 0:
                    end = v
                    break
                queue.append(w)
        if end >= 0:
            v = end
            while True:
                u = parent[v]
                prev = match_left[u]
                match_left[u] = v
                match_right[v] = u
                if u == u0:
                    break
                v = prev
    chains = []
    for h in range(n):
        if match_right[h] >= 0:
            continue
        chain = [h]
        cur = h
        while match_left[cur] >= 0:
            cur = match_left[cur]
            chain.append(cur)
        chains.append(chain)
    return len(chains), chains


def _validated_chains(n, rows, chains):
    def leq(a, b):
        return (rows[a] >> b) & 1 == 1

    seen = set()
    out = []
    for chain in chains:
        for e in chain:
            if not 0 <= e < n or e in seen:
                raise PosetError("chain partition is not a partition")
            seen.add(e)

        def compare(a, b):
            if a == b:
                return 0
            if leq(a, b):
                return -1
            if leq(b, a):
                return 1
            raise AxiomError("chain contains incomparable elements %d and %d" % (a, b))

        ordered = sorted(chain, key=cmp_to_key(compare))
        for a, b in zip(ordered, ordered[1:]):
            if not leq(a, b):
                raise AxiomError("chain contains incomparable elements %d and %d" % (a, b))
        out.append(ordered)
    if len(seen) != n:
        raise PosetError("chain partition misses %d element(s)" % (n - len(seen)))
    return out


# ---------------------------------------------------------------------------
# width

def width_and_chain_partition(p: Poset):
    """The width of p together with a minimum chain partition witnessing it."""
    return p.width, [list(c) for c in p._min_chains]


def brute_force_width(p: Poset) -> int:
    """Maximum antichain size by exhaustive search; an oracle for small posets."""
    n = p.n
    if n > 20:
        raise PosetError("brute-force width is limited to 20 elements")
    if n == 0:
        return 0
    full = (1 << n) - 1
    cols = [0] * n
    for i in range(n):
        m = p.rows[i]
        while m:
            b = m & -m
            m ^= b
            cols[b.bit_length() - 1] |= 1 << i
    incomp = [~(p.rows[i] | cols[i]) & full for i in range(n)]
    best = 0

    def go(cand, size):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            go(cand & incomp[v], size + 1)

    go(full, 0)
    return best


# ---------------------------------------------------------------------------
# random instances and serialization

def random_poset_dict(n, target_width, color_count, seed):
    """Reproducible random instance in file-format form; width <= target_width.

    Elements are laid out along a random topological order, dealt onto
    target_width chains, and connected by extra forward constraints, so the
    generating chains stay a valid cover after closure.
    """
    if n < 0 or target_width < 1 or color_count < 1:
        raise PosetError("bad generator parameters")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    w = min(target_width, n) if n else 0
    deal = list(range(w))
    rng.shuffle(deal)
    for _ in range(n - w):
        deal.append(rng.randrange(target_width))
    chains = [[] for _ in range(target_width)]
    for pos in range(n):
        chains[deal[pos]].append(order[pos])
    pairs = set()
    for chain in chains:
        for a, b in zip(chain, chain[1:]):
            pairs.add((a, b))
    for _ in range(rng.randint(0, 2 * n)):
        if n < 2:
            break
        i, j = sorted(rng.sample(range(n), 2))
        pairs.add((order[i], order[j]))
    colors = {str(e): "c%d" % rng.randrange(color_count) for e in range(n)}
    return {
        "n": n,
        "mode": "cover",
        "pairs": sorted([list(pq) for pq in pairs]),
        "colors": colors,
    }


def random_poset(n, target_width, color_count, seed) -> Poset:
    return from_dict(random_poset_dict(n, target_width, color_count, seed))


def from_dict(d) -> Poset:
    try:
        n = int(d["n"])
        mode = d.get("mode", "cover")
        pairs = [(int(a), int(b)) for a, b in d.get("pairs", [])]
        colors = d.get("colors", {}) or {}
    except (KeyError, TypeError, ValueError) as exc:
        raise PosetError("malformed poset description: %s" % exc) from None
    return from_relation(n, pairs, colors=colors, mode=mode)


def to_dict(p: Poset):
    """File-format form of p, with the relation reduced to its cover pairs."""
    n = p.n
    cols = [0] * n
    for i in range(n):
        m = p.rows[i]
        while m:
            b = m & -m
            m ^= b
            cols[b.bit_length() - 1] |= 1 << i
    pairs = []
    for i in range(n):
        m = p.rows[i] & ~(1 << i)
        while m:
            b = m & -m
            m ^= b
            j = b.bit_length() - 1
            between = p.rows[i] & cols[j] & ~(1 << i) & ~(1 << j)
            if not between:
                pairs.append([i, j])
    colors = {str(e): p.colors[e] for e in range(n) if p.colors[e] != DEFAULT_COLOR}
    return {"n": n, "mode": "cover", "pairs": sorted(pairs), "colors": colors}
