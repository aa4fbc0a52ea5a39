"""Rank-indexed arc structures over a poset and their local types.

Rank 0 types are (color, chain index) pairs.  The rank-s digraph carries, for
every element p and every chain C_j, a "max"/"min" arc to the topmost and
bottommost element of C_j, and for every rank-s type t present on C_j an "up"
arc to the bottommost element of type t above-or-equal p and a "down" arc to
the topmost one below-or-equal p (the element p itself never counts as its
own target).  The rank-(s+1) type of p is the isomorphism type of the ball of
radius 3*4^s - 1 around p, taken as a rooted structure with the rank-s types
as vertex labels, the four arc kinds, and the induced order.

Types are interned process-wide, so equal TypeIds mean isomorphic local
structure even across different posets.
"""

import threading
from bisect import bisect_left, bisect_right

MAX, MIN, UP, DOWN = range(4)
LABELS = ("max", "min", "up", "down")

#: Refuse to canonicalize neighborhoods larger than this.
DEFAULT_SIZE_CAP = 50_000


class SizeCapError(Exception):
    pass


def radius(rank: int) -> int:
    """Ball radius used to form the types of the next rank."""
    return 3 * 4 ** rank - 1


# ---------------------------------------------------------------------------
# process-wide type interning

_registry = {}
_type_keys = []  # TypeId -> (rank, payload)
_registry_lock = threading.Lock()


def _intern(rank, payload) -> int:
    key = (rank, payload)
    tid = _registry.get(key)
    if tid is None:
        with _registry_lock:
            tid = _registry.get(key)
            if tid is None:
                tid = len(_type_keys)
                _type_keys.append(key)
                _registry[key] = tid
    return tid


def type_rank(tid: int) -> int:
    return _type_keys[tid][0]


def type_payload(tid: int):
    return _type_keys[tid][1]


# ---------------------------------------------------------------------------
# digraphs

class RankDigraph:
    """The rank-s arc structure over a poset.

    tau[e] is the rank-s TypeId of element e, arcs[e] the sorted
    (label, target) pairs leaving e, out[e] the distinct arc targets used by
    ball searches.
    """

    __slots__ = ("rank", "tau", "arcs", "out", "poset")

    def __init__(self, rank, tau, arcs, out, poset):
        self.rank = rank
        self.tau = tau
        self.arcs = arcs
        self.out = out
        self.poset = poset

    @property
    def n(self):
        return self.poset.n

    @property
    def radius(self):
        return radius(self.rank)

    def __repr__(self):
        return "RankDigraph(rank=%d, n=%d, types=%d)" % (
            self.rank, self.n, len(set(self.tau)))


def _assemble(p, taus, rank) -> RankDigraph:
    lo, hi = p.chain_bounds()
    type_pos = []
    for chain in p.chains:
        per = {}
        for pos, e in enumerate(chain):
            per.setdefault(taus[e], []).append(pos)
        type_pos.append(per)
    arcs = []
    outs = []
    for e in range(p.n):
        a = []
        for j, chain in enumerate(p.chains):
            if not chain:
                continue
            a.append((MAX, chain[-1]))
            a.append((MIN, chain[0]))
            lo_ej = lo[e][j]
            hi_ej = hi[e][j]
            pos_e = p.chain_pos[e] if p.chain_index[e] == j else -1
            for positions in type_pos[j].values():
                idx = bisect_left(positions, lo_ej)
                if idx < len(positions) and positions[idx] == pos_e:
                    idx += 1
                if idx < len(positions):
                    a.append((UP, chain[positions[idx]]))
                idx = bisect_right(positions, hi_ej) - 1
                if idx >= 0 and positions[idx] == pos_e:
                    idx -= 1
                if idx >= 0:
                    a.append((DOWN, chain[positions[idx]]))
        a.sort()
        arcs.append(tuple(a))
        outs.append(tuple(sorted({tgt for _, tgt in a})))
    return RankDigraph(rank, tuple(taus), tuple(arcs), tuple(outs), p)


def build_rank0(p, colors=None) -> RankDigraph:
    """Rank-0 digraph; the optional color alphabet does not change the types,
    which only mention colors actually present."""
    taus = [_intern(0, (p.colors[e], p.chain_index[e])) for e in range(p.n)]
    return _assemble(p, taus, 0)


def build_next(p, d: RankDigraph, size_cap=None) -> RankDigraph:
    """Digraph of rank d.rank + 1: canonicalize every ball, then reassemble."""
    taus = [canonical_type(neighborhood(d, e, size_cap)) for e in range(p.n)]
    return _assemble(p, taus, d.rank + 1)


def build_up_to(p, max_rank, size_cap=None):
    """Digraphs of ranks 0..max_rank, cached on the poset."""
    cache = p._digraphs
    if not cache:
        cache.append(build_rank0(p))
    while len(cache) <= max_rank:
        cache.append(build_next(p, cache[-1], size_cap))
    return cache[:max_rank + 1]


def ball(d: RankDigraph, sources, r):
    """Everything reachable from the sources by at most r arcs (directed)."""
    seen = set(sources)
    frontier = list(seen)
    for _ in range(r):
        if not frontier:
            break
        nxt = []
        for u in frontier:
            for v in d.out[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# rooted neighborhoods and canonical types

class RootedNeighborhood:
    """Ball around a root in a rank digraph, as a rooted labeled structure.

    Vertices are renumbered 0..k-1 (ascending element id); labels holds their
    rank-s types, arcs the induced labeled arcs, leq[i] the strict induced
    order as a bitmask over local indices.
    """

    __slots__ = ("rank", "root", "members", "root_local", "labels", "arcs", "leq")

    def __init__(self, rank, root, members, root_local, labels, arcs, leq):
        self.rank = rank
        self.root = root
        self.members = members
        self.root_local = root_local
        self.labels = labels
        self.arcs = arcs
        self.leq = leq

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return "RootedNeighborhood(rank=%d, root=%d, size=%d)" % (
            self.rank, self.root, len(self.members))


def neighborhood(d: RankDigraph, root, size_cap=None) -> RootedNeighborhood:
    cap = DEFAULT_SIZE_CAP if size_cap is None else size_cap
    seen = {root}
    frontier = [root]
    for _ in range(d.radius):
        if not frontier:
            break
        nxt = []
        for u in frontier:
            for v in d.out[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        if len(seen) > cap:
            raise SizeCapError(
                "neighborhood of element %d at rank %d exceeds %d vertices"
                % (root, d.rank, cap))
    members = tuple(sorted(seen))
    local = {e: i for i, e in enumerate(members)}
    labels = tuple(d.tau[e] for e in members)
    arcs = []
    for e in members:
        ie = local[e]
        for code, tgt in d.arcs[e]:
            if tgt in local:
                arcs.append((code, ie, local[tgt]))
    leq = []
    p = d.poset
    for e in members:
        mask = 0
        for f in members:
            if e != f and p.leq(e, f):
                mask |= 1 << local[f]
        leq.append(mask)
    return RootedNeighborhood(d.rank, root, members, local[root], labels,
                              tuple(sorted(arcs)), tuple(leq))


_NREL = 5  # four arc kinds plus the strict order


def _canonical_bytes(nb: RootedNeighborhood) -> bytes:
    """Exact canonical form: iterated degree refinement, then backtracking
    individualization of the first non-singleton cell, keeping the
    lexicographically least serialization."""
    nv = len(nb.members)
    out_adj = [[[] for _ in range(nv)] for _ in range(_NREL)]
    in_adj = [[[] for _ in range(nv)] for _ in range(_NREL)]
    for code, i, j in nb.arcs:
        out_adj[code][i].append(j)
        in_adj[code][j].append(i)
    for i in range(nv):
        m = nb.leq[i]
        while m:
            b = m & -m
            m ^= b
            j = b.bit_length() - 1
            out_adj[4][i].append(j)
            in_adj[4][j].append(i)

    init = [(0 if v == nb.root_local else 1, nb.labels[v]) for v in range(nv)]
    ranking = {key: i for i, key in enumerate(sorted(set(init)))}
    colors0 = [ranking[key] for key in init]

    def refine(colors):
        while True:
            sigs = []
            for v in range(nv):
                sig = [colors[v]]
                for rel in range(_NREL):
                    sig.append(tuple(sorted(colors[w] for w in out_adj[rel][v])))
                    sig.append(tuple(sorted(colors[w] for w in in_adj[rel][v])))
                sigs.append(tuple(sig))
            order = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = [order[s] for s in sigs]
            if new == colors:
                return colors
            colors = new

    def serialize(colors):
        order = sorted(range(nv), key=lambda v: colors[v])
        pos = [0] * nv
        for i, v in enumerate(order):
            pos[v] = i
        rels = []
        for rel in range(_NREL):
            rels.append(tuple(sorted(
                (pos[i], pos[j])
                for i in range(nv) for j in out_adj[rel][i])))
        return (nv, pos[nb.root_local],
                tuple(nb.labels[v] for v in order), tuple(rels))

    best = None

    def search(colors):
        nonlocal best
        colors = refine(colors)
        cell_color = -1
        for v in range(nv):
            c = colors[v]
            if colors.count(c) > 1 and (cell_color < 0 or c < cell_color):
                cell_color = c
        if cell_color < 0:
            cand = serialize(colors)
            if best is None or cand < best:
                best = cand
            return
        for v in range(nv):
            if colors[v] == cell_color:
                search([colors[w] * 2 + (0 if w == v else 1) for w in range(nv)])

    search(colors0)
    return repr(best).encode()


def canonical_type(nb: RootedNeighborhood) -> int:
    """TypeId of a rooted neighborhood; equal ids iff label- and
    root-preserving isomorphic."""
    return _intern(nb.rank + 1, _canonical_bytes(nb))


# ---------------------------------------------------------------------------
# debugging

def debug_dump(digraphs) -> str:
    """Text dump of a digraph stack: type lines, then arc lines, per rank."""
    lines = []
    for d in digraphs:
        for e in range(d.n):
            lines.append("%d: tau(%d) = %d" % (d.rank, e, d.tau[e]))
        for e in range(d.n):
            for code, tgt in d.arcs[e]:
                lines.append("%d: %d -%s-> %d" % (d.rank, e, LABELS[code], tgt))
    return "\n".join(lines)
