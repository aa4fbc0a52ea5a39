"""Interval-graph sentences decided through a poset encoding.

A k-grouped instance holds closed rational intervals whose groups are proper
families (within a group, no interval strictly contains another).  After a
rational perturbation that makes all endpoints distinct without changing the
intersection graph, the instance becomes a poset of width at most k+1: the
endpoint scale is one chain, each group another.  Graph sentences are then
rewritten: quantifiers are relativized to interval elements and adjacency
becomes a bounded overlap test through the endpoint scale.
"""

from fractions import Fraction

from . import formula as F
from . import poset as P
from . import checker

#: Color carried by endpoint-scale elements in the encoding.
D_COLOR = "D"


class IntervalError(Exception):
    pass


class Interval:
    __slots__ = ("a", "b", "group")

    def __init__(self, a, b, group):
        self.a = _fraction(a)
        self.b = _fraction(b)
        self.group = int(group)
        if self.a > self.b:
            raise IntervalError("interval with left end %s beyond right end %s"
                                % (self.a, self.b))

    def __repr__(self):
        return "Interval(%s, %s, group=%d)" % (self.a, self.b, self.group)


def _fraction(x):
    if isinstance(x, float):
        # repr round-trips the decimal the user wrote, not the binary float
        return Fraction(repr(x))
    return Fraction(x)


class IntervalInstance:
    """Closed rational intervals in groups 1..k, each group a proper family."""

    def __init__(self, k, intervals):
        self.k = int(k)
        self.intervals = tuple(intervals)
        if self.k < 0:
            raise IntervalError("negative group count")
        for iv in self.intervals:
            if not 1 <= iv.group <= self.k:
                raise IntervalError("interval group %d outside 1..%d" % (iv.group, self.k))
        self._validate_proper()
        self._reduction = None

    def _validate_proper(self):
        by_group = {}
        for iv in self.intervals:
            by_group.setdefault(iv.group, []).append(iv)
        for g, members in by_group.items():
            for i, u in enumerate(members):
                for v in members[i + 1:]:
                    if (u.a, u.b) == (v.a, v.b):
                        continue
                    if (u.a < v.a and u.b < v.b) or (v.a < u.a and v.b < u.b):
                        continue
                    raise IntervalError(
                        "group %d is not proper: %r and %r nest" % (g, u, v))

    def __len__(self):
        return len(self.intervals)

    def edges(self):
        """Index pairs (i, j), i < j, of intersecting intervals."""
        out = set()
        ivs = self.intervals
        for i in range(len(ivs)):
            for j in range(i + 1, len(ivs)):
                if ivs[i].a <= ivs[j].b and ivs[j].a <= ivs[i].b:
                    out.add((i, j))
        return out

    def reduction(self):
        """Cached (perturbed instance, poset, roles) triple."""
        if self._reduction is None:
            pert = perturb(self)
            p, roles = build_poset(pert)
            self._reduction = (pert, p, roles)
        return self._reduction


def perturb(inst: IntervalInstance) -> IntervalInstance:
    """Shift interval i (1-based) to [a + eps*i/n, b + eps*(1 + i/n)].

    eps is a quarter of the least positive endpoint difference (1/4 if all
    endpoints coincide), small enough that the intersection graph and the
    proper-family property are preserved while all 2n endpoints become
    pairwise distinct.
    """
    n = len(inst.intervals)
    if n == 0:
        return inst
    values = sorted({iv.a for iv in inst.intervals} | {iv.b for iv in inst.intervals})
    gaps = [v2 - v1 for v1, v2 in zip(values, values[1:])]
    eps = min(gaps) / 4 if gaps else Fraction(1, 4)
    moved = [
        Interval(iv.a + eps * Fraction(i, n), iv.b + eps * (1 + Fraction(i, n)), iv.group)
        for i, iv in enumerate(inst.intervals, start=1)
    ]
    out = IntervalInstance(inst.k, moved)
    ends = [iv.a for iv in moved] + [iv.b for iv in moved]
    if len(set(ends)) != 2 * n:
        raise IntervalError("perturbation failed to separate endpoints")
    return out


class PosetRoles:
    """Which poset element plays which role in an interval encoding."""

    __slots__ = ("endpoint_elements", "interval_elements", "endpoint_value",
                 "interval_index")

    def __init__(self, endpoint_elements, interval_elements, endpoint_value,
                 interval_index):
        self.endpoint_elements = endpoint_elements
        self.interval_elements = interval_elements
        self.endpoint_value = endpoint_value
        self.interval_index = interval_index


def build_poset(inst: IntervalInstance):
    """Poset encoding of a perturbed instance; returns (poset, roles).

    Elements 0..2n-1 are the endpoint values in ascending order (colored D,
    chain 0); element 2n+i stands for interval i.  An endpoint sits below an
    interval when it is at most its left end, above when at least its right
    end; intervals are ordered within a group left to right, and across
    anything when one ends before the other begins (that closure keeps the
    relation transitive).  Requires pairwise distinct endpoints: perturb first.
    """
    n = len(inst.intervals)
    values = sorted(v for iv in inst.intervals for v in (iv.a, iv.b))
    if len(set(values)) != len(values):
        raise IntervalError("endpoints must be pairwise distinct; perturb first")
    m = 2 * n
    total = m + n
    value_at = {e: values[e] for e in range(m)}
    pairs = [(e, e) for e in range(total)]
    for i in range(m):
        for j in range(i + 1, m):
            pairs.append((i, j))
    for idx, iv in enumerate(inst.intervals):
        e = m + idx
        for d in range(m):
            if value_at[d] <= iv.a:
                pairs.append((d, e))
            if iv.b <= value_at[d]:
                pairs.append((e, d))
    for i, u in enumerate(inst.intervals):
        for j, v in enumerate(inst.intervals):
            if i == j:
                continue
            if (u.group == v.group and u.a < v.a) or u.b <= v.a:
                pairs.append((m + i, m + j))
    chains = [list(range(m))] if m else []
    for g in range(1, inst.k + 1):
        members = [m + i for i, iv in enumerate(inst.intervals) if iv.group == g]
        members.sort(key=lambda e: inst.intervals[e - m].a)
        if members:
            chains.append(members)
    colors = {e: D_COLOR for e in range(m)}
    p = P.from_relation(total, pairs, colors=colors, mode="full", chains=chains)
    roles = PosetRoles(
        endpoint_elements=tuple(range(m)),
        interval_elements=tuple(range(m, total)),
        endpoint_value=value_at,
        interval_index={m + i: i for i in range(n)},
    )
    return p, roles


# ---------------------------------------------------------------------------
# formula interpretation

def _collect_names(f, out):
    if isinstance(f, (F.Exists, F.Forall)):
        out.add(f.var)
        _collect_names(f.body, out)
    elif isinstance(f, (F.And, F.Or)):
        _collect_names(f.left, out)
        _collect_names(f.right, out)
    elif isinstance(f, F.Not):
        _collect_names(f.body, out)
    elif isinstance(f, F.Color):
        out.add(f.var)
    else:
        out.add(f.left)
        out.add(f.right)


def ensure_graph_formula(f):
    def walk(node):
        if isinstance(node, (F.Exists, F.Forall)):
            walk(node.body)
        elif isinstance(node, (F.And, F.Or)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, F.Not):
            walk(node.body)
        elif not isinstance(node, (F.Edge, F.Eq)):
            raise F.FormulaError(
                "graph sentences may only use edge(x, y) and equality, not %r" % node)

    walk(f)


def interpret(f: F.Formula) -> F.Formula:
    """Rewrite a graph formula over the poset encoding.

    Quantifiers are relativized to non-endpoint elements; edge(x, y) becomes
    "no endpoint element separates x from y", which holds exactly for
    overlapping intervals (and trivially when x and y coincide)."""
    f = F.to_nnf(f)
    ensure_graph_formula(f)
    used = set()
    _collect_names(f, used)
    counter = [0]

    def fresh():
        counter[0] += 1
        name = "d%d" % counter[0]
        while name in used:
            counter[0] += 1
            name = "d%d" % counter[0]
        used.add(name)
        return name

    def beta(x, y):
        d = fresh()
        return F.Forall(d, F.Or(
            F.Not(F.Color(D_COLOR, d)),
            F.And(
                F.Or(F.Not(F.LessEq(x, d)), F.Not(F.LessEq(d, y))),
                F.Or(F.Not(F.LessEq(y, d)), F.Not(F.LessEq(d, x))))))

    def neg_beta(x, y):
        d = fresh()
        return F.Exists(d, F.And(
            F.Color(D_COLOR, d),
            F.Or(
                F.And(F.LessEq(x, d), F.LessEq(d, y)),
                F.And(F.LessEq(y, d), F.LessEq(d, x)))))

    def walk(node):
        if isinstance(node, F.Exists):
            return F.Exists(node.var,
                            F.And(F.Not(F.Color(D_COLOR, node.var)), walk(node.body)))
        if isinstance(node, F.Forall):
            return F.Forall(node.var,
                            F.Or(F.Color(D_COLOR, node.var), walk(node.body)))
        if isinstance(node, (F.And, F.Or)):
            return type(node)(walk(node.left), walk(node.right))
        if isinstance(node, F.Edge):
            return beta(node.left, node.right)
        if isinstance(node, F.Not) and isinstance(node.body, F.Edge):
            return neg_beta(node.body.left, node.body.right)
        return node  # equality literal

    return walk(f)


def eval_graph_fo(n, edges, f, env=None) -> bool:
    """FO evaluation over an undirected graph on vertices 0..n-1.

    edge(v, v) counts as true, matching the interval-overlap semantics (an
    interval always meets itself)."""
    adjacency = set()
    for a, b in edges:
        adjacency.add((a, b) if a <= b else (b, a))
    env = dict(env) if env else {}

    def ev(node):
        if isinstance(node, F.And):
            return ev(node.left) and ev(node.right)
        if isinstance(node, F.Or):
            return ev(node.left) or ev(node.right)
        if isinstance(node, F.Not):
            return not ev(node.body)
        if isinstance(node, F.Exists):
            for e in range(n):
                env[node.var] = e
                if ev(node.body):
                    return True
            env.pop(node.var, None)
            return False
        if isinstance(node, F.Forall):
            for e in range(n):
                env[node.var] = e
                if not ev(node.body):
                    return False
            env.pop(node.var, None)
            return True
        if isinstance(node, F.Edge):
            a, b = env[node.left], env[node.right]
            return a == b or ((a, b) if a <= b else (b, a)) in adjacency
        if isinstance(node, F.Eq):
            return env[node.left] == env[node.right]
        raise F.FormulaError("atom %r is not part of the graph vocabulary" % node)

    return ev(f)


def check_interval(inst: IntervalInstance, f: F.Formula, *, first_move_opt=True,
                   size_cap=None) -> bool:
    """Decide whether the intersection graph of inst satisfies the graph
    sentence f, by perturbing, encoding as a poset and running the local
    engine on the rewritten sentence."""
    return check_interval_result(inst, f, first_move_opt=first_move_opt,
                                 size_cap=size_cap).verdict


def check_interval_result(inst, f, *, first_move_opt=True, size_cap=None):
    f = F.to_nnf(f)
    ensure_graph_formula(f)
    F.ensure_sentence(f)
    _, p, _ = inst.reduction()
    psi = interpret(f)
    return checker.check_local(p, psi, first_move_opt=first_move_opt,
                               size_cap=size_cap)


# ---------------------------------------------------------------------------
# grouping helper, random instances, serialization

def partition_by_length(intervals, lengths) -> IntervalInstance:
    """Group (a, b) pairs by interval length; group numbers follow the sorted
    order of the allowed lengths.  Equal-length families are always proper."""
    allowed = sorted({_fraction(x) for x in lengths})
    index = {length: g for g, length in enumerate(allowed, start=1)}
    ivs = []
    for a, b in intervals:
        length = _fraction(b) - _fraction(a)
        if length not in index:
            raise IntervalError("interval length %s is not in the allowed set" % length)
        ivs.append(Interval(a, b, index[length]))
    return IntervalInstance(len(allowed), ivs)


def random_instance_dict(n, k, seed):
    """Reproducible random instance in file-format form: k groups of equal
    length each, random rational positions."""
    import random as _random
    if n > 0 and k < 1:
        raise IntervalError("need at least one group for a nonempty instance")
    rng = _random.Random(seed)
    lengths = []
    while len(lengths) < k:
        cand = Fraction(rng.randint(1, 8), rng.choice((1, 2, 3)))
        if cand not in lengths:
            lengths.append(cand)
    intervals = []
    span = 4 * max(n, 1)
    for _ in range(n):
        g = rng.randint(1, k) if k else 0
        a = Fraction(rng.randint(0, span), rng.choice((1, 2)))
        intervals.append({"a": str(a), "b": str(a + lengths[g - 1]), "group": g})
    return {"k": k, "intervals": intervals}


def random_instance(n, k, seed) -> IntervalInstance:
    return from_dict(random_instance_dict(n, k, seed))


def from_dict(d) -> IntervalInstance:
    try:
        k = int(d["k"])
        ivs = [Interval(item["a"], item["b"], item["group"])
               for item in d.get("intervals", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise IntervalError("malformed interval description: %s" % exc) from None
    return IntervalInstance(k, ivs)


def to_dict(inst: IntervalInstance):
    return {
        "k": inst.k,
        "intervals": [
            {"a": str(iv.a), "b": str(iv.b), "group": iv.group}
            for iv in inst.intervals
        ],
    }
