"""Model-checking engines for first-order sentences over colored posets.

eval_naive is the direct recursive oracle.  check_local runs the radius-limited
evaluation game on the rank digraphs: a quantifier move from a position with
assigned elements is restricted to a ball around them whose radius depends on
the quantifier rank of the body, and a move from a position with no assigned
elements may be narrowed to one representative per top-rank type.
"""

import time

from . import formula as F
from . import typegraph as T


class LocalityError(Exception):
    """An element chosen under locality verification left its allowed ball."""


class GamePosition:
    """A subformula occurrence plus elements for its free variables, in
    free_variables order."""

    def __init__(self, subformula, assignment):
        self.subformula = subformula
        self.assignment = tuple(assignment)

    def __repr__(self):
        return "GamePosition(%r, %r)" % (self.subformula, self.assignment)


class CheckResult:
    def __init__(self, verdict, positions, max_ball, type_counts, millis):
        self.verdict = verdict
        self.positions = positions
        self.max_ball = max_ball
        self.type_counts = type_counts
        self.millis = millis

    def to_json(self):
        return {
            "verdict": self.verdict,
            "positions": self.positions,
            "typeCountsPerRank": list(self.type_counts),
            "millis": self.millis,
        }

    def __repr__(self):
        return "CheckResult(verdict=%s, positions=%d)" % (self.verdict, self.positions)


# ---------------------------------------------------------------------------
# naive engine

def eval_naive(p, f, env=None, stats=None) -> bool:
    """Direct recursive evaluation over all elements; the reference oracle.

    env may pre-assign elements to free variables, which lets open formulas
    be evaluated.  Bound names must not shadow each other or env entries
    (parse() output satisfies this).  stats, if given, accumulates the number
    of visited (subformula, assignment) nodes under key "nodes".
    """
    env = dict(env) if env else {}
    counting = stats is not None

    def lookup(name):
        try:
            return env[name]
        except KeyError:
            raise F.FormulaError(
                "variable '%s' has no assigned element" % name) from None

    def ev(node):
        if counting:
            stats["nodes"] = stats.get("nodes", 0) + 1
        if isinstance(node, F.And):
            return ev(node.left) and ev(node.right)
        if isinstance(node, F.Or):
            return ev(node.left) or ev(node.right)
        if isinstance(node, F.Not):
            return not ev(node.body)
        if isinstance(node, F.Exists):
            for e in range(p.n):
                env[node.var] = e
                if ev(node.body):
                    return True
            env.pop(node.var, None)
            return False
        if isinstance(node, F.Forall):
            for e in range(p.n):
                env[node.var] = e
                if not ev(node.body):
                    return False
            env.pop(node.var, None)
            return True
        if isinstance(node, F.LessEq):
            return p.leq(lookup(node.left), lookup(node.right))
        if isinstance(node, F.Eq):
            return lookup(node.left) == lookup(node.right)
        if isinstance(node, F.Color):
            return p.colors[lookup(node.var)] == node.color
        raise F.FormulaError("atom %r is not part of the poset vocabulary" % node)

    return ev(f)


# ---------------------------------------------------------------------------
# local game engine

class _Node:
    __slots__ = ("kind", "idx", "fv", "children", "child_maps", "var",
                 "body_rank", "op", "negate")


def _compile(f):
    """Flatten an NNF formula into indexed nodes with assignment routing.

    child_maps[k][i] gives, for child k's i-th free variable, its index in
    this node's free variables, or -1 for the variable bound here.
    """
    nodes = []

    def walk(node):
        rec = _Node()
        rec.idx = len(nodes)
        nodes.append(rec)
        rec.fv = F.free_variables(node)
        rec.negate = False
        if isinstance(node, (F.And, F.Or)):
            rec.kind = "and" if isinstance(node, F.And) else "or"
            rec.children = [walk(node.left), walk(node.right)]
            rec.child_maps = [tuple(rec.fv.index(v) for v in c.fv)
                              for c in rec.children]
        elif isinstance(node, (F.Exists, F.Forall)):
            rec.kind = "exists" if isinstance(node, F.Exists) else "forall"
            rec.var = node.var
            rec.body_rank = F.quantifier_rank(node.body)
            child = walk(node.body)
            rec.children = [child]
            rec.child_maps = [tuple(-1 if v == node.var else rec.fv.index(v)
                                    for v in child.fv)]
        else:
            atom = node
            if isinstance(node, F.Not):
                rec.negate = True
                atom = node.body
            rec.kind = "atom"
            if isinstance(atom, F.LessEq):
                rec.op = ("leq", rec.fv.index(atom.left), rec.fv.index(atom.right))
            elif isinstance(atom, F.Eq):
                rec.op = ("eq", rec.fv.index(atom.left), rec.fv.index(atom.right))
            elif isinstance(atom, F.Color):
                rec.op = ("color", atom.color, rec.fv.index(atom.var))
            else:
                raise F.FormulaError(
                    "atom %r is not part of the poset vocabulary" % atom)
        return rec

    return walk(f)


def local_move_set(digraphs, pos: GamePosition, inner_rank):
    """Elements available to the quantifier move at pos, whose body has
    quantifier rank inner_rank.  With no assigned elements the whole domain is
    available; otherwise a ball around the assigned elements."""
    if not pos.assignment:
        return set(range(digraphs[0].n))
    if inner_rank == 0:
        return T.ball(digraphs[0], pos.assignment, T.radius(0))
    if inner_rank >= len(digraphs):
        raise ValueError("digraphs not built up to rank %d" % inner_rank)
    return T.ball(digraphs[inner_rank], pos.assignment,
                  T.radius(inner_rank) - T.radius(inner_rank - 1))


def type_set(p, rank, size_cap=None):
    """The set of TypeIds realized in p at the given rank."""
    digs = T.build_up_to(p, rank, size_cap)
    return set(digs[rank].tau)


def check_local(p, f, *, first_move_opt=True, memo=True, verify_locality=False,
                size_cap=None) -> CheckResult:
    """Decide p |= f with the radius-limited game.

    f must be a sentence of quantifier rank >= 1 (it is normalized to NNF
    here).  first_move_opt narrows zero-assignment quantifier moves to one
    representative per top-rank type; memo caches positions; verify_locality
    asserts that restricted moves stay inside the ball granted by the nearest
    enclosing zero-assignment move.
    """
    started = time.perf_counter()
    f = F.to_nnf(f)
    F.ensure_sentence(f)
    q = F.quantifier_rank(f)
    if q == 0:
        raise F.FormulaError("sentence has no quantifier; rank must be >= 1")
    digs = T.build_up_to(p, q - 1, size_cap)
    root = _compile(f)

    top = digs[-1]
    if first_move_opt:
        reps = []
        seen = set()
        for e in range(p.n):
            t = top.tau[e]
            if t not in seen:
                seen.add(t)
                reps.append(e)
    else:
        reps = list(range(p.n))

    table = {} if memo else None
    stats = {"positions": 0, "max_ball": 0}

    def restricted_moves(node, assignment):
        r = node.body_rank
        if r == 0:
            d, rad = digs[0], T.radius(0)
        else:
            d, rad = digs[r], T.radius(r) - T.radius(r - 1)
        ms = sorted(T.ball(d, assignment, rad))
        if len(ms) > stats["max_ball"]:
            stats["max_ball"] = len(ms)
        return ms

    def reset_ball(node, chosen):
        # scope of later restricted moves after a zero-assignment choice
        r = node.body_rank
        if r == 0:
            return None
        return frozenset(T.ball(digs[r - 1], (chosen,), T.radius(r - 1)))

    def solve(node, assignment, allowed):
        if table is not None:
            key = (node.idx, assignment)
            hit = table.get(key)
            if hit is not None:
                return hit
        stats["positions"] += 1
        kind = node.kind
        if kind == "atom":
            op = node.op
            if op[0] == "leq":
                value = p.leq(assignment[op[1]], assignment[op[2]])
            elif op[0] == "eq":
                value = assignment[op[1]] == assignment[op[2]]
            else:
                value = p.colors[assignment[op[2]]] == op[1]
            if node.negate:
                value = not value
        elif kind == "and" or kind == "or":
            want = kind == "or"
            value = not want
            for child, cmap in zip(node.children, node.child_maps):
                sub = tuple(assignment[i] for i in cmap)
                if solve(child, sub, allowed) == want:
                    value = want
                    break
        else:
            child = node.children[0]
            cmap = node.child_maps[0]
            want = kind == "exists"
            value = not want
            if assignment:
                pool = restricted_moves(node, assignment)
                if verify_locality and allowed is not None:
                    for e in pool:
                        if e not in allowed:
                            raise LocalityError(
                                "element %d outside the allowed ball" % e)
                for e in pool:
                    sub = tuple(e if i < 0 else assignment[i] for i in cmap)
                    if solve(child, sub, allowed) == want:
                        value = want
                        break
            else:
                for e in reps:
                    sub = tuple(e if i < 0 else assignment[i] for i in cmap)
                    inner = reset_ball(node, e) if verify_locality else None
                    if solve(child, sub, inner) == want:
                        value = want
                        break
        if table is not None:
            table[key] = value
        return value

    verdict = solve(root, (), None)
    millis = int(round((time.perf_counter() - started) * 1000))
    return CheckResult(verdict, stats["positions"], stats["max_ball"],
                       [len(set(d.tau)) for d in digs], millis)
