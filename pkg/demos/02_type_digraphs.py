"""Inspecting rank digraphs and element types.

Every element gets, per chain, arcs to the chain's extremes (max/min) and to
the nearest element of each type above and below it (up/down).  The type of
rank s+1 is the isomorphism class of an element's radius-r_s ball in the
rank-s digraph, so types refine rank by rank and stabilize on repetitive
structure.
"""

from posetmc import build_up_to, debug_dump, from_relation, radius, type_set
from posetmc.typegraph import LABELS


def chain(n, colors=None):
    return from_relation(n, [(i, i + 1) for i in range(n - 1)],
                         colors=colors or {})


print("ball radii per rank:", [radius(s) for s in range(4)])

# Arcs of the rank-0 digraph on a 3-chain: every element points at the
# chain's top and bottom, and at its immediate neighbors of each type.
d0 = build_up_to(chain(3), 0)[0]
for e in range(3):
    arcs = ", ".join("-%s-> %d" % (LABELS[code], t) for code, t in d0.arcs[e])
    print("element %d: %s" % (e, arcs))

# The full dump of a tiny bicolored chain, both ranks.
p = from_relation(2, [(0, 1)], colors={"0": "red", "1": "blue"})
print("\ndump of red < blue:")
print(debug_dump(build_up_to(p, 1)))

# On a long chain the rank-1 type of an interior element no longer depends on
# its position: far enough from both ends, all balls look alike.
d1 = build_up_to(chain(30), 1)[1]
print("rank-1 types along a 30-chain (type ids relabeled for reading):")
relabel = {}
line = []
for t in d1.tau:
    line.append(str(relabel.setdefault(t, len(relabel))))
print("  " + " ".join(line))

# Consequently the set of realized types saturates as chains grow...
for n in (20, 50, 100, 200):
    print("chain of %3d: %2d distinct rank-1 types" % (n, len(type_set(chain(n), 1))))

# ...and two chains with the same rank-1 type set satisfy the same rank-2
# sentences, so verdicts transfer between structures of different sizes.
from posetmc import check_local, parse  # noqa: E402

f = parse("E x. A y. x <= y")
same = type_set(chain(30), 1) == type_set(chain(45), 1)
print("\ntype sets of chain(30) and chain(45) equal: %s" % same)
print("verdicts: %s vs %s" % (check_local(chain(30), f).verdict,
                              check_local(chain(45), f).verdict))
