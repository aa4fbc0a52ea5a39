"""Checking first-order sentences over small colored posets.

Builds a few posets, parses sentences about them, and runs both engines:
the naive evaluator that tries every element, and the local game engine
whose later quantifier moves are confined to balls in the type digraphs.
"""

from posetmc import check_local, eval_naive, from_relation, parse

# A 6-element fence: 0 < 1 > 2 < 3 > 4 < 5, with the odd elements red.
fence = from_relation(
    6,
    [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5)],
    colors={"1": "red", "3": "red", "5": "red"},
)
print("fence: n=%d width=%d chains=%s" % (fence.n, fence.width, fence.chains))

sentences = [
    "E x. red(x) & (A y. y <= x -> y = x)",   # a red maximal element
    "A x. E y. x <= y & red(y)",              # everything sits below red
    "E x. E y. !x <= y & !y <= x",            # an incomparable pair
    "A x. A y. x <= y | y <= x",              # totality (false on a fence)
]

for text in sentences:
    f = parse(text)
    naive = eval_naive(fence, f)
    local = check_local(fence, f)
    print("%-42s naive=%-5s local=%-5s positions=%d"
          % (text, naive, local.verdict, local.positions))

# The game result carries diagnostics: how many memoized game positions were
# explored, the largest move ball, and the number of types per rank.
f = parse("A x. E y. x <= y & red(y)")
r = check_local(fence, f)
print("\ndiagnostics for %r:" % f)
print("  positions=%d  maxBall=%d  typeCounts=%s  millis=%d"
      % (r.positions, r.max_ball, r.type_counts, r.millis))

# Disabling the first-move shortcut makes the opening move range over every
# element instead of one representative per type; verdicts never change.
wide = check_local(fence, f, first_move_opt=False)
print("  without first-move shortcut: verdict=%s positions=%d"
      % (wide.verdict, wide.positions))
