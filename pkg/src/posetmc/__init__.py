"""First-order model checking on colored posets of bounded width.

The local engine decides sentences through rank-indexed arc structures whose
vertex types summarize bounded-radius surroundings; quantifier moves are then
confined to small balls, which keeps the work per sentence almost linear in
the poset for fixed width and rank.  interval provides a reduction from
first-order properties of interval graphs with few interval lengths.
"""

__version__ = "0.1.0"

from .formula import (  # noqa: F401
    DEFAULT_COLOR, ColorSet, Formula, FormulaError, FreeVariableError,
    ParseError, parse, quantifier_rank, random_sentence, subformula_positions,
    to_nnf, to_text,
)
from .poset import (  # noqa: F401
    AxiomError, CycleError, Poset, PosetError, brute_force_width,
    from_relation, random_poset, width_and_chain_partition,
)
from .typegraph import (  # noqa: F401
    DEFAULT_SIZE_CAP, RankDigraph, RootedNeighborhood, SizeCapError, ball,
    build_next, build_rank0, build_up_to, canonical_type, debug_dump,
    neighborhood, radius,
)
from .checker import (  # noqa: F401
    CheckResult, GamePosition, LocalityError, check_local, eval_naive,
    local_move_set, type_set,
)
from .interval import (  # noqa: F401
    D_COLOR, Interval, IntervalError, IntervalInstance, build_poset,
    check_interval, eval_graph_fo, interpret, partition_by_length, perturb,
)
