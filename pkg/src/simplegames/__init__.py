"""Simple games: construction, exact weightedness, certificates, dimension.

The package is organised around one immutable value type, ``SimpleGame``
(a monotone winning family stored by its minimal winning coalitions), with
pure functions grouped by concern:

``core``
    coalitions, game construction, winning queries, maximal losing
    coalitions, duality;
``desirability``
    player comparison, completeness, equivalence classes, coalition models,
    shift-extremal coalitions;
``hierarchical``
    class-cumulative threshold games, their structure theory, and the
    layered witness families;
``lpsep``
    exact-rational threshold separation: weightedness, rough weightedness,
    representation checking;
``certificates``
    trading transforms and certificates of non-weightedness;
``dimension``
    intersection representations, lower/upper bounds, exact dimension and
    codimension;
``boolean``
    AND/OR formulas over weighted games;
``cli``
    the ``simplegames`` command line tool.
"""

from .core import (
    Coalition,
    InvalidGameError,
    SimpleGame,
    TableSizeError,
    dual,
    dummy_players,
    is_winning,
    make_game,
    make_game_from_masks,
    maximal_losing,
    veto_players,
)
from .desirability import (
    ClassPartition,
    CompletenessError,
    Outcome,
    compare_players,
    equivalence_classes,
    is_complete,
    maximal_losing_models,
    minimal_winning_models,
    shift_maximal_losing,
    shift_minimal_winning,
)
from .hierarchical import (
    HierarchicalSpec,
    Kind,
    build,
    build_tripartite,
    losing_witness_family,
    shift_maximal_losing_models,
    validate_partiteness,
)
from .lpsep import (
    RoughRep,
    WeightedRep,
    is_roughly_weighted,
    is_weighted,
    separable,
    verify_representation,
    weighted_game,
)
from .certificates import (
    TradingTransform,
    find_certificate,
    pair_incompatibility_certificate,
    verify_certificate,
    verify_trading_transform,
)
from .dimension import (
    Budget,
    DimensionReport,
    IntersectionRep,
    codimension,
    codimension_direct,
    conjunctive_intersection_rep,
    exact_dimension,
    intersect_games,
    kurz_napel_lower,
    upper_bound_lmax,
)
from .boolean import (
    And,
    BoolFormula,
    Leaf,
    Or,
    eval_formula,
    formula_dual,
    formula_game,
    formula_size,
    parse_formula,
    verify_boolean_rep,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
