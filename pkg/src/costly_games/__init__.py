"""Solvers and certifiers for parity and Streett games with costs."""
from .cost_parity import (build_request_memory, build_spoiler, extract_positional_max,
                          pcrr_coloring, product_strategy0, simulate_play,
                          solve_bounded_cost_parity, solve_cost_parity)
from .cost_streett import (build_open_request_memory, derived_spec, parity_as_streett,
                           solve_bounded_cost_streett, solve_cost_streett)
from .generators import (RandomGameSpec, example_game, generate_random_game,
                         lower_bound_parity_game, lower_bound_streett_game)
from .graph import attractor, is_trap, parity_cycle_check, product, remove_region, subdivide
from .io import export_dot, parse_game, parse_strategy, serialize_game, serialize_strategy
from .model import (Arena, FiniteStateStrategy, Game, GameError, GameSolution, Lasso,
                    MemoryStructure, ParityColoring, PositionalStrategy, StreettSpec,
                    eval_condition_lasso, eval_cor, eval_parity_lasso, validate_arena)
from .parity import solve_parity
from .sheets import (SheetSpace, initial_sheet, positionalize, sheet_increment,
                     sheet_step)
from .solve import solve_game
from .streett import solve_streett
from .verify import (parity_oracle_enumerate, shrink_memory, streett_oracle_enumerate,
                     verify_bounded_streett_strategy, verify_bounded_strategy,
                     verify_cost_strategy, verify_layered_certificate,
                     verify_parity_strategy, verify_streett_strategy)

__version__ = "0.1.0"
