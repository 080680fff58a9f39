"""One entry point dispatching on game kind and variant."""
from __future__ import annotations

from .cost_parity import solve_bounded_cost_parity, solve_cost_parity
from .cost_streett import solve_bounded_cost_streett, solve_cost_streett
from .model import Game, GameSolution
from .parity import solve_parity
from .streett import solve_streett


def solve_game(game: Game, parity_solver=solve_parity, streett_solver=solve_streett) -> GameSolution:
    """Solve ``game`` in its own variant; backends are injectable."""
    a, cond = game.arena, game.condition
    if game.kind == "parity":
        if game.variant == "classical":
            sol = parity_solver(a, cond)
            return GameSolution(sol.region0, sol.region1,
                                getattr(sol, "strategy0", None), getattr(sol, "strategy1", None))
        if game.variant == "bounded-cost":
            return solve_bounded_cost_parity(a, cond, parity_solver)
        return solve_cost_parity(a, cond, parity_solver)
    if game.variant == "classical":
        return streett_solver(a, cond)
    if game.variant == "bounded-cost":
        return solve_bounded_cost_streett(a, cond, streett_solver)
    return solve_cost_streett(a, cond, streett_solver)
