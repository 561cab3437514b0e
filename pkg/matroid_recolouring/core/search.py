"""Breadth-first search over implicitly given state graphs."""
from collections import deque
from collections.abc import Callable, Hashable, Iterable
from typing import Generic, TypeVar

from matroid_recolouring.constants import DEFAULT_MAX_STATES
from matroid_recolouring.errors import CapacityError

S = TypeVar("S", bound=Hashable)
W = TypeVar("W")

Expand = Callable[[S], Iterable[tuple[S, W]]]


class BreadthFirstSearch(Generic[S, W]):
    """Layered search with a hashed visited set and a hard cap on visited states.

    ``expand`` returns the successors of a state together with the witness of the step,
    in the order in which they must be explored.
    """

    def __init__(self, expand: Expand, *, max_states: int = DEFAULT_MAX_STATES) -> None:
        self.expand = expand
        self.max_states = max_states

    def _visit(self, parents: dict, state: S, entry: tuple[S, W] | None) -> None:
        if len(parents) >= self.max_states:
            raise CapacityError(f"search visited more than {self.max_states=} states")
        parents[state] = entry

    def path(self, start: S, goal: S) -> list[tuple[S, W | None]] | None:
        """Shortest path as (state, witness of the step into it); None when unreachable."""
        parents: dict[S, tuple[S, W] | None] = {}
        self._visit(parents, start, None)
        queue = deque([start])
        while queue and goal not in parents:
            current = queue.popleft()
            for successor, witness in self.expand(current):
                if successor in parents:
                    continue
                self._visit(parents, successor, (current, witness))
                if successor == goal:
                    break
                queue.append(successor)
        if goal not in parents:
            return None
        steps: list[tuple[S, W | None]] = []
        state, entry = goal, parents[goal]
        while entry is not None:
            steps.append((state, entry[1]))
            state, entry = entry[0], parents[entry[0]]
        steps.append((start, None))
        return steps[::-1]

    def component(self, start: S) -> list[S]:
        """Every state reachable from ``start``, in discovery order."""
        parents: dict[S, tuple[S, W] | None] = {}
        self._visit(parents, start, None)
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for successor, witness in self.expand(current):
                if successor not in parents:
                    self._visit(parents, successor, (current, witness))
                    queue.append(successor)
        return list(parents)
