import pytest

from matroid_recolouring.core.search import BreadthFirstSearch
from matroid_recolouring.errors import CapacityError


def line_moves(state: int) -> list[tuple[int, str]]:
    """Steps of +1 and +2 on the integers 0..10."""
    return [(state + step, f"+{step}") for step in (1, 2) if state + step <= 10]


class TestBreadthFirstSearch:
    def test_shortest_path_with_witnesses(self):
        # Arrange
        search = BreadthFirstSearch(line_moves)

        # Act
        steps = search.path(0, 5)

        # Assert
        assert steps is not None
        assert [state for state, _ in steps] == [0, 2, 4, 5]
        assert [witness for _, witness in steps] == [None, "+2", "+2", "+1"]

    def test_start_is_goal(self):
        assert BreadthFirstSearch(line_moves).path(3, 3) == [(3, None)]

    def test_unreachable_goal(self):
        assert BreadthFirstSearch(line_moves).path(5, 0) is None

    def test_state_cap(self):
        search = BreadthFirstSearch(line_moves, max_states=3)

        with pytest.raises(CapacityError):
            search.path(0, 10)

    def test_component(self):
        # Act
        reached = BreadthFirstSearch(line_moves).component(7)

        # Assert
        assert reached == [7, 8, 9, 10]
