from pydantic import BaseModel, Field

from matroid_recolouring.constants import FORMAT_VERSION
from matroid_recolouring.utils import CrossingCase


class ReductionReport(BaseModel):
    """Outcome of checking the gadget reduction on one (M, N) instance."""

    source_points: int
    gadget_points: int
    clique_size: int
    source_homs: int
    pairs_checked: int = 0
    # (i, j) indices into the lexicographic list of source homs
    mismatches: list[tuple[int, int]] = Field(default_factory=list)
    lifted_edge_paths: int = 0
    lifted_edge_failures: int = 0
    # gadget edges met around the lifts; one edge per orbit of the target's automorphisms
    # is checked and counted in restricted_edges
    gadget_edges: int = 0
    automorphisms: int = 1
    restricted_edges: int = 0
    restricted_edge_failures: int = 0
    constructive_paths: int = 0
    searched_paths: int = 0
    crossing_cases: dict[str, int] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """No mismatch, every witness path validated and built without search.

        Steps crossing the clique block must be stars or pairs carrying the matching constant.
        """
        return not (
            self.mismatches
            or self.lifted_edge_failures
            or self.restricted_edge_failures
            or self.searched_paths
            or self.crossing_cases.get(CrossingCase.UNEXPECTED.value, 0)
        )


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    elapsed_time_secs: float = 0.0


class VerificationReport(BaseModel):
    """The acceptance suite, in a fixed check order."""

    format_version: int = FORMAT_VERSION
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        """Every check passed."""
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        """One line per check, timings left out so the text is reproducible."""
        lines = [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else "")
            for c in self.checks
        ]
        passed = sum(c.passed for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)
