"""Core domain types shared by ingestion, construction, classification and rendering.

All values are immutable after construction; every constructor validates its
own invariants and raises ``ValueError`` on violation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

#: Index of the artificial root node. The root carries no year, weight or
#: states; it exists only so that parentless topics have somewhere to attach.
ROOT_INDEX = -1


class ThresholdMode(enum.Enum):
    """How a candidate's TES is compared against ``min_tes``."""

    INCLUSIVE = "inclusive"  # keep candidates with tes >= min_tes
    EXCLUSIVE = "exclusive"  # keep candidates with tes >  min_tes


class EmergingState(enum.Enum):
    """How a topic came to exist."""

    BORN = "born"
    FUSED = "fused"
    REBORN = "reborn"
    FLOURISHING = "flourishing"


class EvolvingState(enum.Enum):
    """How a topic influences later generations."""

    SPLIT = "split"
    DEAD = "dead"
    FLOURISHING = "flourishing"


@dataclass(frozen=True)
class TopicRecord:
    """One time-stamped topic: identity, importance weight and top terms."""

    id: str
    index: int
    weight: float
    year: int
    words: tuple[str, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("topic id must be non-empty")
        if self.index < 0:
            raise ValueError(f"topic {self.id!r}: index must be >= 0, got {self.index}")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"topic {self.id!r}: weight must be in [0, 1], got {self.weight}")
        if not self.words:
            raise ValueError(f"topic {self.id!r}: words must be non-empty")

    @property
    def display_label(self) -> str:
        """Label for rendering; falls back to the id when no label is set."""
        return self.label if self.label is not None else self.id


@dataclass(frozen=True)
class TemporalTopicProfile:
    """Ordered collection of time-stamped topics.

    Topics are kept sorted ascending by (year, index); this order is also the
    row/column order of the associated :class:`TesMatrix`. Indices are the
    topics' identity (exactly 0..N-1) and need not coincide with positions.
    """

    topics: tuple[TopicRecord, ...]

    def __post_init__(self) -> None:
        if not self.topics:
            raise ValueError("profile must contain at least one topic")
        n = len(self.topics)
        indices = [t.index for t in self.topics]
        if len(set(indices)) != n:
            raise ValueError("topic indices must be unique")
        if set(indices) != set(range(n)):
            raise ValueError(f"topic indices must be exactly 0..{n - 1}")
        ids = [t.id for t in self.topics]
        if len(set(ids)) != n:
            raise ValueError("topic ids must be unique")
        keys = [(t.year, t.index) for t in self.topics]
        if keys != sorted(keys):
            raise ValueError("topics must be sorted ascending by (year, index)")

    def __len__(self) -> int:
        return len(self.topics)

    @cached_property
    def distinct_years(self) -> tuple[int, ...]:
        """Sorted deduplicated topic years; its length is the number of time slots."""
        return tuple(sorted({t.year for t in self.topics}))

    @cached_property
    def latest_year(self) -> int:
        return self.distinct_years[-1]

    @cached_property
    def _by_index(self) -> dict[int, TopicRecord]:
        return {t.index: t for t in self.topics}

    @cached_property
    def _position_by_index(self) -> dict[int, int]:
        return {t.index: pos for pos, t in enumerate(self.topics)}

    def topic(self, index: int) -> TopicRecord:
        """The topic with identity `index` (not profile position)."""
        return self._by_index[index]

    def position_of(self, index: int) -> int:
        """Profile position of the topic with identity `index`; this is its matrix row/column."""
        return self._position_by_index[index]

    def year_of(self, index: int) -> int:
        return self._by_index[index].year


@dataclass(frozen=True)
class TesMatrix:
    """N x N evolution-strength values between non-contemporary topics.

    Only the strict upper triangle carries information. The diagonal is fixed
    at 1 and entries below the diagonal are stored as 0 and never read.
    Rows/columns follow the profile's (year, index) order.
    """

    n: int
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"matrix dimension must be positive, got {self.n}")
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise ValueError(f"entries must form a {self.n}x{self.n} matrix")
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"matrix entry ({i}, {j}) must be in [0, 1], got {value}")
                if i == j and value != 1.0:
                    raise ValueError(f"diagonal entry ({i}, {i}) must be 1, got {value}")
                if i > j and value != 0.0:
                    raise ValueError(f"entry ({i}, {j}) below the diagonal must be stored as 0")

    def value(self, i: int, j: int) -> float:
        """TES of the position-`i` topic towards the position-`j` topic."""
        return self.entries[i][j]


@dataclass(frozen=True)
class EvolutionParams:
    """Thresholds controlling tree construction and state classification.

    Defaults reproduce the reference example without tuning.
    """

    min_tes: float = 0.2
    min_reborn: int = 2
    min_dead: int = 1
    threshold_mode: ThresholdMode = ThresholdMode.INCLUSIVE

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_tes <= 1.0:
            raise ValueError(f"min_tes must be in [0, 1], got {self.min_tes}")
        if self.min_reborn < 0:
            raise ValueError(f"min_reborn must be >= 0, got {self.min_reborn}")
        if self.min_dead < 0:
            raise ValueError(f"min_dead must be >= 0, got {self.min_dead}")
        if not isinstance(self.threshold_mode, ThresholdMode):
            raise ValueError(f"threshold_mode must be a ThresholdMode, got {self.threshold_mode!r}")

    def admits(self, tes: float) -> bool:
        """Whether a TES value passes the min_tes gate under the configured mode."""
        if self.threshold_mode is ThresholdMode.INCLUSIVE:
            return tes >= self.min_tes
        return tes > self.min_tes


@dataclass(frozen=True)
class TetEdge:
    """Directed ancestry edge; ``from_index`` is ROOT_INDEX for root edges."""

    from_index: int
    to_index: int
    tes: float

    def __post_init__(self) -> None:
        if self.from_index < ROOT_INDEX:
            raise ValueError(f"from_index must be >= {ROOT_INDEX}, got {self.from_index}")
        if self.to_index < 0:
            raise ValueError(f"to_index must be >= 0, got {self.to_index}")
        if not 0.0 <= self.tes <= 1.0:
            raise ValueError(f"edge tes must be in [0, 1], got {self.tes}")
        if self.is_root_edge and self.tes != 1.0:
            raise ValueError("root edges carry tes 1")

    @property
    def is_root_edge(self) -> bool:
        return self.from_index == ROOT_INDEX


@dataclass(frozen=True)
class Tet:
    """Topic evolution tree: a rooted genealogy of topics.

    Despite the name this is a rooted DAG, not a strict tree: a fused topic
    has several parents. Every node is reachable from the implicit root,
    either through a root edge (parentless topics) or through its parents.
    ``states`` is empty until classification and complete afterwards.
    """

    profile: TemporalTopicProfile
    edges: tuple[TetEdge, ...]
    params: EvolutionParams
    latest_year: int
    states: dict[int, tuple[EmergingState, EvolvingState]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        valid = {t.index for t in self.profile.topics}
        seen: set[tuple[int, int]] = set()
        for e in self.edges:
            if e.to_index not in valid:
                raise ValueError(f"edge targets unknown topic index {e.to_index}")
            if not e.is_root_edge:
                if e.from_index not in valid:
                    raise ValueError(f"edge leaves unknown topic index {e.from_index}")
                if self.profile.year_of(e.from_index) >= self.profile.year_of(e.to_index):
                    raise ValueError(
                        f"edge {e.from_index}->{e.to_index} does not advance in time"
                    )
            if (e.from_index, e.to_index) in seen:
                raise ValueError(f"duplicate edge {e.from_index}->{e.to_index}")
            seen.add((e.from_index, e.to_index))
        for v in valid:
            has_root = (ROOT_INDEX, v) in seen
            parent_count = len(self.parents_of(v))
            if has_root and parent_count:
                raise ValueError(f"topic {v} has both a root edge and parents")
            if not has_root and not parent_count:
                raise ValueError(f"topic {v} is unreachable from the root")
        for v in valid:
            parents = self.parents_of(v)
            for i, a in enumerate(parents):
                anc_a = self.ancestors_of(a)
                for b in parents[i + 1 :]:
                    if b in anc_a or a in self.ancestors_of(b):
                        raise ValueError(
                            f"parents {a} and {b} of topic {v} lie on the same pathway"
                        )
        if self.latest_year != self.profile.latest_year:
            raise ValueError(
                f"latest_year {self.latest_year} does not match profile ({self.profile.latest_year})"
            )
        if self.states:
            if set(self.states) != valid:
                raise ValueError("states must cover every topic exactly once")
            for v, (em, ev) in self.states.items():
                if not isinstance(em, EmergingState) or not isinstance(ev, EvolvingState):
                    raise ValueError(f"topic {v} carries malformed states")

    @property
    def is_classified(self) -> bool:
        return bool(self.states)

    @cached_property
    def _parent_map(self) -> dict[int, tuple[int, ...]]:
        parents: dict[int, list[int]] = {t.index: [] for t in self.profile.topics}
        for e in self.edges:
            if not e.is_root_edge:
                parents[e.to_index].append(e.from_index)
        return {v: tuple(ps) for v, ps in parents.items()}

    @cached_property
    def _child_map(self) -> dict[int, tuple[int, ...]]:
        children: dict[int, list[int]] = {t.index: [] for t in self.profile.topics}
        for e in self.edges:
            if not e.is_root_edge:
                children[e.from_index].append(e.to_index)
        return {v: tuple(cs) for v, cs in children.items()}

    def parents_of(self, v: int) -> tuple[int, ...]:
        """Non-root parents of topic `v`, in edge order."""
        return self._parent_map[v]

    def children_of(self, v: int) -> tuple[int, ...]:
        return self._child_map[v]

    def has_root_edge(self, v: int) -> bool:
        return any(e.is_root_edge and e.to_index == v for e in self.edges)

    def ancestors_of(self, v: int) -> set[int]:
        """All topics reachable from `v` by walking edges backwards; excludes the root."""
        out: set[int] = set()
        stack = list(self._parent_map[v])
        while stack:
            u = stack.pop()
            if u not in out:
                out.add(u)
                stack.extend(self._parent_map[u])
        return out
