"""Geometry for rendering: positions, colors, ticks and label placement.

Node position is meaning, not aesthetics: x is linear in the topic's year,
y is linear in its weight, so the picture reads as a timeline with topic
importance on the vertical axis. The only adjustment is a deterministic
horizontal jitter separating topics that share both year and weight, bounded
so a node never crosses the midpoint towards an adjacent year band.

All coordinates are in canvas units with the origin at the top-left (SVG
orientation): larger weight means smaller y.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import EmergingState, EvolvingState, Tet

#: Compass directions tried for a label, in scan order.
COMPASS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")

#: Fill tokens for the five equal-width TES bins, light to dark.
TES_TOKENS = ("tes-1", "tes-2", "tes-3", "tes-4", "tes-5")

EMERGING_COLOR = {
    EmergingState.BORN: "green",
    EmergingState.FUSED: "purple",
    EmergingState.REBORN: "orange",
    EmergingState.FLOURISHING: None,
}

EVOLVING_COLOR = {
    EvolvingState.SPLIT: "blue",
    EvolvingState.DEAD: "red",
    EvolvingState.FLOURISHING: None,
}

_DIAG = 0.7071067811865476  # 1/sqrt(2)
_LABEL_GAP = 3.0
_JITTER_STEP = 8.0


@dataclass(frozen=True)
class CanvasSpec:
    """Abstract canvas: overall size plus margins reserved for axes and legends."""

    width: float = 1000.0
    height: float = 600.0
    margin_left: float = 60.0
    margin_right: float = 190.0
    margin_top: float = 30.0
    margin_bottom: float = 50.0
    glyph_radius: float = 10.0

    def __post_init__(self) -> None:
        if self.plot_width <= 0 or self.plot_height <= 0:
            raise ValueError("margins leave no plot area")

    @property
    def plot_left(self) -> float:
        return self.margin_left

    @property
    def plot_right(self) -> float:
        return self.width - self.margin_right

    @property
    def plot_top(self) -> float:
        return self.margin_top

    @property
    def plot_bottom(self) -> float:
        return self.height - self.margin_bottom

    @property
    def plot_width(self) -> float:
        return self.plot_right - self.plot_left

    @property
    def plot_height(self) -> float:
        return self.plot_bottom - self.plot_top


@dataclass(frozen=True)
class FontMetrics:
    """Crude text box model: fixed per-character width and line height."""

    char_width: float = 7.2
    height: float = 12.0

    def box_size(self, text: str) -> tuple[float, float]:
        return (max(1, len(text)) * self.char_width, self.height)


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float

    def intersection_area(self, other: "Rect") -> float:
        dx = min(self.x1, other.x1) - max(self.x0, other.x0)
        dy = min(self.y1, other.y1) - max(self.y0, other.y0)
        if dx <= 0 or dy <= 0:
            return 0.0
        return dx * dy

    def intersects(self, other: "Rect") -> bool:
        return self.intersection_area(other) > 0.0

    @classmethod
    def centered(cls, cx: float, cy: float, w: float, h: float) -> "Rect":
        return cls(cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2)


@dataclass(frozen=True)
class LabelAnchor:
    """Chosen compass offset and the final label bounding box."""

    direction: str
    box: Rect


@dataclass(frozen=True)
class TetLayout:
    positions: dict[int, tuple[float, float]]
    label_anchors: dict[int, LabelAnchor]
    edge_colors: dict[tuple[int, int], str]
    node_colors: dict[int, tuple[str | None, str | None]]
    x_ticks: list[tuple[int, float]]
    y_ticks: list[tuple[float, float]]
    canvas: CanvasSpec = field(default_factory=CanvasSpec)


def _x_of_year(year: int, years: tuple[int, ...], canvas: CanvasSpec) -> float:
    if len(years) == 1:
        return canvas.plot_left + canvas.plot_width / 2
    span = years[-1] - years[0]
    return canvas.plot_left + (year - years[0]) / span * canvas.plot_width


def _y_of_weight(weight: float, canvas: CanvasSpec) -> float:
    return canvas.plot_bottom - weight * canvas.plot_height


def compute_positions(tet: Tet, canvas: CanvasSpec | None = None) -> dict[int, tuple[float, float]]:
    """Per-topic canvas coordinates; the dummy root gets none.

    Topics sharing both year and weight are spread horizontally around the
    year's base x, lower index leftmost, never past the midpoint to the next
    year band.
    """
    canvas = canvas or CanvasSpec()
    years = tet.profile.distinct_years
    band = canvas.plot_width if len(years) == 1 else canvas.plot_width / (len(years) - 1)

    groups: dict[tuple[int, float], list[int]] = {}
    for topic in tet.profile.topics:
        groups.setdefault((topic.year, topic.weight), []).append(topic.index)

    positions: dict[int, tuple[float, float]] = {}
    for (year, weight), members in groups.items():
        base_x = _x_of_year(year, years, canvas)
        y = _y_of_weight(weight, canvas)
        members.sort()
        m = len(members)
        step = _JITTER_STEP if m == 1 else min(_JITTER_STEP, 0.9 * band / (m - 1))
        for i, v in enumerate(members):
            positions[v] = (base_x + (i - (m - 1) / 2) * step, y)
    return positions


def tes_color(tes: float) -> str:
    """Token for one of 5 equal-width TES bins; bins are left-closed, top bin closed."""
    if not 0.0 <= tes <= 1.0:
        raise ValueError(f"tes must be in [0, 1], got {tes}")
    if tes < 0.2:
        return TES_TOKENS[0]
    if tes < 0.4:
        return TES_TOKENS[1]
    if tes < 0.6:
        return TES_TOKENS[2]
    if tes < 0.8:
        return TES_TOKENS[3]
    return TES_TOKENS[4]


def state_colors(states: tuple[EmergingState, EvolvingState]) -> tuple[str | None, str | None]:
    """Fixed palette; flourishing is uncolored (None).

    The node glyph is a circle split vertically: left half shows the
    emerging-state color, right half the evolving-state color.
    """
    emerging, evolving = states
    return (EMERGING_COLOR[emerging], EVOLVING_COLOR[evolving])


def _direction_box(
    direction: str, x: float, y: float, w: float, h: float, radius: float
) -> Rect:
    gap = _LABEL_GAP
    r = radius
    d = radius * _DIAG
    if direction == "N":
        return Rect.centered(x, y - r - gap - h / 2, w, h)
    if direction == "S":
        return Rect.centered(x, y + r + gap + h / 2, w, h)
    if direction == "E":
        return Rect.centered(x + r + gap + w / 2, y, w, h)
    if direction == "W":
        return Rect.centered(x - r - gap - w / 2, y, w, h)
    if direction == "NE":
        return Rect.centered(x + d + gap + w / 2, y - d - gap - h / 2, w, h)
    if direction == "SE":
        return Rect.centered(x + d + gap + w / 2, y + d + gap + h / 2, w, h)
    if direction == "SW":
        return Rect.centered(x - d - gap - w / 2, y + d + gap + h / 2, w, h)
    if direction == "NW":
        return Rect.centered(x - d - gap - w / 2, y - d - gap - h / 2, w, h)
    raise ValueError(f"unknown direction {direction!r}")


def place_labels(
    positions: dict[int, tuple[float, float]],
    labels: dict[int, str],
    glyph_radius: float = 10.0,
    font: FontMetrics | None = None,
) -> dict[int, LabelAnchor]:
    """Greedy one-pass label placement over 8 compass offsets.

    Nodes are visited in index order; each label takes the first offset with
    the least total overlap against already-placed labels and all node
    glyphs. Best effort: a single pass, deterministic.
    """
    font = font or FontMetrics()
    glyph_boxes = [
        Rect.centered(x, y, 2 * glyph_radius, 2 * glyph_radius) for x, y in positions.values()
    ]
    placed: dict[int, LabelAnchor] = {}
    for v in sorted(labels):
        x, y = positions[v]
        w, h = font.box_size(labels[v])
        best: tuple[float, str, Rect] | None = None
        for direction in COMPASS:
            box = _direction_box(direction, x, y, w, h, glyph_radius)
            overlap = sum(box.intersection_area(g) for g in glyph_boxes)
            overlap += sum(box.intersection_area(a.box) for a in placed.values())
            if best is None or overlap < best[0]:
                best = (overlap, direction, box)
            if overlap == 0.0:
                break
        assert best is not None
        placed[v] = LabelAnchor(direction=best[1], box=best[2])
    return placed


def axis_ticks(
    tet: Tet, canvas: CanvasSpec | None = None
) -> tuple[list[tuple[int, float]], list[tuple[float, float]]]:
    """One x tick per distinct profile year; y ticks at 0, 0.25, 0.5, 0.75, 1."""
    canvas = canvas or CanvasSpec()
    years = tet.profile.distinct_years
    x_ticks = [(year, _x_of_year(year, years, canvas)) for year in years]
    y_ticks = [(v, _y_of_weight(v, canvas)) for v in (0.0, 0.25, 0.5, 0.75, 1.0)]
    return x_ticks, y_ticks


def compute_layout(
    tet: Tet, canvas: CanvasSpec | None = None, font: FontMetrics | None = None
) -> TetLayout:
    """Assemble the full layout for a classified tree."""
    if not tet.is_classified:
        raise ValueError("layout requires a classified tree; run classify_all first")
    canvas = canvas or CanvasSpec()
    positions = compute_positions(tet, canvas)
    labels = {topic.index: topic.display_label for topic in tet.profile.topics}
    x_ticks, y_ticks = axis_ticks(tet, canvas)
    return TetLayout(
        positions=positions,
        label_anchors=place_labels(positions, labels, canvas.glyph_radius, font),
        edge_colors={
            (e.from_index, e.to_index): tes_color(e.tes) for e in tet.edges if not e.is_root_edge
        },
        node_colors={v: state_colors(s) for v, s in tet.states.items()},
        x_ticks=x_ticks,
        y_ticks=y_ticks,
        canvas=canvas,
    )
