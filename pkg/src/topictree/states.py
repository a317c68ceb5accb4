"""Evolution-state classification of tree nodes.

Each topic carries two states. The emerging-state says how it came to exist
(born / fused / reborn / flourishing), the evolving-state how it acts on
later generations (split / dead / flourishing). Classification is a first
match in a fixed order, so the assignment is exhaustive and exclusive.

Both time gates are strict inequalities: a single-parent topic is reborn
only when its silence exceeds ``min_reborn`` years, and a childless topic is
dead only when the latest profile year lies more than ``min_dead`` years
after it. Topics in the latest year are therefore never dead.
"""

from __future__ import annotations

from dataclasses import replace

from .model import EmergingState, EvolvingState, Tet


def classify_emerging(tet: Tet, v: int) -> EmergingState:
    """born -> fused -> reborn -> flourishing, first match wins.

    Fused (two or more parents) takes priority over reborn: multiple
    ancestry is the structurally stronger claim, whatever the gaps.
    """
    parents = tet.parents_of(v)
    if not parents:
        return EmergingState.BORN
    if len(parents) >= 2:
        return EmergingState.FUSED
    gap = tet.profile.year_of(v) - max(tet.profile.year_of(p) for p in parents)
    if gap > tet.params.min_reborn:
        return EmergingState.REBORN
    return EmergingState.FLOURISHING


def classify_evolving(tet: Tet, v: int) -> EvolvingState:
    """split -> dead -> flourishing, first match wins."""
    children = tet.children_of(v)
    if len(children) >= 2:
        return EvolvingState.SPLIT
    if not children and tet.latest_year - tet.profile.year_of(v) > tet.params.min_dead:
        return EvolvingState.DEAD
    return EvolvingState.FLOURISHING


def classify_all(tet: Tet) -> Tet:
    """Return a copy of `tet` with both states assigned to every topic.

    Depends only on the edge set, the years and the params; idempotent.
    """
    states = {
        topic.index: (classify_emerging(tet, topic.index), classify_evolving(tet, topic.index))
        for topic in tet.profile.topics
    }
    return replace(tet, states=states)
