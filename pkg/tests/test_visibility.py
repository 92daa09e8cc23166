import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from segcover.core import Interval
from segcover.generate import random_scene
from segcover.solver import solve_brute
from segcover.visibility import (Point2, Scene, SceneError, UncertainObstacle, fully_blockable, project,
                                 project_scene, shadow, validate_scene)
from visibility_oracle import fully_hidden, hidden_set, probes

P = Point2
Q = P(0, 2)
WIDE = (P(-1, 0), P(1, 0))
UNIT_SEG = (P(0, 0), P(1, 0))


def test_similar_triangles_example():
    assert shadow(Q, WIDE, (P(F(-1, 2), 1), P(F(1, 2), 1))) == Interval(0, 1)


def test_behind_casts_nothing():
    assert shadow(Q, UNIT_SEG, (P(0, -1), P(1, -1))) == Interval(0, 0)


def test_clipped_to_viewed_segment():
    assert shadow(Q, UNIT_SEG, (P(F(1, 4), 1), P(2, 1))) == Interval(F(1, 2), 1)


def test_part_beyond_viewed_line_ignored():
    # Crosses the viewed line at x = 13/12, outside the viewed segment.
    assert shadow(Q, UNIT_SEG, (P(F(1, 4), 1), P(F(3, 2), F(-1, 2)))) == Interval(F(1, 2), 1)


def test_part_above_viewer_runs_to_the_end():
    assert shadow(Q, UNIT_SEG, (P(F(1, 4), 1), P(F(1, 4), 3))) == Interval(F(1, 2), 1)
    assert shadow(Q, UNIT_SEG, (P(F(-1, 4), 3), P(F(1, 4), 1))) == Interval(0, F(1, 2))


def test_orientation_does_not_matter():
    flipped = (P(1, 0), P(0, 0))
    assert shadow(Q, flipped, (P(F(1, 4), 1), P(2, 1))) == Interval(0, F(1, 2))
    below = P(0, -2)
    assert shadow(below, UNIT_SEG, (P(F(1, 4), -1), P(2, -1))) == Interval(F(1, 2), 1)


@pytest.mark.parametrize("q, placement", [
    (P(F(1, 2), 0), (P(0, 1), P(1, 1))),        # viewer on the viewed line
    (Q, (P(-1, 2), P(1, 2))),                   # placement through the viewer
    (Q, (P(F(1, 2), -1), P(F(1, 2), 1))),       # placement crossing the viewed segment
])
def test_invalid_scenes(q, placement):
    with pytest.raises(SceneError):
        validate_scene(q, UNIT_SEG, [UncertainObstacle(placement, placement)])


def test_fully_blockable_examples():
    both = UncertainObstacle((P(F(-1, 2), 1), P(F(1, 2), 1)), (P(-1, 1), P(1, 1)))
    assert fully_blockable(Scene(Q, WIDE, (both,))).coverable
    behind = UncertainObstacle((P(0, -1), P(1, -1)), (P(-1, -2), P(2, -2)))
    assert not fully_blockable(Scene(Q, UNIT_SEG, (behind,))).coverable


def test_two_obstacle_scene_matches_brute():
    left = UncertainObstacle((P(0, 1), P(F(1, 4), 1)), (P(F(3, 4), 1), P(1, 1)))
    right = UncertainObstacle((P(F(1, 4), 1), P(F(1, 2), 1)), (P(F(-1, 4), 1), P(0, 1)))
    scene = Scene(Q, UNIT_SEG, (left, right))
    inst = project(scene)
    assert [s.first for s in inst.segments] == [Interval(0, F(1, 2)), Interval(F(1, 2), 1)]
    expected = any(fully_hidden(Q, UNIT_SEG, [o.placements()[p] for o, p in zip(scene.obstacles, picks)])
                   for picks in itertools.product((0, 1), repeat=2))
    assert fully_blockable(scene).coverable == solve_brute(inst).coverable == expected is True


def test_scene_json_round_trip():
    scene = random_scene(3, 4)
    assert Scene.from_json(scene.to_json()) == scene


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_shadow_matches_oracle(seed):
    scene = random_scene(1, seed)
    for placement in scene.obstacles[0].placements():
        iv = shadow(scene.viewpoint, scene.viewed, placement)
        hits, ts = hidden_set(scene.viewpoint, scene.viewed, placement)
        if iv.degenerate:
            # Empty shadows are stored as [0, 0]; either way nothing of positive length hides.
            assert len(hits) <= 1 and hits <= {iv.lo, F(0), F(1)}
        else:
            assert hits == {t for t in probes(ts) if iv.contains_point(t)}
