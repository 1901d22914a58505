import itertools
import random
from fractions import Fraction

import pytest

from covertower.covers import (
    double_cover_from_signs,
    enumerate_covers,
    factors_through,
    fiber_product,
    trivial_cover,
)
from covertower.errors import (
    BaseMismatch,
    IncompatibleTower,
    KindMismatch,
    NonIntegerWeights,
    SwitchViolation,
)
from covertower.homology import surface_complex
from covertower.limits import (
    base_class_element,
    cycle_element,
    homology_shadow,
    lift_element,
    limit_equal,
    normalized_pairing,
    track_element,
)
from covertower.traintrack import lift_track, three_branch_example


def transfer_element(cover, class_vector):
    return cycle_element(cover, surface_complex(cover).transfer(class_vector))


def test_constructors_and_validation():
    e = base_class_element(2, (1, 0, 0, 0))
    assert e.kind == "cycle"
    assert e.cover.degree == 1
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    with pytest.raises(KindMismatch):
        cycle_element(cover, (1,) * 4)  # wrong length
    open_path = surface_complex(cover).word_path_chain((1,), 0)
    with pytest.raises(KindMismatch):
        cycle_element(cover, open_path)
    with pytest.raises(SwitchViolation):
        track_element(three_branch_example(), trivial_cover(2), (1, 1, 1))


def test_lift_element_is_transfer():
    v = (0, 1, 0, 0)
    base = base_class_element(2, v)
    for cover in enumerate_covers(2, 2)[:6]:
        arrow = factors_through(cover, trivial_cover(2))
        lifted = lift_element(base, arrow)
        assert lifted.payload == tuple(surface_complex(cover).transfer(v))


def test_lift_element_arrow_mismatch():
    base = base_class_element(2, (1, 0, 0, 0))
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    arrow = factors_through(cover, trivial_cover(2))
    with pytest.raises(IncompatibleTower):
        lift_element(transfer_element(cover, (1, 0, 0, 0)), arrow)


def test_defining_relation_base_equals_transfer():
    for v in ((1, 0, 0, 0), (0, 0, 1, -2)):
        base = base_class_element(2, v)
        for cover in enumerate_covers(2, 2):
            assert limit_equal(base, transfer_element(cover, v))
        for cover in enumerate_covers(2, 3)[:10]:
            assert limit_equal(base, transfer_element(cover, v))


def test_limit_equality_is_an_equivalence_exhaustively():
    # all representatives of a fixed base class over degree <= 2 covers,
    # plus the base representative itself
    covers = [trivial_cover(2)] + list(enumerate_covers(2, 2))
    vectors = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, -1, 2, 0)]
    pools = {
        v: [transfer_element(cover, v) for cover in covers] for v in vectors
    }
    for v, pool in pools.items():
        for e1, e2 in itertools.combinations(pool, 2):
            assert limit_equal(e1, e1)
            assert limit_equal(e1, e2)
            assert limit_equal(e2, e1)
    # distinct classes stay distinct at every level
    rng = random.Random(9)
    for v1, v2 in itertools.combinations(vectors, 2):
        for _ in range(4):
            e1 = rng.choice(pools[v1])
            e2 = rng.choice(pools[v2])
            assert not limit_equal(e1, e2)


def test_single_lift_differs_from_the_transfer():
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    cx = surface_complex(cover)
    one_lift = cycle_element(cover, cx.word_path_chain((2,), 0))
    assert not limit_equal(one_lift, base_class_element(2, (0, 1, 0, 0)))


def test_limit_equal_base_mismatch():
    with pytest.raises(BaseMismatch):
        limit_equal(base_class_element(2, (1, 0, 0, 0)), base_class_element(3, (1,) + (0,) * 5))
    with pytest.raises(KindMismatch):
        limit_equal(
            base_class_element(2, (1, 0, 0, 0)),
            track_element(three_branch_example(), trivial_cover(2), (2, 1, 1)),
        )


def test_normalized_pairing_base_values():
    u = base_class_element(2, (1, 0, 0, 0))
    v = base_class_element(2, (0, 1, 0, 0))
    w = base_class_element(2, (0, 0, 1, 0))
    assert normalized_pairing(u, v) == Fraction(1)
    assert normalized_pairing(v, u) == Fraction(-1)
    assert normalized_pairing(u, w) == Fraction(0)
    assert normalized_pairing(u, u) == Fraction(0)


def test_normalized_pairing_is_level_independent():
    u = (1, 0, 0, 0)
    v = (0, 1, 0, 0)
    base_val = normalized_pairing(base_class_element(2, u), base_class_element(2, v))
    covers = enumerate_covers(2, 2)
    rng = random.Random(21)
    for _ in range(8):
        a = rng.choice(covers)
        b = rng.choice(covers)
        val = normalized_pairing(transfer_element(a, u), transfer_element(b, v))
        assert val == base_val == Fraction(1)
        assert isinstance(val, Fraction)
    mixed = normalized_pairing(base_class_element(2, u), transfer_element(covers[3], v))
    assert mixed == base_val


def test_normalized_pairing_bilinear_scaling():
    u = base_class_element(2, (2, 0, 0, 0))
    v = base_class_element(2, (0, 3, 0, 0))
    assert normalized_pairing(u, v) == Fraction(6)


def test_normalized_pairing_errors():
    track = track_element(three_branch_example(), trivial_cover(2), (2, 1, 1))
    with pytest.raises(KindMismatch):
        normalized_pairing(track, track)
    with pytest.raises(IncompatibleTower):
        normalized_pairing(
            base_class_element(2, (1, 0, 0, 0)), base_class_element(3, (1,) + (0,) * 5)
        )


def test_track_elements_compare_by_weights():
    track = three_branch_example()
    base = track_element(track, trivial_cover(2), (2, 1, 1))
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    arrow = factors_through(cover, trivial_cover(2))
    lifted = lift_element(base, arrow)
    assert lifted.cover == cover
    assert limit_equal(base, lifted)
    assert limit_equal(lifted, base)
    other = track_element(track, trivial_cover(2), (3, 2, 1))
    assert not limit_equal(base, other)


def test_track_elements_need_a_common_base_track():
    track = three_branch_example()
    other = three_branch_example()
    # equal tracks compare fine even as distinct objects
    assert limit_equal(
        track_element(track, trivial_cover(2), (2, 1, 1)),
        track_element(other, trivial_cover(2), (2, 1, 1)),
    )
    from covertower.traintrack import Switch, TrainTrack

    s0 = Switch(side_a=((0, 0),), side_b=((0, 1),))
    loop = TrainTrack(genus=2, switches=(s0,), branch_words=((1,),))
    with pytest.raises(IncompatibleTower):
        limit_equal(
            track_element(track, trivial_cover(2), (2, 1, 1)),
            track_element(loop, trivial_cover(2), (1,)),
        )


def test_homology_shadow():
    track = three_branch_example()
    weights = (2, 1, 1)
    base = track_element(track, trivial_cover(2), weights)
    shadow = homology_shadow(base)
    assert shadow.kind == "cycle"
    assert limit_equal(shadow, base_class_element(2, track.homology_class(weights)))
    cover = double_cover_from_signs(2, (0, 1, 1, 0))
    _, matrix = lift_track(track, cover)
    up = track_element(track, cover, matrix.apply(weights))
    up_shadow = homology_shadow(up)
    assert limit_equal(up_shadow, shadow)


def test_homology_shadow_errors():
    track = three_branch_example()
    frac = track_element(
        track, trivial_cover(2), (Fraction(3, 2), Fraction(1, 2), 1)
    )
    with pytest.raises(NonIntegerWeights):
        homology_shadow(frac)
    with pytest.raises(KindMismatch):
        homology_shadow(base_class_element(2, (1, 0, 0, 0)))
