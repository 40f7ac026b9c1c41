import random
from fractions import Fraction as F

import pytest

from colortverberg import (
    ComplexFamily,
    InstanceError,
    PointConfiguration,
    SimplicialComplex,
    hulls_intersect,
    search_tverberg,
)
from colortverberg.lp import feasible_point
from colortverberg.tverberg import TverbergWitness, convex_weights

import reference as ref
from helpers import as_sets, bct


def cfg(*coords):
    return PointConfiguration(len(coords[0]), tuple(tuple(F(x) for x in p) for p in coords))


def test_interval_examples():
    c = cfg((0,), (2,), (1,))
    assert hulls_intersect(c, [[1, 2], [3]]) == (F(1),)
    d = cfg((0,), (1,), (2,), (3,))
    assert hulls_intersect(d, [[1, 2], [3, 4]]) is None


def test_empty_face_has_no_hull():
    c = cfg((0,), (1,))
    assert hulls_intersect(c, [[1], []]) is None


def test_planted_intersection_recovered():
    rng = random.Random(2)
    for _ in range(40):
        d = rng.randint(1, 3)
        x = tuple(F(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(d))
        pts = []
        faces = []
        for _ in range(rng.randint(2, 3)):
            # d+1 anchors plus one point placed so the face contains x
            anchors = [tuple(F(rng.randint(-30, 30)) for _ in range(d)) for _ in range(d)]
            w = [F(rng.randint(1, 5)) for _ in range(len(anchors) + 1)]
            tot = sum(w)
            w = [wi / tot for wi in w]
            last = tuple((x[t] - sum(wi * a[t] for wi, a in zip(w, anchors))) / w[-1] for t in range(d))
            start = len(pts) + 1
            pts += anchors + [last]
            faces.append(list(range(start, len(pts) + 1)))
        conf = PointConfiguration(d, tuple(pts))
        y = hulls_intersect(conf, faces)
        assert y is not None
        for face in faces:
            lam = convex_weights(conf, face, y)
            assert lam is not None and all(v >= 0 for v in lam) and sum(lam) == 1
            assert tuple(sum(l * conf.point(v)[t] for l, v in zip(lam, face)) for t in range(d)) == y


def test_lp_degenerate_and_infeasible():
    # x1 + x2 = 1, x1 - x2 = 0 -> (1/2, 1/2)
    assert feasible_point([[1, 1], [1, -1]], [1, 0]) == [F(1, 2), F(1, 2)]
    assert feasible_point([[1, 1]], [-1]) is None
    # redundant rows
    assert feasible_point([[1, 1], [2, 2]], [1, 2]) is not None
    assert feasible_point([[1, 0], [1, 0]], [1, 2]) is None


def test_points_json_roundtrip():
    c = cfg((F(1, 3), 2), (0, F(-5, 7)))
    back = PointConfiguration.from_json(c.to_json())
    assert back == c
    with pytest.raises(InstanceError):
        PointConfiguration.from_json({"d": 2, "points": [["1", "x"]]})
    with pytest.raises(InstanceError):
        PointConfiguration.from_json({"d": 2, "points": [["1"]]})


def test_bct_line_witness():
    params, c, fam = bct(2, 1, 1, 1)
    conf = cfg(*[(x,) for x in (F(3), F(-1), F(7, 2), F(0), F(11), F(5, 3))])
    w = search_tverberg(conf, fam)
    assert w is not None and w.verify(conf, fam) == []
    dims = w.dims()
    assert dims[0] <= 1 and dims[1] <= 0


def test_bct_planar_witness():
    params, c, fam = bct(2, 1, 2, 2)
    rng = random.Random(4)
    for _ in range(20):
        conf = PointConfiguration.random(6, 2, rng)
        w = search_tverberg(conf, fam)
        assert w is not None and w.verify(conf, fam) == []
        assert max(w.dims()) <= 1


def test_witness_verify_catches_tampering():
    params, c, fam = bct(2, 1, 1, 1)
    conf = PointConfiguration.random(6, 1, random.Random(1))
    w = search_tverberg(conf, fam)
    moved = TverbergWitness(w.faces, tuple(x + 1 for x in w.point), w.weights)
    assert moved.verify(conf, fam)
    swapped = TverbergWitness(w.faces[::-1], w.point, w.weights[::-1])
    if w.faces[0] not in fam[1] or w.faces[1] not in fam[0]:
        assert swapped.verify(conf, fam)


def test_none_found_is_a_value():
    K = SimplicialComplex.from_maximal_faces(4, [[1], [2]])
    fam = ComplexFamily((K, K))
    conf = cfg((0,), (10,), (4,), (5,))
    assert search_tverberg(conf, fam) is None


def test_size_mismatch():
    _, _, fam = bct(2, 1, 1, 1)
    with pytest.raises(InstanceError):
        search_tverberg(cfg((0,), (1,)), fam)


def test_agrees_with_no_filter_oracle():
    rng = random.Random(9)
    for _ in range(30):
        m = rng.randint(3, 6)
        r = rng.choice([2, 3]) if m >= 4 else 2
        d = 1 if r == 3 else rng.choice([1, 2])
        members = []
        for _ in range(r):
            faces = [rng.sample(range(1, m + 1), rng.randint(1, 2)) for _ in range(rng.randint(1, 4))]
            members.append(SimplicialComplex.from_faces(m, faces))
        fam = ComplexFamily(tuple(members))
        conf = PointConfiguration.random(m, d, rng, bound=5, den=2)
        w = search_tverberg(conf, fam)
        want = ref.ref_tverberg_exists(list(conf.points), [as_sets(K) for K in fam])
        assert (w is not None) == want
        if w is not None:
            assert w.verify(conf, fam) == []
