import itertools
import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colortverberg import (
    Coloring,
    ComplexFamily,
    InstanceError,
    LabeledPartition,
    SimplicialComplex,
    is_admissible,
    is_balanced,
    is_rainbow_balanced,
    rainbow_complex,
    simplex_skeleton,
    skeleton,
)
from colortverberg.complex import (
    admissible_assignment,
    check_cap,
    is_rainbow,
    iter_assignments,
    symm_deleted_join_cells,
    vlabels,
    vmask,
)
from colortverberg.errors import ResourceLimitError
from colortverberg.instance import instance_from_json, load_instance, save_instance, Instance

import reference as ref
from helpers import as_sets, cell_sets


def test_masks_roundtrip():
    assert vmask([1, 3]) == 0b101
    assert vlabels(0b101) == (1, 3)
    assert vlabels(0) == ()


def test_skeleton_examples():
    tri = SimplicialComplex.simplex(3)
    assert as_sets(skeleton(tri, 0)) == {frozenset(), frozenset({1}), frozenset({2}), frozenset({3})}
    assert skeleton(SimplicialComplex.simplex(5), 4) == SimplicialComplex.simplex(5)
    k6 = simplex_skeleton(6, 1)
    # binomial oracle
    assert len(k6) == sum(comb(6, n) for n in range(3)) == 22


def test_from_faces_closes_and_validates():
    K = SimplicialComplex.from_maximal_faces(4, [[1, 2, 3], [3, 4]])
    assert K.is_hereditary()
    assert as_sets(K) == ref.closure([{1, 2, 3}, {3, 4}])
    assert K.maximal_faces() == [vmask([1, 2, 3]), vmask([3, 4])]
    with pytest.raises(InstanceError):
        SimplicialComplex.from_faces(3, [[1, 4]])
    with pytest.raises(InstanceError):
        SimplicialComplex.from_faces(3, [[1, 1]])
    with pytest.raises(InstanceError):
        SimplicialComplex.from_faces(3, [[0]])


@given(st.lists(st.frozensets(st.integers(1, 6), max_size=4), max_size=6))
def test_closure_idempotent(faces):
    K = SimplicialComplex.from_faces(6, [sorted(f) for f in faces])
    assert K.closure() == K
    assert K.is_hereditary()


def test_rainbow_examples():
    c = Coloring.contiguous(2, 1)
    assert c.classes == (vmask([1, 2, 3]), vmask([4, 5, 6]))
    assert is_rainbow(0, c)
    assert not is_rainbow(vmask([1, 2]), c)
    assert is_rainbow(vmask([2, 5]), c)
    R = rainbow_complex(c, 1)
    assert len(R) == 1 + 6 + 9 == 16
    assert rainbow_complex(c, -1).faces == frozenset({0})
    c3 = Coloring.contiguous(3, 2)
    top = rainbow_complex(c3, 2)
    assert all(f.bit_count() == 3 for f in top.maximal_faces())


def test_rainbow_complex_matches_direct_count():
    c = Coloring.from_classes(7, [[1, 4], [2, 5, 7], [3, 6]])
    for cap in range(-1, 4):
        direct = {f for f in ref.all_subsets(7)
                  if len(f) <= cap + 1 and len({c.color_of(v) for v in f}) == len(f)}
        assert as_sets(rainbow_complex(c, cap)) == direct


def test_balanced_examples():
    m, k = 5, 2
    assert is_balanced(simplex_skeleton(m, k), m, k)
    assert is_balanced(simplex_skeleton(m, k - 1), m, k)
    assert not is_balanced(simplex_skeleton(m, k - 2), m, k)
    assert not is_balanced(simplex_skeleton(m, k + 1), m, k)


def test_rainbow_balanced_examples():
    c = Coloring.contiguous(2, 1)
    assert is_rainbow_balanced(rainbow_complex(c, 1), c, 1)
    assert is_rainbow_balanced(rainbow_complex(c, 0), c, 1)
    bad = SimplicialComplex(6, rainbow_complex(c, 0).faces | {vmask([1, 2])})
    assert not is_rainbow_balanced(bad, c, 1)
    # missing a rainbow vertex
    holed = SimplicialComplex(6, rainbow_complex(c, 0).faces - {vmask([4])})
    assert not is_rainbow_balanced(holed, c, 1)


def test_coloring_validation():
    with pytest.raises(InstanceError):
        Coloring.from_classes(4, [[1, 2], [2, 3, 4]])
    with pytest.raises(InstanceError):
        Coloring.from_classes(4, [[1, 2], [3]])


def test_admissible_examples():
    K1 = SimplicialComplex.from_maximal_faces(3, [[1]])
    K2 = SimplicialComplex.from_maximal_faces(3, [[2, 3]])
    fam = ComplexFamily((K1, K2))
    assert is_admissible(LabeledPartition(3, (0, 0)), fam)
    swap = LabeledPartition.from_sets(3, [[2, 3], [1]])
    assert admissible_assignment(swap.parts, fam) == (1, 0)
    assert is_admissible(swap, fam)
    assert not is_admissible(LabeledPartition.from_sets(3, [[1, 2], []]), fam)


def test_enumeration_examples():
    point = SimplicialComplex.from_maximal_faces(1, [[1]])
    cells = symm_deleted_join_cells(ComplexFamily((point, point)))
    assert [cell_sets(c) for c in cells] == [(frozenset({1}), frozenset()), (frozenset(), frozenset({1}))]
    assert len(symm_deleted_join_cells(ComplexFamily((SimplicialComplex.simplex(4),)))) == 2 ** 4 - 1
    v3 = simplex_skeleton(3, 0)
    cells = symm_deleted_join_cells(ComplexFamily((v3, v3)))
    assert len(cells) == len(ref.ref_cells(3, [as_sets(v3)] * 2)) == 12
    assert sum(c.dim == 0 for c in cells) == 6 and sum(c.dim == 1 for c in cells) == 6


def test_enumeration_order():
    v3 = simplex_skeleton(3, 0)
    cells = symm_deleted_join_cells(ComplexFamily((v3, v3)))
    assert cells == sorted(cells, key=LabeledPartition.sort_key)
    assert cell_sets(cells[0]) == (frozenset({1}), frozenset())


def test_cap_guard():
    with pytest.raises(ResourceLimitError):
        check_cap(12, 3, 1000)
    K = simplex_skeleton(6, 1)
    with pytest.raises(ResourceLimitError):
        symm_deleted_join_cells(ComplexFamily((K, K)), cap=100)


def test_iter_assignments_disjoint_and_complete():
    seen = set(iter_assignments(4, 2))
    assert len(seen) == 3 ** 4
    assert all(a & b == 0 for a, b in seen)


faces_strategy = st.lists(st.frozensets(st.integers(1, 5), min_size=1, max_size=3), max_size=5)


@settings(max_examples=60, deadline=None)
@given(st.lists(faces_strategy, min_size=1, max_size=3))
def test_cells_match_bruteforce_oracle(face_lists):
    m = 5
    members = [SimplicialComplex.from_faces(m, [sorted(f) for f in fl]) for fl in face_lists]
    fam = ComplexFamily(tuple(members))
    got = [cell_sets(c) for c in symm_deleted_join_cells(fam)]
    want = ref.ref_cells(m, [as_sets(K) for K in members])
    assert len(got) == len(set(got))
    assert set(got) == set(want)
    for cell in symm_deleted_join_cells(fam):
        assert is_admissible(cell, fam)


def test_noncells_are_inadmissible_exhaustive():
    # exhaustive over all partitions for a fixed m=8 family
    m = 8
    c = Coloring.from_classes(m, [[1, 2, 3, 4], [5, 6, 7, 8]])
    fam = ComplexFamily((rainbow_complex(c, 1), rainbow_complex(c, 0)))
    cells = set(symm_deleted_join_cells(fam))
    for parts in iter_assignments(m, 2):
        cell = LabeledPartition(m, parts)
        if cell.is_empty:
            continue
        assert (cell in cells) == is_admissible(cell, fam)


@settings(max_examples=30, deadline=None)
@given(faces_strategy)
def test_symmetry_when_members_equal(faces):
    m = 5
    K = SimplicialComplex.from_faces(m, [sorted(f) for f in faces])
    cells = set(symm_deleted_join_cells(ComplexFamily((K, K, K))))
    for cell in cells:
        for perm in itertools.permutations(range(3)):
            assert LabeledPartition(m, tuple(cell.parts[p] for p in perm)) in cells


def test_partition_helpers():
    p = LabeledPartition.from_sets(5, [[1, 3], [], [2]])
    assert p.remainder == vmask([4, 5])
    assert p.dim == 2 and p.size == 3
    assert p.to_json() == {"parts": [[1, 3], [], [2]], "B": [4, 5]}
    assert LabeledPartition.from_json(5, p.to_json()) == p
    q = p.toggle(4, 1)
    assert q.parts[1] == vmask([4])
    with pytest.raises(ValueError):
        LabeledPartition(3, (0b11, 0b10))


def test_instance_roundtrip(tmp_path):
    c = Coloring.contiguous(2, 1)
    fam = ComplexFamily((rainbow_complex(c, 1), rainbow_complex(c, 0)))
    inst = Instance(fam, 1, 1, 1, c)
    path = tmp_path / "i.json"
    save_instance(inst, path)
    data = json.loads(path.read_text())
    for entry in data["complexes"]:
        faces = entry["maximal_faces"]
        assert faces == sorted(faces) and all(f == sorted(f) for f in faces)
        assert len({tuple(f) for f in faces}) == len(faces)
    back = load_instance(path)
    assert back.family == fam and back.coloring == c and back.params == inst.params


@pytest.mark.parametrize("patch", [
    {"m": 0},
    {"r": 3},
    {"s": 5},
    {"coloring": [[1, 2, 3], [4, 5, 7]]},
    {"coloring": [[1, 2, 3, 4, 5, 6]]},
    {"complexes": [{"maximal_faces": [[1, 9]]}, {"maximal_faces": [[1]]}]},
    {"complexes": [{"faces": []}, {"maximal_faces": []}]},
    {"k": "one"},
])
def test_instance_rejects(patch):
    data = {"m": 6, "r": 2, "k": 1, "s": 1, "d": 1,
            "coloring": [[1, 2, 3], [4, 5, 6]],
            "complexes": [{"maximal_faces": [[1, 4]]}, {"maximal_faces": [[2]]}]}
    data.update(patch)
    with pytest.raises(InstanceError):
        instance_from_json(data)


def test_instance_without_coloring():
    data = {"m": 3, "r": 2, "k": 0, "s": 2, "d": 1, "coloring": None,
            "complexes": [{"maximal_faces": [[1], [2], [3]]}] * 2}
    inst = instance_from_json(data)
    assert inst.coloring is None and inst.family[0] == simplex_skeleton(3, 0)
