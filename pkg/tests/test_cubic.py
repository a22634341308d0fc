import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    box_solutions,
    exhaustive_degenerate_pairs,
    exhaustive_primitive_pairs,
    exhaustive_V,
)
from senary.cubic import (
    CountReport,
    SolutionSextuple,
    count_degenerate,
    count_N,
    group_compose,
    is_solution,
    mobius_check,
    naive_count_V,
    slice_count,
)

# values computed with the exhaustive oracle below before the main build
V1, V2 = 56, 928
N_BOX1, N_BOX2 = 28, 436
DEGEN_PAIRS_1, DEGEN_PAIRS_2 = 148, 1264


def test_is_solution_examples():
    assert is_solution((0, 0, 0, 1, 1, 1))
    assert is_solution((1, -1, 0, 1, 1, 1))
    assert not is_solution((1, 1, 1, 1, 1, 1))


def test_sextuple_validates():
    with pytest.raises(ValueError):
        SolutionSextuple(1, 1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        SolutionSextuple(0, 0, 0, 0, 0, 0)
    assert SolutionSextuple(0, 0, 0, 1, 1, 1).is_degenerate is False
    assert SolutionSextuple(0, 1, -1, 0, 1, 1).is_degenerate is True


def test_count_report_validates():
    with pytest.raises(ValueError):
        CountReport(1, "unknown-method", 0, 0.0)
    with pytest.raises(ValueError):
        CountReport(1, "naive", -1, 0.0)


def test_exhaustive_oracle_matches_frozen_values():
    assert exhaustive_V(1) == V1
    assert exhaustive_V(2) == V2


def test_naive_count_against_exhaustive_oracle():
    assert naive_count_V(1).count == V1
    assert naive_count_V(2).count == V2


def test_including_degenerate_locus_grows_count():
    with_degenerate = len(box_solutions(1, include_degenerate=True))
    assert with_degenerate > V1


def test_naive_count_rejects_bad_bounds():
    with pytest.raises(ValueError):
        naive_count_V(0)
    with pytest.raises(OverflowError):
        naive_count_V(2_000_000)


def test_count_N_small_heights():
    assert exhaustive_primitive_pairs(1) == N_BOX1
    assert count_N(1).count == N_BOX1
    assert count_N(7).count == N_BOX1  # floor(7^(1/3)) == 1
    assert exhaustive_primitive_pairs(2) == N_BOX2
    assert count_N(8).count == N_BOX2


def test_mobius_check_small():
    for B in (1, 27, 1000):
        ok, diff = mobius_check(B)
        assert ok and diff == 0


def test_thread_partitioning_is_count_neutral():
    assert naive_count_V(6, threads=2).count == naive_count_V(6).count
    assert count_N(64, threads=2).count == count_N(64).count


def test_permutation_symmetry_of_box_solutions():
    sols = set(box_solutions(2))
    for perm in itertools.permutations(range(3)):
        permuted = {
            (t[perm[0]], t[perm[1]], t[perm[2]], t[3 + perm[0]], t[3 + perm[1]], t[3 + perm[2]])
            for t in sols
        }
        assert permuted == sols


def test_sign_symmetry_divisibility_by_8():
    for P in range(1, 7):
        assert naive_count_V(P).count % 8 == 0


# --- group law ------------------------------------------------------------

IDENTITY = SolutionSextuple(0, 0, 0, 1, 1, 1)
_SAMPLES = [SolutionSextuple(*t) for t in box_solutions(2) if t[3] * t[4] * t[5] != 0]


def test_group_identity():
    p = SolutionSextuple(1, -1, 0, 1, 1, 1)
    assert group_compose(p, IDENTITY).normalized() == p.normalized()


def test_group_inverses():
    p = SolutionSextuple(1, -1, 0, 1, 1, 1)
    q = SolutionSextuple(-1, 1, 0, 1, 1, 1)
    assert group_compose(p, q).normalized() == IDENTITY.normalized()


def test_group_rejects_degenerate():
    with pytest.raises(ValueError):
        group_compose(IDENTITY, SolutionSextuple(0, 1, -1, 0, 1, 1))


@given(st.sampled_from(_SAMPLES), st.sampled_from(_SAMPLES))
def test_group_closure_and_commutativity(p, q):
    pq = group_compose(p, q)
    assert is_solution(pq.coords)
    assert pq.normalized() == group_compose(q, p).normalized()


@settings(max_examples=60)
@given(st.sampled_from(_SAMPLES), st.sampled_from(_SAMPLES), st.sampled_from(_SAMPLES))
def test_group_associativity_up_to_scaling(p, q, r):
    left = group_compose(group_compose(p, q), r)
    right = group_compose(p, group_compose(q, r))
    assert left.normalized() == right.normalized()


# --- degenerate locus and slices -------------------------------------------


def test_count_degenerate_matches_exhaustive_oracle():
    assert exhaustive_degenerate_pairs(1) == DEGEN_PAIRS_1
    assert count_degenerate(1).count == DEGEN_PAIRS_1
    assert exhaustive_degenerate_pairs(2) == DEGEN_PAIRS_2
    assert count_degenerate(8).count == DEGEN_PAIRS_2


def test_slice_count_boundary_cases():
    assert slice_count(5, set(range(1, 6))).count == naive_count_V(5).count
    assert slice_count(5, set()).count == 0
    assert slice_count(10, {10}).count == 93032  # frozen from the exhaustive x3-solve oracle


def test_slice_count_validates_Z():
    with pytest.raises(ValueError):
        slice_count(5, {6})
