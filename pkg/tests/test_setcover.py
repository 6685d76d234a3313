import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from finspace.setcover import greedy_cover, maximal_feasible_sets, minimum_cover


def brute_min(ground, sets):
    for k in range(len(sets) + 1):
        for combo in itertools.combinations(sets, k):
            u = 0
            for s in combo:
                u |= s
            if u & ground == ground:
                return k
    return None


@given(st.integers(1, 8), st.lists(st.integers(1, 255), max_size=9))
@settings(max_examples=80, deadline=None)
def test_minimum_cover_matches_brute_force(n, sets):
    ground = (1 << n) - 1
    got = minimum_cover(ground, sets)
    want = brute_min(ground, sets)
    if want is None:
        assert got is None
    else:
        assert len(got) == want
        u = 0
        for s in got:
            u |= s
        assert u & ground == ground


def test_greedy_and_empty():
    assert minimum_cover(0, [1]) == []
    assert greedy_cover(0b11, [0b01]) is None
    assert minimum_cover(0b111, [0b011, 0b110, 0b100]) in ([0b011, 0b100], [0b011, 0b110])


@given(st.integers(1, 7), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_maximal_feasible_sets(n, seed):
    r = random.Random(seed)
    gens = [r.randrange(1, 1 << n) for _ in range(r.randint(1, 4))]

    def feasible(mask):
        return any(mask & ~g == 0 for g in gens)

    got = maximal_feasible_sets(n, feasible)
    family = [m for m in range(1, 1 << n) if feasible(m)]
    want = sorted((m for m in family if not any(m != o and m & o == m for o in family)),
                  key=lambda m: [i for i in range(n) if (m >> i) & 1])
    assert got == want
    assert maximal_feasible_sets(n, feasible, workers=3) == want
