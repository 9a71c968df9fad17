import random

import pytest

from lpverify import checks
from lpverify.generate import (
    phi_stages, random_levels, random_pair, random_program, random_signature, semantic_pair, stage_levels,
)
from lpverify.herbrand import Signature, herbrand_slice
from lpverify.semantics import ground_program
from lpverify.specs import eval_spec

SIG = Signature(frozenset({("a", 0), ("b", 0), ("f", 1)}), frozenset({("p", 1), ("q", 2), ("r", 0)}))


def test_same_seed_same_program():
    assert random_program(1, SIG, 6, 3, 0.3) == random_program(1, SIG, 6, 3, 0.3)
    assert random_program(1, SIG, 6, 3, 0.3) != random_program(2, SIG, 6, 3, 0.3)


def test_no_negation_gives_definite():
    for seed in range(20):
        assert random_program(seed, SIG, 8, 3, 0.0).kind == "definite"


def test_zero_clauses():
    assert len(random_program(5, SIG, 0, 3, 0.5)) == 0


def test_signature_preconditions():
    with pytest.raises(ValueError):
        random_program(0, Signature(frozenset({("f", 1)}), frozenset({("p", 1)})), 2, 1, 0.0)
    with pytest.raises(ValueError):
        random_program(0, Signature(frozenset({("a", 0)}), frozenset()), 2, 1, 0.0)


def test_program_uses_only_the_signature():
    p = random_program(3, SIG, 10, 3, 0.3)
    for c in p.clauses:
        for a in [c.head] + [l.atom for l in c.body]:
            assert a.indicator in SIG.predicates


def test_random_signature_has_a_constant():
    for seed in range(20):
        s = random_signature(random.Random(seed), 3, 3)
        assert s.constants


def test_random_pair_is_consistent():
    sl = herbrand_slice(SIG, 1)
    for seed in range(10):
        pair = random_pair(random.Random(seed), sl)
        assert all(eval_spec(pair.corr, a) for a in sl.base if eval_spec(pair.compl, a))


def test_random_levels_are_natural():
    lm = random_levels(random.Random(0), SIG)
    assert len(lm.rules) == len(SIG.predicates)


@pytest.mark.parametrize("seed", range(30))
def test_semantic_pair_and_stage_levels_pass(seed):
    # the pair read off the fixpoint with levels = decision stage satisfies every normal condition
    rng = random.Random(seed)
    s = random_signature(rng, 3, 3)
    p = random_program(seed, s, rng.randint(0, 6), 3, 0.3)
    sl = herbrand_slice(s, rng.randint(0, 2))
    gp = ground_program(p, sl)
    pair = semantic_pair(gp)
    assert checks.check_correct_normal(p, pair, sl, gp=gp).passed
    assert checks.check_complete_normal(p, pair, stage_levels(gp), sl, gp=gp).passed


def test_phi_stages_match_fixpoint():
    rng = random.Random(4)
    s = random_signature(rng, 3, 3)
    gp = ground_program(random_program(4, s, 6, 3, 0.3), herbrand_slice(s, 1))
    T, F, stage = phi_stages(gp)
    T0, F0, _ = gp.phi_masks()
    assert (T == T0).all() and (F == F0).all()
    assert ((stage >= 1) == ((T | F) == 1)).all()
