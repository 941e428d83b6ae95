import random

import pytest

from semigalois import correspondence as co
from semigalois.actions import invariant_ring, is_injective
from semigalois.corpus import (c2_swap_fixture, chain_semilattice_fixture,
                               collapsing_semilattice_fixture, corpus,
                               f9_cubed_fixture)
from semigalois.galois import compute_S_B, is_galois
from semigalois.rings import Subalgebra
from semigalois.semigroups import (SubSemigroup, is_e_unitary,
                                   enumerate_full_inverse_subsemigroups)


def admissible(b):
    return (b.S.zero is None and is_e_unitary(b.S) and is_injective(b)
            and b.all_ideals_nonzero())


def test_beta_complete_enumeration_on_fixture():
    beta = f9_cubed_fixture()
    names = {beta.S.names[i]: i for i in range(beta.S.n)}
    ts = co.enumerate_beta_complete(beta)
    expected = [
        frozenset(beta.S.idempotents),
        frozenset(beta.S.idempotents) | {names["t"]},
        frozenset(range(beta.S.n)),
    ]
    assert sorted((t.members for t in ts), key=sorted) == sorted(expected, key=sorted)


def test_every_subgroup_of_a_group_is_beta_complete():
    beta = c2_swap_fixture()
    ts = co.enumerate_beta_complete(beta)
    assert [sorted(t.members) for t in ts] == [[0], [0, 1]]


def test_semilattice_has_single_beta_complete():
    beta = chain_semilattice_fixture()
    ts = co.enumerate_beta_complete(beta)
    assert len(ts) == 1


def test_non_full_is_not_beta_complete():
    beta = c2_swap_fixture()
    # a non-full subsemigroup cannot be built through SubSemigroup for {g};
    # the empty-idempotent check is the fullness flag itself
    T = SubSemigroup(beta.S, frozenset({0}))
    assert T.is_full  # {1} contains E = {1}
    assert co.is_beta_complete(beta, T)


def test_fixed_subalgebra_orders():
    beta = f9_cubed_fixture()
    names = {beta.S.names[i]: i for i in range(beta.S.n)}
    E = frozenset(beta.S.idempotents)
    f_all = co.fixed_subalgebra(beta, SubSemigroup(beta.S, frozenset(range(beta.S.n))))
    f_mid = co.fixed_subalgebra(beta, SubSemigroup(beta.S, E | {names["t"]}))
    f_e = co.fixed_subalgebra(beta, SubSemigroup(beta.S, E))
    assert (f_all.order, f_mid.order, f_e.order) == (27, 243, 729)


def test_fixed_subalgebra_is_antitone():
    beta = f9_cubed_fixture()
    ts = enumerate_full_inverse_subsemigroups(beta.S)
    fixed = {t.members: co.fixed_subalgebra(beta, t) for t in ts}
    for t1 in ts:
        for t2 in ts:
            if t1.members <= t2.members:
                assert fixed[t2.members].order <= fixed[t1.members].order
                assert fixed[t1.members].contains(fixed[t2.members])


def test_s_b_is_beta_complete_for_random_subalgebras():
    rng = random.Random(8)
    checked = 0
    for beta in corpus(77, 12, predicate=admissible):
        A = beta.A
        if A.size > 729:
            continue
        inv = invariant_ring(beta)
        pool = [a.vec() for a in A.elements()]
        for _ in range(9):
            gens = list(inv.gen_vectors) + [rng.choice(pool), rng.choice(pool)]
            B = Subalgebra(A, gens).closure_under_mul()
            sb = compute_S_B(beta, B)
            assert co.is_beta_complete(beta, sb)
            checked += 1
    assert checked >= 100


def test_e_unitary_correspondence_fixture():
    beta = f9_cubed_fixture()
    rep = co.verify_e_unitary_correspondence(beta)
    assert rep.bijective and len(rep.pairs) == 3
    orders = sorted(p.subalgebra_order for p in rep.pairs)
    assert orders == [27, 243, 729]
    for p in rep.pairs:
        assert p.separable and p.strong and p.round_trip_t and p.round_trip_b


def test_e_unitary_correspondence_c2():
    rep = co.verify_e_unitary_correspondence(c2_swap_fixture())
    assert rep.bijective and len(rep.pairs) == 2
    assert sorted(p.subalgebra_order for p in rep.pairs) == [3, 9]


def test_e_unitary_correspondence_semilattice():
    rep = co.verify_e_unitary_correspondence(chain_semilattice_fixture())
    assert rep.bijective and len(rep.pairs) == 1


def test_correspondence_requires_galois():
    from semigalois.corpus import c2_fixed_atom_fixture
    from semigalois.galois import PreconditionFail
    with pytest.raises(PreconditionFail):
        co.verify_e_unitary_correspondence(c2_fixed_atom_fixture())


def test_brute_force_flag_on_fixture():
    rep = co.verify_e_unitary_correspondence(f9_cubed_fixture(),
                                             brute_force_subalgebras=True)
    assert rep.bijective and rep.brute_force_match


def test_brute_force_guard():
    beta = f9_cubed_fixture()
    import semigalois.correspondence as mod
    old = mod.BRUTE_FORCE_RING_GUARD
    mod.BRUTE_FORCE_RING_GUARD = 16
    try:
        with pytest.raises(Exception):
            co.enumerate_subalgebras_over(beta, invariant_ring(beta))
    finally:
        mod.BRUTE_FORCE_RING_GUARD = old


def test_beta_maximal_injective_reduces_to_beta_complete():
    for beta in (f9_cubed_fixture(), c2_swap_fixture(), chain_semilattice_fixture()):
        complete = {t.members for t in co.enumerate_beta_complete(beta)}
        maximal = {t.members for t in enumerate_full_inverse_subsemigroups(beta.S)
                   if co.is_beta_maximal(beta, t)}
        assert complete == maximal


def test_beta_maximal_needs_preimage_closure():
    beta = collapsing_semilattice_fixture()
    # both elements act identically; T = {1} misses the beta-twin e
    T = SubSemigroup(beta.S, frozenset({0, 1}))
    assert co.is_beta_maximal(beta, T)
    # the twin-closed subsemigroup is the only maximal one
    maximal = [t for t in enumerate_full_inverse_subsemigroups(beta.S)
               if co.is_beta_maximal(beta, t)]
    assert [sorted(t.members) for t in maximal] == [[0, 1]]


def test_general_correspondence_on_injective_agrees():
    beta = f9_cubed_fixture()
    rep_g = co.verify_general_correspondence(beta)
    rep_e = co.verify_e_unitary_correspondence(beta)
    assert rep_g.bijective and rep_e.bijective
    assert sorted(p.subalgebra_order for p in rep_g.pairs) == \
        sorted(p.subalgebra_order for p in rep_e.pairs)


def test_general_correspondence_with_collapse():
    rep = co.verify_general_correspondence(collapsing_semilattice_fixture())
    assert rep.bijective and len(rep.pairs) == 1
    assert rep.pairs[0].members == (0, 1)


def test_general_correspondence_on_galois_corpus():
    count = 0
    for beta in corpus(88, 25, predicate=lambda b: b.S.zero is None
                       and b.all_ideals_nonzero() and b.S.n <= 10):
        if not is_galois(beta):
            continue
        rep = co.verify_general_correspondence(beta)
        assert rep.bijective, rep.failures
        count += 1
    assert count >= 8
