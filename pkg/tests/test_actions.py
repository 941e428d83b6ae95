import pytest

from semigalois import actions as ac
from semigalois.corpus import (c2_swap_fixture, c2_fixed_atom_fixture,
                               chain_semilattice_fixture,
                               collapsing_semilattice_fixture, corpus,
                               f9_cubed_fixture)
from semigalois.rings import Atom, FiniteRing, StructuredIso
from semigalois.semigroups import SubSemigroup, is_e_unitary, validate_table


def admissible(b):
    return (b.S.zero is None and is_e_unitary(b.S) and ac.is_injective(b)
            and b.all_ideals_nonzero())


def test_validate_action_rejects_bad_hom():
    S = validate_table([[0, 1], [1, 0]], names=["1", "g"])
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    swap = StructuredIso(A, {0: 1, 1: 0}, {})
    with pytest.raises(ac.HomFail):
        # g * g = 1 must act as the full identity, not the swap again
        ac.validate_action(S, A, [StructuredIso.identity_on(A, {0, 1}),
                                  StructuredIso.identity_on(A, {0})])


def test_validate_action_rejects_bad_cover():
    L = validate_table([[0]], names=["e"])
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    with pytest.raises(ac.CoverFail):
        ac.validate_action(L, A, [StructuredIso.identity_on(A, {0})])


def test_trivial_semilattice_action_valid():
    L = validate_table([[0, 1], [1, 1]], names=["1", "e"])
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    beta = ac.validate_action(L, A, [StructuredIso.identity_on(A, {0, 1}),
                                     StructuredIso.identity_on(A, {0})])
    assert ac.invariant_ring(beta).order == 9


def test_is_injective():
    assert ac.is_injective(f9_cubed_fixture())
    assert ac.is_injective(c2_swap_fixture())
    assert not ac.is_injective(collapsing_semilattice_fixture())


def test_invariant_ring_fixture_values():
    beta = f9_cubed_fixture()
    inv = ac.invariant_ring(beta)
    A = beta.A
    assert inv.order == 27
    assert inv.member(A.element([(1, 0), (0, 0), (1, 0)]))
    assert inv.member(A.element([(0, 1), (0, 0), (0, 1)]))
    assert inv.member(A.element([(0, 0), (1, 0), (0, 0)]))
    assert not inv.member(A.element([(0, 0), (0, 1), (0, 0)]))
    assert ac.invariant_ring(c2_swap_fixture()).order == 3


def test_plain_trace_not_invariant_but_sigma_trace_is():
    beta = f9_cubed_fixture()
    A = beta.A
    inv = ac.invariant_ring(beta)
    xe2 = A.element([(0, 0), (0, 1), (0, 0)])
    assert ac.trace_map(beta, xe2) == xe2
    assert not inv.member(xe2)
    alpha = ac.induce_partial_group_action(beta)
    for a in A.elements():
        assert inv.member(ac.sigma_trace(beta, a, alpha))


def test_sigma_trace_on_c2_swap():
    beta = c2_swap_fixture()
    A = beta.A
    assert ac.sigma_trace(beta, A.one()) == A.element([2, 2])
    assert ac.sigma_trace(beta, A.element([1, 0])) == A.one()


def test_semilattice_sigma_trace_is_identity():
    beta = chain_semilattice_fixture()
    alpha = ac.induce_partial_group_action(beta)
    assert alpha.group.size() == 1
    for a in beta.A.elements():
        assert ac.sigma_trace(beta, a, alpha) == a


def test_induced_action_on_group_is_itself():
    beta = c2_swap_fixture()
    alpha = ac.induce_partial_group_action(beta)
    assert alpha.group.size() == 2
    assert list(alpha.isos) == list(beta.isos)


def test_induce_requires_e_unitary_and_injective():
    from semigalois.corpus import non_e_unitary_monoid
    S = non_e_unitary_monoid()
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    beta = ac.validate_action(S, A, [
        StructuredIso.identity_on(A, {0, 1}),
        StructuredIso(A, {0: 1, 1: 0}, {}),
        StructuredIso.identity_on(A, set()),
    ])
    with pytest.raises(ac.NotEUnitary):
        ac.induce_partial_group_action(beta)
    with pytest.raises(ac.NotInjective):
        ac.induce_partial_group_action(collapsing_semilattice_fixture())


def test_invariants_equal_for_beta_and_alpha_on_corpus():
    for beta in corpus(31, 40, predicate=admissible):
        alpha = ac.induce_partial_group_action(beta)
        inv = ac.invariant_ring(beta)
        # direct alpha-invariant computation by exhaustive scan
        A = beta.A
        candidates = [a for a in A.elements()
                      if all(alpha.isos[g].apply(a.mask(alpha.isos[g].dom_support))
                             == a.mask(alpha.isos[g].im_support)
                             for g in range(alpha.group.size()))] \
            if A.size <= 729 else None
        if candidates is not None:
            assert len(candidates) == inv.order
            assert all(inv.member(a) for a in candidates)


def test_sigma_trace_invariance_property_on_corpus():
    for beta in corpus(32, 15, predicate=admissible):
        if beta.A.size > 729:
            continue
        alpha = ac.induce_partial_group_action(beta)
        inv = ac.invariant_ring(beta)
        for s in range(beta.S.n):
            iso = beta.isos[s]
            for a in list(beta.A.elements())[:40]:
                a_dom = a.mask(iso.dom_support)
                lhs = ac.sigma_trace(beta, iso.apply(a_dom), alpha)
                rhs = ac.sigma_trace(beta, a_dom, alpha)
                assert lhs == rhs
        # bimodule property over the invariants
        gens = inv.generators()
        for b in gens[:3]:
            for a in list(beta.A.elements())[:20]:
                assert ac.sigma_trace(beta, b * a, alpha) == b * ac.sigma_trace(beta, a, alpha)


def test_sigma_trace_image_lands_in_invariants_on_corpus():
    for beta in corpus(33, 25, predicate=admissible):
        inv = ac.invariant_ring(beta)
        img = ac.sigma_trace_image(beta)
        assert inv.contains(img)


def test_restrict_to_idempotents_gives_semilattice_action():
    beta = f9_cubed_fixture()
    T = SubSemigroup(beta.S, frozenset(beta.S.idempotents))
    restricted, order = ac.restrict_action(beta, T)
    assert sorted(restricted.S.idempotents) == list(range(restricted.S.n))
    assert ac.invariant_ring(restricted).order == beta.A.size


def test_restrict_to_middle_subsemigroup():
    beta = f9_cubed_fixture()
    names = {beta.S.names[i]: i for i in range(beta.S.n)}
    members = frozenset(beta.S.idempotents) | {names["t"]}
    restricted, _ = ac.restrict_action(beta, SubSemigroup(beta.S, members))
    inv = ac.invariant_ring(restricted)
    assert inv.order == 243


def test_restrict_requires_full():
    beta = f9_cubed_fixture()
    with pytest.raises(ac.NotFullSub):
        ac.restrict_action(beta, SubSemigroup(beta.S, frozenset({0})))


def test_image_action_injective_is_isomorphic():
    beta = f9_cubed_fixture()
    T, beta_img, proj = ac.image_action(beta)
    assert T.n == beta.S.n
    assert sorted(proj) == list(range(beta.S.n))


def test_image_action_collapses_and_preserves_invariants():
    beta = collapsing_semilattice_fixture()
    T, beta_img, proj = ac.image_action(beta)
    assert T.n == 1
    assert ac.invariant_ring(beta_img) == ac.invariant_ring(beta)
    assert ac.is_injective(beta_img)


def test_image_action_of_galois_is_e_unitary_on_corpus():
    from semigalois.galois import is_galois
    count = 0
    for beta in corpus(34, 60, predicate=lambda b: b.S.zero is None
                       and b.all_ideals_nonzero()):
        if not is_galois(beta):
            continue
        T, beta_img, _ = ac.image_action(beta)
        assert is_e_unitary(T)
        count += 1
    assert count >= 10


def test_scalar_extension_base_cases():
    beta = c2_swap_fixture()
    inv = ac.invariant_ring(beta)
    R = FiniteRing([Atom.zmod(3)])
    ext = ac.extend_scalars(beta, R, [R.one()])
    assert ext.pres.order() == beta.A.size
    R2 = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    ext2 = ac.extend_scalars(beta, R2, [R2.one()])
    assert ext2.pres.order() == 81


def test_scalar_extension_rejects_non_galois():
    beta = c2_fixed_atom_fixture()
    R = FiniteRing([Atom.zmod(2)])
    with pytest.raises(ac.NotGalois):
        ac.extend_scalars(beta, R, [R.one()] * len(ac.invariant_ring(beta).gen_vectors))


def test_scalar_extension_structural_map_checked():
    beta = c2_swap_fixture()
    R = FiniteRing([Atom.zmod(3)])
    with pytest.raises(ac.ActionError):
        ac.extend_scalars(beta, R, [R.element([2])])  # 1 must map to 1


def test_class_joins_form_quotient_group():
    for beta in (f9_cubed_fixture(), c2_swap_fixture(), chain_semilattice_fixture()):
        assert ac.verify_class_join_group(beta)
