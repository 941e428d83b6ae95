"""Canonical fixtures and the seeded random instance corpus.

The flagship fixture is the 7-element inverse monoid acting on three copies
of GF(9), with the Frobenius square standing in for complex conjugation;
it exhibits a non-invariant plain trace while the sigma-twisted trace stays
invariant.  Random instances are built by closing a few random structured
partial isomorphisms inside Iso_pu(A): the closure is automatically an
injective unital action of its own abstract table.
"""

from __future__ import annotations

import random

from . import isopu
from .actions import validate_action
from .rings import Atom, FiniteRing, StructuredIso
from .semigroups import TooLarge, saturate_presentation, validate_table


def s7_presentation():
    """Generators and relations of the 7-element monoid, ready to saturate."""
    s, t, si, ti = 0, 1, 2, 3
    relations = [
        ((t,), (s, t, ti)),
        ((t,), (si, t, ti)),
        ((t,), (ti,)),
        ((s, s), (t, ti)),
        ((si, si), (t, ti)),
    ]
    return ["s", "t"], relations


def s7_monoid():
    gens, rels = s7_presentation()
    return saturate_presentation(gens, rels)


def f9_cubed_ring():
    gf9 = Atom.gf(3, 2, (1, 0, 1))
    return FiniteRing([gf9, gf9, gf9])


def f9_cubed_fixture():
    """The flagship instance: the 7-element monoid acting on GF(9)^3.

    beta_s moves the first atom to the third and twists the middle one by
    Frobenius; beta_t is the Frobenius twist on the middle atom alone.
    """
    S = s7_monoid()
    A = f9_cubed_ring()
    by_name = {S.names[i]: i for i in range(S.n)}
    beta = {
        by_name["1"]: StructuredIso.identity_on(A, {0, 1, 2}),
        by_name["s"]: StructuredIso(A, {0: 2, 1: 1}, {1: 1}),
        by_name["s'"]: StructuredIso(A, {2: 0, 1: 1}, {1: 1}),
        by_name["t"]: StructuredIso(A, {1: 1}, {1: 1}),
        by_name["s*t"]: StructuredIso.identity_on(A, {1}),
        by_name["s*s'"]: StructuredIso.identity_on(A, {1, 2}),
        by_name["s'*s"]: StructuredIso.identity_on(A, {0, 1}),
    }
    return validate_action(S, A, [beta[i] for i in range(S.n)])


def c2_table():
    return validate_table([[0, 1], [1, 0]], names=["1", "g"])


def c2_swap_fixture():
    """C2 swapping the two factors of F_3 x F_3."""
    S = c2_table()
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    swap = StructuredIso(A, {0: 1, 1: 0}, {})
    return validate_action(S, A, [StructuredIso.identity_on(A, {0, 1}), swap])


def c2_fixed_atom_fixture():
    """C2 swapping two F_2 atoms while fixing a third: injective but not Galois.

    The trace doubles (hence kills) the fixed characteristic-2 atom, so the
    trace image is a proper subring of the invariants.
    """
    S = c2_table()
    A = FiniteRing([Atom.zmod(2), Atom.zmod(2), Atom.zmod(2)])
    g = StructuredIso(A, {0: 1, 1: 0, 2: 2}, {})
    return validate_action(S, A, [StructuredIso.identity_on(A, {0, 1, 2}), g])


def chain_semilattice_fixture():
    """The 2-chain semilattice acting by identities on F_3 x F_3."""
    S = validate_table([[0, 1], [1, 1]], names=["1", "e"])
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    return validate_action(S, A, [StructuredIso.identity_on(A, {0, 1}),
                                  StructuredIso.identity_on(A, {0})])


def collapsing_semilattice_fixture():
    """Both idempotents act as Id_A: valid but not injective."""
    S = validate_table([[0, 1], [1, 1]], names=["1", "e"])
    A = FiniteRing([Atom.zmod(3)])
    ident = StructuredIso.identity_on(A, {0})
    return validate_action(S, A, [ident, ident])


def non_e_unitary_monoid():
    """{1, g, e} with g^2 = 1 and ge = eg = e: e <= g breaks E-unitarity."""
    return validate_table([[0, 1, 2], [1, 0, 2], [2, 2, 2]], names=["1", "g", "e"])


def trace_gap_fixture():
    """C2 on Z/5 x GF(9) by identity x Frobenius: not Galois, yet the trace
    image equals the invariants (2 is invertible mod 5, so doubling the
    fixed atom stays surjective).  The minimal witness that the trace-image
    test alone cannot decide Galois-ness."""
    S = c2_table()
    A = FiniteRing([Atom.zmod(5), Atom.gf(3, 2, (1, 0, 1))])
    g = StructuredIso(A, {0: 0, 1: 1}, {1: 1})
    return validate_action(S, A, [StructuredIso.identity_on(A, {0, 1}), g])


def b2_table():
    """The combinatorial Brandt semigroup: 2x2 matrix units with zero."""
    # elements: 0=E11, 1=E12, 2=E21, 3=E22, 4=zero
    z = 4
    table = [[z] * 5 for _ in range(5)]
    prod = {(0, 0): 0, (0, 1): 1, (1, 2): 0, (1, 3): 1,
            (2, 0): 2, (2, 1): 3, (3, 2): 2, (3, 3): 3}
    for (a, b), c in prod.items():
        table[a][b] = c
    return validate_table(table, zero=z, names=["e11", "e12", "e21", "e22", "0"])


def b2_swap_fixture():
    """B2 acting on F_3 x F_3 by the matrix-unit partial swaps."""
    S = b2_table()
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    by_name = {S.names[i]: i for i in range(S.n)}
    isos = {
        by_name["e11"]: StructuredIso.identity_on(A, {0}),
        by_name["e22"]: StructuredIso.identity_on(A, {1}),
        by_name["e12"]: StructuredIso(A, {1: 0}, {}),
        by_name["e21"]: StructuredIso(A, {0: 1}, {}),
        by_name["0"]: StructuredIso.empty(A),
    }
    return validate_action(S, A, [isos[i] for i in range(S.n)])


def group_with_zero_fixture():
    """C2 with an adjoined zero acting on F_3 x F_3 (swap), zero on 0."""
    S = validate_table([[0, 1, 2], [1, 0, 2], [2, 2, 2]], zero=2, names=["1", "g", "0"])
    A = FiniteRing([Atom.zmod(3), Atom.zmod(3)])
    isos = [StructuredIso.identity_on(A, {0, 1}),
            StructuredIso(A, {0: 1, 1: 0}, {}),
            StructuredIso.empty(A)]
    return validate_action(S, A, isos)


# -- random corpus -----------------------------------------------------------

ATOM_PALETTE = [
    ("zmod", 2, 1), ("zmod", 3, 1), ("zmod", 2, 2), ("zmod", 5, 1),
    ("zmod", 3, 2), ("zmod", 7, 1), ("zmod", 2, 3),
    ("gf", 2, 2), ("gf", 3, 2), ("gf", 2, 3),
]


def random_ring(rng: random.Random, max_atoms=3):
    n = rng.randint(1, max_atoms)
    atoms = []
    for _ in range(n):
        kind, p, k = rng.choice(ATOM_PALETTE)
        atoms.append(Atom.zmod(p, k) if kind == "zmod" else Atom.gf(p, k))
    return FiniteRing(atoms)


def random_structured_iso(rng: random.Random, ring):
    atoms = ring.atoms
    by_type = {}
    for i, a in enumerate(atoms):
        by_type.setdefault(a, []).append(i)
    dom = [i for i in range(len(atoms)) if rng.random() < 0.7]
    matching = {}
    used = set()
    for i in dom:
        pool = [j for j in by_type[atoms[i]] if j not in used]
        if not pool:
            continue
        j = rng.choice(pool)
        matching[i] = j
        used.add(j)
    twist = {i: rng.randrange(atoms[i].k) if atoms[i].kind == "gf" else 0
             for i in matching}
    return StructuredIso(ring, matching, twist)


def close_isos(seed_isos, cap=24):
    """Closure of a set of partial isos under composition and inverse."""
    seen = {}
    order = []

    def note(f):
        if f not in seen:
            seen[f] = len(order)
            order.append(f)
            return True
        return False

    for f in seed_isos:
        note(f)
        note(f.inverse())
    frontier = list(order)
    while frontier:
        f = frontier.pop()
        for g in list(order):
            for h in (isopu.compose(f, g), isopu.compose(g, f)):
                if note(h):
                    frontier.append(h)
                if len(order) > cap:
                    raise TooLarge("iso closure exceeded the corpus cap")
        inv = f.inverse()
        if note(inv):
            frontier.append(inv)
    return order


def tautological_action(isos):
    """The abstract table of a closed iso set acting by itself."""
    ring = isos[0].ring
    index = {f: i for i, f in enumerate(isos)}
    table = [[index[isopu.compose(f, g)] for g in isos] for f in isos]
    zero = index.get(StructuredIso.empty(ring))
    names = []
    for i, f in enumerate(isos):
        names.append(f"b{i}")
    S = validate_table(table, zero=zero, names=names)
    return validate_action(S, ring, isos)


def random_instance(rng: random.Random, max_atoms=3, n_gens=2, cap=14,
                    with_zero=False):
    """One random closed instance, or None when the draw violates a guard.

    The identity of A is always among the generators, so the cover axiom
    holds; instances whose closure creates the empty iso are kept only when
    `with_zero` (the empty iso is the zero of Iso_pu).
    """
    ring = random_ring(rng, max_atoms=max_atoms)
    gens = [StructuredIso.identity_on(ring, range(len(ring.atoms)))]
    for _ in range(n_gens):
        gens.append(random_structured_iso(rng, ring))
    try:
        closed = close_isos(gens, cap=cap)
    except TooLarge:
        return None
    has_zero = StructuredIso.empty(ring) in closed
    if has_zero != with_zero:
        return None
    return tautological_action(closed)


def corpus(seed, count, predicate=None, max_draws=50_000, **kw):
    """A deterministic stream of `count` random instances passing `predicate`."""
    rng = random.Random(seed)
    out = []
    for _ in range(max_draws):
        if len(out) >= count:
            break
        beta = random_instance(rng, **kw)
        if beta is None:
            continue
        if predicate is None or predicate(beta):
            out.append(beta)
    if len(out) < count:
        raise TooLarge(f"corpus generation stalled at {len(out)}/{count}")
    return out


# -- zero-case corpus ---------------------------------------------------------

SMALL_GROUPS = {
    "C1": [[0]],
    "C2": [[0, 1], [1, 0]],
    "C3": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
}


def random_groupoid(rng: random.Random, max_components=2, max_objects=3):
    """A disjoint union of connected groupoids (pair groupoid x small group)."""
    from .zerocase import connected_groupoid, validate_groupoid
    comps = []
    for _ in range(rng.randint(1, max_components)):
        gname = rng.choice(list(SMALL_GROUPS))
        objects = rng.randint(1, max_objects)
        comps.append(connected_groupoid(SMALL_GROUPS[gname], objects))
    total = sum(g.n for g in comps)
    product = [[None] * total for _ in range(total)]
    names = []
    offset = 0
    for g in comps:
        for a in range(g.n):
            for b in range(g.n):
                if g.defined(a, b):
                    product[offset + a][offset + b] = offset + g.mul(a, b)
        names.extend(f"c{offset + i}" for i in range(g.n))
        offset += g.n
    return validate_groupoid(total, product, names)[0]


def random_primitive_semigroup(rng: random.Random, **kw):
    from .zerocase import groupoid_to_primitive
    return groupoid_to_primitive(random_groupoid(rng, **kw))


def random_orthogonal_groupoid_action(rng: random.Random, partial=True):
    """A validated (orthogonal, possibly partial) groupoid action on atoms.

    Each connected component gets one atom type and one atom per object;
    morphisms match atoms positionally with coboundary twists, which makes
    composition exact; a partial variant restricts everything to a random
    central idempotent.
    """
    from .zerocase import connected_groupoid, validate_groupoid, validate_partial_groupoid_action
    kinds = [("zmod", 3, 1), ("zmod", 2, 2), ("gf", 3, 2), ("gf", 2, 2), ("zmod", 5, 1)]
    comps = []
    atom_list = []
    iso_specs = []
    offset_obj = 0
    for _ in range(rng.randint(1, 2)):
        gname = rng.choice(list(SMALL_GROUPS))
        gtab = SMALL_GROUPS[gname]
        objects = rng.randint(1, 2)
        kind, p, k = rng.choice(kinds)
        atom = Atom.zmod(p, k) if kind == "zmod" else Atom.gf(p, k)
        twist_mod = k if kind == "gf" else 1
        f = [rng.randrange(twist_mod) for _ in range(objects)]
        comp = connected_groupoid(gtab, objects)
        comps.append((comp, objects, len(gtab)))
        base = len(atom_list)
        atom_list.extend([atom] * objects)
        # element order inside connected_groupoid: (g, i, j) lexicographic
        elems = [(g, i, j) for g in range(len(gtab)) for i in range(objects)
                 for j in range(objects)]
        for (g, i, j) in elems:
            iso_specs.append(({base + i: base + j},
                              {base + i: (f[j] - f[i]) % twist_mod} if twist_mod > 1 else {}))
        offset_obj += objects
    ring = FiniteRing(atom_list)
    # assemble the disjoint-union groupoid in the same element order
    blocks = []
    off = 0
    for comp, objects, glen in comps:
        blocks.append((comp, off))
        off += comp.n
    n = off
    product = [[None] * n for _ in range(n)]
    for comp, off0 in blocks:
        for a in range(comp.n):
            for b in range(comp.n):
                if comp.defined(a, b):
                    product[off0 + a][off0 + b] = off0 + comp.mul(a, b)
    names = [f"g{i}" for i in range(n)]
    G, d, r, inv = validate_groupoid(n, product, names)
    isos = [StructuredIso(ring, m, t) for m, t in iso_specs]
    if partial and rng.random() < 0.6:
        keep = frozenset(i for i in range(len(ring.atoms)) if rng.random() < 0.7)
        restricted = []
        for iso in isos:
            matching = {i: j for i, j in iso.matching.items() if i in keep and j in keep}
            twist = {i: iso.twist[i] for i in matching}
            restricted.append(StructuredIso(ring, matching, twist))
        ids = G.identities()
        covered = set()
        for e in ids:
            covered |= restricted[e].im_support
        if covered != set(range(len(ring.atoms))):
            # restriction must stay an action on the same atom list
            return None
        isos = restricted
    try:
        return validate_partial_groupoid_action(G, d, r, inv, ring, isos)
    except Exception:
        return None


def groupoid_action_corpus(seed, count, max_draws=10_000):
    rng = random.Random(seed)
    out = []
    for _ in range(max_draws):
        if len(out) >= count:
            break
        gamma = random_orthogonal_groupoid_action(rng)
        if gamma is not None:
            out.append(gamma)
    if len(out) < count:
        raise TooLarge(f"groupoid action corpus stalled at {len(out)}/{count}")
    return out


def non_categorical_semilattice():
    """A meet semilattice with zero violating categoricity: e^f, f^g nonzero
    but e^f^g = 0."""
    # elements: 0, m1, m2, e, f, g with m1 <= e, f and m2 <= f, g
    order = ["0", "m1", "m2", "e", "f", "g"]
    below = {
        "0": {"0"},
        "m1": {"0", "m1"}, "m2": {"0", "m2"},
        "e": {"0", "m1", "e"}, "g": {"0", "m2", "g"},
        "f": {"0", "m1", "m2", "f"},
    }

    def meet(x, y):
        common = below[x] & below[y]
        best = [c for c in common if all(o in below[c] for o in common)]
        (m,) = best
        return m

    idx = {x: i for i, x in enumerate(order)}
    table = [[idx[meet(x, y)] for y in order] for x in order]
    return validate_table(table, zero=0, names=order)
