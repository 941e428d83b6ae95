"""The inverse semigroup of partial ring isomorphisms between unital ideals.

Elements are StructuredIso objects under restricted composition
f g = f|_(im g  cap  dom f) o g|_(...); the empty iso (zero ideal to zero
ideal) is a legitimate element and acts as a zero.  Compatibility, finite
joins and the natural partial order are all computed structurally, with the
defining extensional characterizations re-checked against each other.
"""

from __future__ import annotations

import itertools

from .rings import RingError, StructuredIso, ideal_order


class NotCompatible(RingError):
    pass


class LemmaMismatch(AssertionError):
    """The two characterizations of compatibility disagreed: internal bug."""


def compose(f: StructuredIso, g: StructuredIso) -> StructuredIso:
    """Restricted composition f o g on g^{-1}(im g cap dom f)."""
    if f.ring != g.ring:
        raise RingError("isos on different rings")
    matching = {}
    twist = {}
    for i, j in g.matching.items():
        if j in f.matching:
            matching[i] = f.matching[j]
            a = g.ring.atoms[i]
            twist[i] = (g.twist[i] + f.twist[j]) % a.k if a.kind == "gf" else 0
    return StructuredIso(f.ring, matching, twist)


def inverse(f: StructuredIso) -> StructuredIso:
    return f.inverse()


def is_idempotent_iso(f: StructuredIso) -> bool:
    return compose(f, f) == f


def _restrictions_agree(f, g, atoms):
    for i in atoms:
        if f.matching[i] != g.matching[i] or f.twist[i] != g.twist[i]:
            return False
    return True


def is_compatible(f: StructuredIso, g: StructuredIso) -> bool:
    """f ~ g, checked two ways and asserted to agree.

    (a) f^{-1} g and f g^{-1} are idempotents of Iso_pu;
    (b) f, g coincide on dom f cap dom g, and f^{-1}, g^{-1} coincide on
        im f cap im g.
    """
    via_idem = (is_idempotent_iso(compose(f.inverse(), g))
                and is_idempotent_iso(compose(f, g.inverse())))
    fi, gi = f.inverse(), g.inverse()
    via_restr = (_restrictions_agree(f, g, f.dom_support & g.dom_support)
                 and _restrictions_agree(fi, gi, f.im_support & g.im_support))
    if via_idem != via_restr:
        raise LemmaMismatch(f"compatibility characterizations disagree on {f}, {g}")
    return via_idem


def natural_leq_iso(f: StructuredIso, g: StructuredIso) -> bool:
    """f <= g iff f is a restriction of g."""
    if f.ring != g.ring:
        raise RingError("isos on different rings")
    return f.dom_support <= g.dom_support and _restrictions_agree(f, g, f.dom_support)


def join_sum(isos) -> StructuredIso:
    """The sum (least upper bound) of a pairwise compatible family."""
    isos = list(isos)
    if not isos:
        raise NotCompatible("join of an empty family")
    ring = isos[0].ring
    for f, g in itertools.combinations(isos, 2):
        if not is_compatible(f, g):
            raise NotCompatible(f"{f} and {g} are not compatible")
    matching = {}
    twist = {}
    for f in isos:
        matching.update(f.matching)
        twist.update(f.twist)
    return StructuredIso(ring, matching, twist)


def meet_iso(f: StructuredIso, g: StructuredIso) -> StructuredIso:
    """Largest common restriction of f and g."""
    atoms = [i for i in f.dom_support & g.dom_support
             if f.matching[i] == g.matching[i] and f.twist[i] == g.twist[i]]
    return StructuredIso(f.ring, {i: f.matching[i] for i in atoms}, {i: f.twist[i] for i in atoms})


def iso_pu_elements(ring, max_count=200_000):
    """Every element of Iso_pu(A): all type-preserving matchings with twists.

    Exhaustive; used by oracles and the upper-bound scans in tests.
    """
    atoms = ring.atoms
    by_type = {}
    for i, a in enumerate(atoms):
        by_type.setdefault(a, []).append(i)
    out = []
    for dom in ring.all_supports():
        groups = {}
        for i in dom:
            groups.setdefault(atoms[i], []).append(i)
        target_choices = []
        for a, srcs in groups.items():
            pool = by_type[a]
            target_choices.append([(srcs, perm) for perm in itertools.permutations(pool, len(srcs))])
        for combo in itertools.product(*target_choices):
            ims = [j for _, perm in combo for j in perm]
            if len(set(ims)) != len(ims):
                continue
            matching = {}
            for srcs, perm in combo:
                matching.update(zip(srcs, perm))
            twist_ranges = [range(atoms[i].k) if atoms[i].kind == "gf" else range(1)
                            for i in sorted(matching)]
            for tw in itertools.product(*twist_ranges):
                out.append(StructuredIso(ring, matching, dict(zip(sorted(matching), tw))))
                if len(out) > max_count:
                    raise RingError("Iso_pu(A) too large to enumerate")
    return out


def upper_bounds(isos, universe):
    """All elements of `universe` lying above every member of `isos`."""
    return [u for u in universe if all(natural_leq_iso(f, u) for f in isos)]


def domain_order(f: StructuredIso) -> int:
    return ideal_order(f.ring, f.dom_support)
