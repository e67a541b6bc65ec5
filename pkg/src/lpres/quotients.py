"""Nilpotent quotients of L-presented groups.

The class-c quotient G/gamma_{c+1}(G) is computed as a weighted pc
presentation by climbing a tower: the cover of the class-(c-1) quotient
is built one class higher, the values of all relators (with the
iterated ones closed under the lifted endomorphisms) are imposed on its
central section, and whatever survives is the next quotient.  Each
surviving central generator carries the weight of its layer, so the
lower central series can be read off the presentation directly.
"""

from __future__ import annotations

from typing import Optional

from .covers import (
    QuotientSystem,
    build_cover,
    impose_relators,
    lift_through_definitions,
    trivial_system,
)
from .lattices import AbelianInvariants, smith_invariants, spin_closure
from .presentations import LPresentation
from .words import FreeEndomorphism


def abelian_quotient(pres: LPresentation) -> AbelianInvariants:
    """Abelianization of the presented group.

    The fixed relator vectors are imposed directly; the iterated ones
    are closed under the endomorphisms acting on Z^n by their
    abelianized matrices.
    """
    n = len(pres.alphabet)
    lattice = spin_closure(
        [list(w.exponent_vector()) for w in pres.iterated],
        [endo.matrix() for _, endo in pres.endomorphisms],
        base_rows=[list(w.exponent_vector()) for w in pres.fixed],
        ncols=n,
    )
    return smith_invariants(lattice.rows, n)


def nilpotent_quotient(pres: LPresentation, nclass: int) -> QuotientSystem:
    """The quotient by the (nclass+1)-st term of the lower central series."""
    if nclass < 0:
        raise ValueError("class must be non-negative")
    system = trivial_system(pres)
    for c in range(1, nclass + 1):
        system = impose_relators(build_cover(system))
        if system.nclass < c:
            # the lower central series has stabilized; repeating the
            # extension step cannot produce new layers
            break
    return system


def quotient_tower(pres: LPresentation, max_class: int):
    """Yield (class, QuotientSystem) for class = 1 .. max_class.

    Stops early when the lower central series stabilizes.  The systems
    share nothing mutable, so callers may keep or modify them freely.
    """
    system = trivial_system(pres)
    for c in range(1, max_class + 1):
        system = impose_relators(build_cover(system))
        if system.nclass < c:
            break
        yield c, system


def induce_endomorphism(
    system: QuotientSystem,
    endo: FreeEndomorphism,
    validate: bool = True,
) -> list[dict[int, int]]:
    """Images of the pc generators under the induced endomorphism.

    The images always exist as normal forms; when validate is set, every
    power and conjugation relation is checked to map to a consequence,
    so a presentation that is not actually invariant is rejected with a
    ValueError instead of silently producing a non-homomorphism.
    """
    pc = system.pc
    ims = lift_through_definitions(pc, system.images, endo)
    if validate:

        def map_nf(nf):
            out: dict[int, int] = {}
            for h in sorted(nf):
                out = pc.mul(out, pc.pow_nf(ims[h], nf[h]))
            return out

        for i in range(pc.ngens):
            o = pc.orders[i]
            if o is not None:
                lhs = pc.pow_nf(ims[i], o)
                rhs = map_nf(pc.power_tails.get(i, {}))
                if lhs != rhs:
                    raise ValueError(
                        "ill-defined image detected: power relation of generator "
                        "%d is not preserved" % i
                    )
        for (i, j), tail in sorted(pc.conj.items()):
            lhs = pc.comm_nf(ims[j], ims[i])
            rhs = map_nf(tail)
            if lhs != rhs:
                raise ValueError(
                    "ill-defined image detected: conjugation relation (%d, %d) "
                    "is not preserved" % (i, j)
                )
        # commuting pairs carry no stored relation but still constrain
        for i in range(pc.ngens):
            for j in range(i + 1, pc.ngens):
                if (i, j) not in pc.conj:
                    if pc.comm_nf(ims[j], ims[i]):
                        raise ValueError(
                            "ill-defined image detected: generators %d and %d "
                            "commute but their images do not" % (i, j)
                        )
    return ims
