"""Multiplier quotients along the nilpotent tower.

For an invariantly L-presented group G with class-c quotient H_c, the
Schur multiplier M(H_c) is the kernel of the abelianization map on the
central section of the cover of H_c.  The image of M(G) inside it is
spanned by the values of the adjusted relator consequences: words that
normally generate the relation subgroup and lie in the derived
subgroup, with the iterated ones closed under the lifted endomorphisms.
The resulting chain of images, one per class, is the group's multiplier
filtration; its terms are computed here together with the data needed
to cross-check them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .covers import build_cover, impose_relators, trivial_system
from .lattices import AbelianInvariants, spin_closure, subgroup_invariants
from .presentations import AdjustedLPresentation, LPresentation, adjust


@dataclass(frozen=True)
class DwyerStep:
    """One class of the multiplier filtration.

    invariants is the image of the full multiplier in M(H_c);
    multiplier is M(H_c) itself; next_layer is the weight-(c+1) section
    of the lower central series, trivial once the tower has stabilized.
    The two timings split the work into extending the tower (cover plus
    imposition) and the multiplier computation proper.
    """

    nclass: int
    invariants: AbelianInvariants
    multiplier: AbelianInvariants
    next_layer: AbelianInvariants
    quotient_seconds: float
    dwyer_seconds: float


def dwyer_range(
    pres: LPresentation,
    max_class: int,
    adjusted: Optional[AdjustedLPresentation] = None,
) -> list[DwyerStep]:
    """Multiplier images for every class from 1 to max_class.

    One cover is built per class and shared between the multiplier
    computation and the next tower step.  Passing a precomputed
    adjustment avoids repeating it across calls.
    """
    if max_class < 1:
        raise ValueError("max_class must be at least 1")
    if adjusted is None:
        adjusted = adjust(pres)
    fixed_cons = adjusted.fixed_consequences
    iterated_cons = adjusted.iterated_consequences

    steps: list[DwyerStep] = []
    t0 = time.perf_counter()
    system = impose_relators(build_cover(trivial_system(pres)))
    carried = time.perf_counter() - t0
    for c in range(1, max_class + 1):
        t1 = time.perf_counter()
        cover = build_cover(system)
        t2 = time.perf_counter()
        m = cover.central_dim
        torsion = cover.torsion_rows()
        lattice = spin_closure(
            cover.relator_rows(iterated_cons),
            cover.endomorphism_matrices(),
            base_rows=torsion + cover.relator_rows(fixed_cons),
            ncols=m,
        )
        image = subgroup_invariants(lattice.rows, torsion, m)
        section = cover.multiplier_invariants()
        t3 = time.perf_counter()
        system = impose_relators(cover)
        t4 = time.perf_counter()
        if system.nclass == c + 1:
            layer = system.lcs_factors()[c]
        else:
            layer = AbelianInvariants(0, ())
        steps.append(
            DwyerStep(
                nclass=c,
                invariants=image,
                multiplier=section,
                next_layer=layer,
                quotient_seconds=carried + (t2 - t1) + (t4 - t3),
                dwyer_seconds=t3 - t2,
            )
        )
        carried = 0.0
    return steps


def dwyer_quotient(pres: LPresentation, nclass: int) -> AbelianInvariants:
    """Image of the multiplier in M(G/gamma_{nclass+1})."""
    return dwyer_range(pres, nclass)[-1].invariants
