"""Central extensions of nilpotent quotients.

Given a consistent weighted pc presentation of a class-c quotient of an
L-presented group, the extension engine builds the covering group one
class higher: every non-defining relation and every redundant free
generator acquires a fresh central generator recording its failure in
the cover, the standard overlap checks turn into relations among those
central generators, and enforcing them in Hermite normal form leaves a
consistent presentation of the cover.

The central section of the cover over the quotient carries all the
homological data used downstream: its torsion describes the next
quotient in the tower once the relator lattice is imposed, the kernel
of its abelianization map is the Schur multiplier of the quotient, and
endomorphisms of the presentation lift to integer matrices on it.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .lattices import (
    AbelianInvariants,
    HNFBasis,
    left_kernel,
    smith_invariants,
    spin_closure,
    subgroup_invariants,
    xgcd,
)
from .pcgroups import PcPresentation
from .presentations import LPresentation
from .words import FreeEndomorphism, Word


class QuotientSystem:
    """A nilpotent quotient: presentation, pc group, and generator images."""

    __slots__ = ("pres", "pc", "images")

    def __init__(self, pres: LPresentation, pc: PcPresentation, images: list[dict[int, int]]):
        self.pres = pres
        self.pc = pc
        self.images = images

    @property
    def nclass(self) -> int:
        return self.pc.nclass

    def image_of_word(self, word: Word) -> dict[int, int]:
        return self.pc.eval_word(self.images, word)

    def lcs_factors(self) -> list[AbelianInvariants]:
        return self.pc.lcs_factors()

    def abelian_invariants(self) -> AbelianInvariants:
        return self.pc.abelian_invariants()

    def order(self) -> Optional[int]:
        return self.pc.order()


def trivial_system(pres: LPresentation) -> QuotientSystem:
    pc = PcPresentation(nfree=len(pres.alphabet))
    return QuotientSystem(pres, pc, [{} for _ in range(len(pres.alphabet))])


# --------------------------------------------------------------------------
# sparse integer echelon, used to absorb the many consistency rows


class _SparseEchelon:
    """Row echelon over Z on sparse rows {column: entry}."""

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}

    @staticmethod
    def _combine(a: dict[int, int], ca: int, b: dict[int, int], cb: int) -> dict[int, int]:
        out = {}
        for k in a.keys() | b.keys():
            v = ca * a.get(k, 0) + cb * b.get(k, 0)
            if v:
                out[k] = v
        return out

    def _canonicalize(self, r: dict[int, int], exclude: int = -1) -> dict[int, int]:
        """Reduce the entries of r at pivot columns into [0, pivot).

        Keeps every working row's entries bounded by the pivot values,
        which stops the coefficient growth that unreduced integer
        elimination suffers from.
        """
        while True:
            col = None
            for k, v in r.items():
                if k == exclude:
                    continue
                cur = self.rows.get(k)
                if cur is not None and not 0 <= v < cur[k] and (col is None or k < col):
                    col = k
            if col is None:
                return r
            cur = self.rows[col]
            r = self._combine(r, 1, cur, -(r[col] // cur[col]))

    def insert(self, row: dict[int, int]):
        pending = [{k: v for k, v in row.items() if v}]
        while pending:
            r = self._canonicalize(pending.pop())
            while r:
                lead = min(r)
                cur = self.rows.get(lead)
                if cur is None:
                    if r[lead] < 0:
                        r = {k: -v for k, v in r.items()}
                    self.rows[lead] = self._canonicalize(r, exclude=lead)
                    break
                d, a = cur[lead], r[lead]
                q, rem = divmod(a, d)
                if rem == 0:
                    r = self._canonicalize(self._combine(r, 1, cur, -q))
                else:
                    g, x, y = xgcd(d, a)
                    new = self._combine(cur, x, r, y)
                    displaced = self._combine(cur, 1, new, -(d // g))
                    r = self._canonicalize(self._combine(r, 1, new, -(a // g)))
                    self.rows[lead] = self._canonicalize(new, exclude=lead)
                    if displaced:
                        pending.append(self._canonicalize(displaced))

    def canonical(self, ncols: int) -> HNFBasis:
        pivots = sorted(self.rows)
        for p in pivots:
            d = self.rows[p][p]
            for p2 in pivots:
                if p2 >= p:
                    break
                e = self.rows[p2].get(p, 0)
                q = e // d
                if q:
                    self.rows[p2] = self._combine(self.rows[p2], 1, self.rows[p], -q)
        dense = []
        for p in pivots:
            row = [0] * ncols
            for k, v in self.rows[p].items():
                row[k] = v
            dense.append(tuple(row))
        return HNFBasis(tuple(dense), tuple(pivots), ncols)


# --------------------------------------------------------------------------
# the extension step


def _ab_of_nf(pc: PcPresentation, nf: dict[int, int]) -> list[int]:
    vec = [0] * pc.nfree
    for g, e in nf.items():
        for t, x in enumerate(pc.abelian_image[g]):
            if x:
                vec[t] += e * x
    return vec


def _assert_defining(tail: dict[int, int], g: int):
    if not tail or max(tail) != g or tail[g] != 1:
        raise AssertionError("defining relation lost its generator")


def lift_through_definitions(
    pc: PcPresentation, images: list[dict[int, int]], endo: FreeEndomorphism
) -> list[dict[int, int]]:
    """Images of every pc generator under the induced endomorphism.

    Each generator is resolved through its defining relation, in index
    order, so only images of earlier generators and of the free
    generators' images are ever needed.
    """
    ims: list[dict[int, int]] = []

    def map_nf(nf: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for h in sorted(nf):
            out = pc.mul(out, pc.pow_nf(ims[h], nf[h]))
        return out

    for g in range(pc.ngens):
        d = pc.definitions[g]
        if d[0] == "free":
            res = pc.eval_word(images, endo.images[d[1]])
        elif d[0] == "freetail":
            s = d[1]
            base = images[s]
            _assert_defining(base, g)
            omega = {h: e for h, e in base.items() if h != g}
            res = pc.mul(pc.inv(map_nf(omega)), pc.eval_word(images, endo.images[s]))
        elif d[0] == "conj":
            i, j = d[1], d[2]
            tail = pc.conj[(i, j)]
            _assert_defining(tail, g)
            prefix = {h: e for h, e in tail.items() if h != g}
            res = pc.mul(pc.inv(map_nf(prefix)), pc.comm_nf(ims[j], ims[i]))
        elif d[0] == "pow":
            i = d[1]
            tail = pc.power_tails.get(i, {})
            _assert_defining(tail, g)
            prefix = {h: e for h, e in tail.items() if h != g}
            res = pc.mul(pc.inv(map_nf(prefix)), pc.pow_nf(ims[i], pc.orders[i]))
        else:
            raise AssertionError("unknown definition %r" % (d,))
        ims.append(res)
    return ims


def _apply_central_rows(pc: PcPresentation, images: list[dict[int, int]], basis: HNFBasis):
    """Impose HNF relations on the central block, then renumber.

    A pivot of 1 eliminates its generator (substituting everywhere), a
    pivot d > 1 becomes a relative order with the rest of the row as
    power tail.  Rows are processed by descending pivot column so each
    tail is canonicalized against already-final later generators.
    """
    cs = pc.central_start
    assert cs is not None
    elim: dict[int, dict[int, int]] = {}
    for row, p in reversed(list(zip(basis.rows, basis.pivots))):
        g = cs + p
        d = row[p]
        raw = {cs + l: -row[l] for l in range(p + 1, basis.ncols) if row[l]}
        if d == 1:
            elim[g] = pc._central_merge({}, raw)
        else:
            pc.orders[g] = d
            pc.set_power_tail(g, pc._central_merge({}, raw))

    if elim:

        def fix(nf: dict[int, int]) -> dict[int, int]:
            hits = [g for g in nf if g in elim]
            if not hits:
                return nf
            out = {g: e for g, e in nf.items() if g not in elim}
            for g in hits:
                e = nf[g]
                out = pc._central_merge(out, {l: e * f for l, f in elim[g].items()})
            return out

        for i in list(pc.power_tails):
            pc.power_tails[i] = fix(pc.power_tails[i])
            if not pc.power_tails[i]:
                del pc.power_tails[i]
        for key in list(pc.conj):
            pc.conj[key] = fix(pc.conj[key])
            if not pc.conj[key]:
                del pc.conj[key]
        for s in range(len(images)):
            images[s] = fix(images[s])

    # renumber compactly
    keep = [g for g in range(pc.ngens) if g not in elim]
    remap = {old: new for new, old in enumerate(keep)}

    def remap_nf(nf: dict[int, int]) -> dict[int, int]:
        return {remap[g]: e for g, e in nf.items()}

    pc.orders = [pc.orders[g] for g in keep]
    pc.weights = [pc.weights[g] for g in keep]
    pc.abelian_image = [pc.abelian_image[g] for g in keep]
    pc.power_tails = {remap[i]: remap_nf(t) for i, t in pc.power_tails.items() if i in remap}
    pc.conj = {(remap[i], remap[j]): remap_nf(t) for (i, j), t in pc.conj.items()}
    defs = []
    for g in keep:
        d = pc.definitions[g]
        if d[0] == "conj":
            defs.append(("conj", remap[d[1]], remap[d[2]]))
        elif d[0] == "pow":
            defs.append(("pow", remap[d[1]]))
        else:
            defs.append(d)
    pc.definitions = defs
    for s in range(len(images)):
        images[s] = remap_nf(images[s])
    pc.clear_caches()


class Cover:
    """The one-class-higher cover of a nilpotent quotient.

    Generators below base_ngens are the lifted quotient generators; the
    rest form the central block spanning the section N/[N, F] over the
    quotient F/N, truncated at the cover's class.
    """

    def __init__(
        self,
        pres: LPresentation,
        pc: PcPresentation,
        lift_images: list[dict[int, int]],
        base_ngens: int,
    ):
        self.pres = pres
        self.pc = pc
        self.lift_images = lift_images
        self.base_ngens = base_ngens
        self._endo_cache: dict[FreeEndomorphism, list[dict[int, int]]] = {}

    @property
    def central_dim(self) -> int:
        return self.pc.ngens - self.base_ngens

    def central_vector(self, nf: dict[int, int]) -> list[int]:
        vec = [0] * self.central_dim
        for g, e in nf.items():
            if g < self.base_ngens:
                raise ValueError("element does not lie in the central block")
            vec[g - self.base_ngens] = e
        return vec

    def torsion_rows(self) -> list[list[int]]:
        """Relation vectors presenting the central section."""
        m = self.central_dim
        rows = []
        for t in range(m):
            g = self.base_ngens + t
            o = self.pc.orders[g]
            if o is None:
                continue
            row = [0] * m
            row[t] = o
            for l, e in self.pc.power_tails.get(g, {}).items():
                row[l - self.base_ngens] -= e
            rows.append(row)
        return rows

    def mu_rows(self) -> list[list[int]]:
        """Abelianized images of the central generators in Z^nfree."""
        return [
            list(self.pc.abelian_image[self.base_ngens + t]) for t in range(self.central_dim)
        ]

    def section_invariants(self) -> AbelianInvariants:
        return smith_invariants(self.torsion_rows(), self.central_dim)

    def multiplier_invariants(self) -> AbelianInvariants:
        """Schur multiplier of the quotient: kernel of the section's abelianization."""
        kernel = left_kernel(self.mu_rows(), nrows=self.central_dim)
        return subgroup_invariants(kernel, self.torsion_rows(), self.central_dim)

    def relator_rows(self, words: Sequence[Word]) -> list[list[int]]:
        return [
            self.central_vector(self.pc.eval_word(self.lift_images, w)) for w in words
        ]

    def lifted_images(self, endo: FreeEndomorphism) -> list[dict[int, int]]:
        """Images of every cover generator under the lifted endomorphism."""
        cached = self._endo_cache.get(endo)
        if cached is None:
            cached = lift_through_definitions(self.pc, self.lift_images, endo)
            self._endo_cache[endo] = cached
        return cached

    def apply_lifted(self, endo: FreeEndomorphism, nf: dict[int, int]) -> dict[int, int]:
        """Image of a cover element under the lifted endomorphism."""
        ims = self.lifted_images(endo)
        out: dict[int, int] = {}
        for g in sorted(nf):
            out = self.pc.mul(out, self.pc.pow_nf(ims[g], nf[g]))
        return out

    def endomorphism_matrices(self) -> list[list[list[int]]]:
        """Action of each declared endomorphism on the central section.

        Raises ValueError when an image leaves the central block, which
        happens exactly when the presentation is not invariant.
        """
        mats = []
        for name, endo in self.pres.endomorphisms:
            ims = self.lifted_images(endo)
            rows = []
            for t in range(self.central_dim):
                im = ims[self.base_ngens + t]
                if any(h < self.base_ngens for h in im):
                    raise ValueError(
                        "ill-defined image detected: endomorphism %r does not map "
                        "the relation subgroup into itself" % name
                    )
                rows.append(self.central_vector(im))
            mats.append(rows)
        return mats

    def spun_relator_lattice(
        self,
        fixed: Optional[Sequence[Word]] = None,
        iterated: Optional[Sequence[Word]] = None,
    ) -> HNFBasis:
        """Values of the fixed relators plus the closure of the iterated
        relator values under the lifted endomorphisms."""
        if fixed is None:
            fixed = self.pres.fixed
        if iterated is None:
            iterated = self.pres.iterated
        return spin_closure(
            self.relator_rows(iterated),
            self.endomorphism_matrices(),
            base_rows=self.torsion_rows() + self.relator_rows(fixed),
            ncols=self.central_dim,
        )


def build_cover(system: QuotientSystem) -> Cover:
    """Extend a class-c quotient to a consistent presentation of its cover."""
    pres = system.pres
    pc = system.pc.copy()
    images = [dict(im) for im in system.images]
    cs = pc.ngens
    pc.central_start = cs
    cover_class = pc.nclass + 1

    defined_pow = {d[1] for d in pc.definitions if d[0] == "pow"}
    defined_conj = {(d[1], d[2]) for d in pc.definitions if d[0] == "conj"}
    defined_free = {d[1] for d in pc.definitions if d[0] in ("free", "freetail")}

    # one fresh central generator per non-defining power relation,
    for i in range(cs):
        o = pc.orders[i]
        if o is None or i in defined_pow:
            continue
        tail = pc.power_tails.get(i, {})
        ab = [o * x for x in pc.abelian_image[i]]
        for t, x in enumerate(_ab_of_nf(pc, tail)):
            ab[t] -= x
        g = pc.add_generator(None, cover_class, ("pow", i), ab)
        new_tail = dict(tail)
        new_tail[g] = 1
        pc.set_power_tail(i, new_tail)

    # ... per non-defining conjugation relation within the class bound,
    for i in range(cs):
        for j in range(i + 1, cs):
            if (i, j) in defined_conj:
                continue
            if pc.weights[i] + pc.weights[j] > cover_class:
                continue
            tail = pc.conj.get((i, j), {})
            ab = [-x for x in _ab_of_nf(pc, tail)]
            g = pc.add_generator(None, cover_class, ("conj", i, j), ab)
            new_tail = dict(tail)
            new_tail[g] = 1
            pc.set_conj_tail(i, j, new_tail)

    # ... and per free generator that defines no quotient generator.
    for s in range(pc.nfree):
        if s in defined_free:
            continue
        omega = images[s]
        ab = [0] * pc.nfree
        ab[s] = 1
        for t, x in enumerate(_ab_of_nf(pc, omega)):
            ab[t] -= x
        g = pc.add_generator(None, cover_class, ("freetail", s), ab)
        images[s] = dict(omega)
        images[s][g] = 1

    # overlap checks become relations between the central generators
    echelon = _SparseEchelon()
    for kind, idx, lhs, rhs in pc.overlap_checks(
        old_limit=cs, class_bound=cover_class, prune=True
    ):
        if lhs == rhs:
            continue
        row = {}
        for k in lhs.keys() | rhs.keys():
            d = lhs.get(k, 0) - rhs.get(k, 0)
            if d:
                if k < cs:
                    raise AssertionError(
                        "inconsistent cover: %s overlap %r differs outside the center"
                        % (kind, idx)
                    )
                row[k - cs] = d
        if row:
            echelon.insert(row)
    basis = echelon.canonical(pc.ngens - cs)

    # every enforced row must be invisible in the cover's abelianization
    for row in basis.rows:
        vec = [0] * pc.nfree
        for l, e in enumerate(row):
            if e:
                for t, x in enumerate(pc.abelian_image[cs + l]):
                    vec[t] += e * x
        if any(vec):
            raise AssertionError("consistency relation with nonzero abelianization")

    _apply_central_rows(pc, images, basis)
    return Cover(pres, pc, images, cs)


def impose_relators(cover: Cover) -> QuotientSystem:
    """Quotient the cover by the spun relator values: the next tower step."""
    lattice = cover.spun_relator_lattice()
    pc = cover.pc.copy()
    images = [dict(im) for im in cover.lift_images]
    for t in range(cover.central_dim):
        g = cover.base_ngens + t
        pc.orders[g] = None
        pc.power_tails.pop(g, None)
    pc.clear_caches()
    _apply_central_rows(pc, images, lattice)
    pc.central_start = None
    return QuotientSystem(cover.pres, pc, images)
