"""Weighted polycyclic presentations and collection from the left.

A PcPresentation describes a finitely generated nilpotent group on
generators g_0 < g_1 < ... < g_{n-1}, each with a weight, such that:

* weights are non-decreasing in the generator index;
* for finite relative order o_i there is a power relation
  g_i^{o_i} = tail, with the tail a normal form over generators of
  index > i (and of strictly larger weight);
* for i < j there is a conjugation relation g_j^{g_i} = g_j * tail
  with the tail a normal form over generators of index > j; a missing
  entry means the two generators commute.

Normal forms are sparse dicts {generator index: exponent} with the
exponent of a finite-order generator kept in [0, order).  Products are
computed by collection from the left.  When central_start is set,
generators at index >= central_start form a central block (used while
extending a quotient by a new layer): they commute with everything and
their conjugation relations are trivial, which admits a fast merge
path; central_start None means no such block is declared.

Consistency of the relations is checked through the standard overlap
tests; an inconsistent presentation makes the two collections of an
overlap disagree, and the extension machinery turns those
disagreements into relations between the central generators.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .lattices import AbelianInvariants, smith_invariants
from .words import Word

# generator definitions:
#   ("free", s)      image of the s-th free generator
#   ("freetail", s)  correction factor multiplied onto the image of the
#                    s-th free generator during an extension
#   ("conj", i, j)   new factor in the relation g_j^{g_i} = g_j * tail
#   ("pow", i)       new factor in the power relation of g_i


class PcPresentation:
    __slots__ = (
        "nfree",
        "orders",
        "weights",
        "power_tails",
        "conj",
        "definitions",
        "abelian_image",
        "central_start",
        "_conj_cache",
    )

    def __init__(self, nfree: int):
        self.nfree = nfree
        self.orders: list[Optional[int]] = []
        self.weights: list[int] = []
        self.power_tails: dict[int, dict[int, int]] = {}
        self.conj: dict[tuple[int, int], dict[int, int]] = {}
        self.definitions: list[tuple] = []
        self.abelian_image: list[tuple[int, ...]] = []
        self.central_start: Optional[int] = None
        self._conj_cache: dict[tuple[int, int, int], dict[int, int]] = {}

    # ------------------------------------------------------------ structure

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def nclass(self) -> int:
        return max(self.weights, default=0)

    def add_generator(
        self,
        order: Optional[int],
        weight: int,
        definition: tuple,
        ab_image: Sequence[int],
    ) -> int:
        if self.weights and weight < self.weights[-1]:
            raise ValueError("weights must be non-decreasing")
        self.orders.append(order)
        self.weights.append(weight)
        self.definitions.append(definition)
        self.abelian_image.append(tuple(ab_image))
        return self.ngens - 1

    def set_power_tail(self, i: int, tail: dict[int, int]):
        tail = {g: e for g, e in tail.items() if e}
        if any(g <= i for g in tail):
            raise ValueError("power tail must use generators above its own")
        if tail:
            self.power_tails[i] = tail
        else:
            self.power_tails.pop(i, None)
        self._conj_cache.clear()

    def set_conj_tail(self, i: int, j: int, tail: dict[int, int]):
        if not i < j:
            raise ValueError("conjugation relations are stored for i < j")
        tail = {g: e for g, e in tail.items() if e}
        if any(g <= j for g in tail):
            raise ValueError("conjugation tail must use generators above the conjugated one")
        if tail:
            self.conj[(i, j)] = tail
        else:
            self.conj.pop((i, j), None)
        self._conj_cache.clear()

    def clear_caches(self):
        self._conj_cache.clear()

    def _central_bound(self) -> int:
        return self.ngens if self.central_start is None else self.central_start

    def is_central(self, g: int) -> bool:
        return g >= self._central_bound()

    def _conj_central_only(self, i: int, j: int) -> bool:
        tail = self.conj.get((i, j))
        return tail is None or min(tail) >= self._central_bound()

    def gen_nf(self, i: int) -> dict[int, int]:
        return {i: 1}

    def copy(self) -> "PcPresentation":
        twin = PcPresentation(self.nfree)
        twin.orders = list(self.orders)
        twin.weights = list(self.weights)
        twin.power_tails = {i: dict(t) for i, t in self.power_tails.items()}
        twin.conj = {k: dict(t) for k, t in self.conj.items()}
        twin.definitions = list(self.definitions)
        twin.abelian_image = list(self.abelian_image)
        twin.central_start = self.central_start
        return twin

    # ------------------------------------------------------------ collection

    def mul(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        out = dict(u)
        for g in sorted(v):
            out = self.mul_gen(out, g, v[g])
        return out

    def mul_gen(self, u: dict[int, int], g: int, e: int) -> dict[int, int]:
        """Normal form of u * g^e."""
        if e == 0:
            return dict(u)
        cs = self._central_bound()
        if g >= cs:
            return self._central_merge(u, {g: e})
        base: dict[int, int] = {}
        mid: dict[int, int] = {}
        central: dict[int, int] = {}
        for k, v in u.items():
            if k < g:
                base[k] = v
            elif k < cs and k > g:
                mid[k] = v
            elif k >= cs:
                central[k] = v
        old = u.get(g, 0)
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            mid = self._conj_nf(mid, g, sign)
        total = old + e
        o = self.orders[g]
        carry = 0
        if o is not None:
            carry, total = divmod(total, o)
        res = base
        if total:
            res[g] = total
        if carry:
            tail = self.power_tails.get(g, {})
            res = self.mul(res, self.pow_nf(tail, carry))
        if mid:
            res = self.mul(res, mid)
        if central:
            res = self._central_merge(res, central)
        return res

    def _central_merge(self, u: dict[int, int], add: dict[int, int]) -> dict[int, int]:
        """Merge exponents of central generators, cascading power tails.

        Central generators commute with everything and their power
        tails stay inside the central block, so the merge is iterative
        (smallest index first) rather than recursive.
        """
        out = dict(u)
        pending = dict(add)
        while pending:
            t = min(pending)
            e = pending.pop(t)
            if not e:
                continue
            total = out.get(t, 0) + e
            o = self.orders[t]
            carry = 0
            if o is not None:
                carry, total = divmod(total, o)
            if total:
                out[t] = total
            else:
                out.pop(t, None)
            if carry:
                for h, f in self.power_tails.get(t, {}).items():
                    pending[h] = pending.get(h, 0) + carry * f
        return out

    def inv(self, u: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in sorted(u, reverse=True):
            out = self.mul_gen(out, g, -u[g])
        return out

    def pow_nf(self, u: dict[int, int], k: int) -> dict[int, int]:
        if k == 0 or not u:
            return {}
        if k < 0:
            u = self.inv(u)
            k = -k
        result: dict[int, int] = {}
        base = dict(u)
        while True:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if not k:
                return result
            base = self.mul(base, base)

    def comm_nf(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        """Normal form of the commutator u^-1 * v^-1 * u * v."""
        return self.mul(self.mul(self.inv(u), self.inv(v)), self.mul(u, v))

    def conj_gen_nf(self, g: int, sign: int, j: int) -> dict[int, int]:
        """Normal form of g_j conjugated by g_g^sign, for j > g."""
        key = (g, sign, j)
        cached = self._conj_cache.get(key)
        if cached is not None:
            return cached
        tail = self.conj.get((g, j))
        if not tail:
            res = {j: 1}
        elif sign > 0:
            res = {j: 1}
            res.update(tail)
        else:
            # from g_j^{g} = g_j * t:  g_j^{g^-1} = g_j * (t^{g^-1})^-1
            t_conj = self._conj_nf(tail, g, -1)
            res = self.mul({j: 1}, self.inv(t_conj))
        self._conj_cache[key] = res
        return res

    def _conj_nf(self, nf: dict[int, int], g: int, sign: int) -> dict[int, int]:
        """Conjugate a normal form over generators > g by g_g^sign."""
        out: dict[int, int] = {}
        for j in sorted(nf):
            out = self.mul(out, self.pow_nf(self.conj_gen_nf(g, sign, j), nf[j]))
        return out

    def eval_word(self, images: Sequence[dict[int, int]], word: Word) -> dict[int, int]:
        """Image of a free word under the map sending free generator s to images[s]."""
        out: dict[int, int] = {}
        for s, e in word.syllables:
            out = self.mul(out, self.pow_nf(images[s], e))
        return out

    # ------------------------------------------------------------ consistency

    def overlap_checks(
        self,
        old_limit: Optional[int] = None,
        class_bound: Optional[int] = None,
        prune: bool = True,
    ) -> Iterator[tuple[str, tuple[int, ...], dict[int, int], dict[int, int]]]:
        """Collect each overlap of rewriting rules in its two possible orders.

        Yields (kind, indices, lhs, rhs); the presentation is
        consistent on the checked range when every pair agrees.  Only
        generators below old_limit participate (overlaps involving the
        central block are automatically consistent).  Triple overlaps
        whose weight sum exceeds class_bound live in a trivial section
        of the group and are skipped unless prune is False.
        """
        n = self.ngens if old_limit is None else old_limit
        bound = self.nclass if class_bound is None else class_bound
        # power overlaps g_i^(o_i + 1)
        for i in range(n):
            o = self.orders[i]
            if o is None:
                continue
            tail = self.power_tails.get(i, {})
            lhs = self.mul(self.gen_nf(i), tail)
            rhs = self.mul(tail, self.gen_nf(i))
            yield ("pow", (i,), lhs, rhs)
        # power/conjugation overlaps g_j^(o_j) g_i and g_j g_i^(o_i)
        for i in range(n):
            for j in range(i + 1, n):
                oj = self.orders[j]
                if oj is not None:
                    tail = self.power_tails.get(j, {})
                    lhs = self.mul(tail, self.gen_nf(i))
                    rhs = self.mul(
                        self.pow_nf(self.gen_nf(j), oj - 1),
                        self.mul(self.gen_nf(j), self.gen_nf(i)),
                    )
                    yield ("pow-conj", (j, i), lhs, rhs)
                oi = self.orders[i]
                if oi is not None:
                    tail = self.power_tails.get(i, {})
                    lhs = self.mul(self.gen_nf(j), tail)
                    rhs = self.mul(
                        self.mul(self.gen_nf(j), self.gen_nf(i)),
                        self.pow_nf(self.gen_nf(i), oi - 1),
                    )
                    yield ("conj-pow", (j, i), lhs, rhs)
        # commutator overlaps g_k g_j g_i for k > j > i
        for i in range(n):
            wi = self.weights[i]
            for j in range(i + 1, n):
                wij = wi + self.weights[j]
                if prune and wij + self.weights[j] > bound:
                    # weights ascend with the index, so every k > j is pruned too
                    break
                for k in range(j + 1, n):
                    if prune and wij + self.weights[k] > bound:
                        break
                    if prune:
                        # when all three generators conjugate each other by
                        # central factors only, the two collection orders
                        # produce the same central multiset and always agree
                        if (
                            self._conj_central_only(i, j)
                            and self._conj_central_only(i, k)
                            and self._conj_central_only(j, k)
                        ):
                            continue
                    elif (
                        (i, j) not in self.conj
                        and (i, k) not in self.conj
                        and (j, k) not in self.conj
                    ):
                        continue
                    lhs = self.mul(
                        self.mul(self.gen_nf(k), self.gen_nf(j)), self.gen_nf(i)
                    )
                    rhs = self.mul(
                        self.gen_nf(k), self.mul(self.gen_nf(j), self.gen_nf(i))
                    )
                    yield ("comm", (k, j, i), lhs, rhs)

    def consistency_failures(
        self, prune: bool = True, class_bound: Optional[int] = None
    ) -> list[tuple[str, tuple[int, ...], dict[int, int], dict[int, int]]]:
        return [
            (kind, idx, lhs, rhs)
            for kind, idx, lhs, rhs in self.overlap_checks(
                old_limit=self.ngens, class_bound=class_bound, prune=prune
            )
            if lhs != rhs
        ]

    def is_consistent(self, prune: bool = True) -> bool:
        return not self.consistency_failures(prune=prune)

    # ------------------------------------------------------------ invariants

    def layer_generators(self, weight: int) -> list[int]:
        return [g for g in range(self.ngens) if self.weights[g] == weight]

    def lcs_factors(self) -> list[AbelianInvariants]:
        """Invariants of the lower central series layers, weight 1 upward.

        Power tails of a weight-w generator only touch deeper
        generators, so each layer is the direct sum of cyclic groups
        given by the relative orders in that weight block.
        """
        out = []
        for w in range(1, self.nclass + 1):
            gens = self.layer_generators(w)
            rows = []
            for pos, g in enumerate(gens):
                o = self.orders[g]
                if o is not None:
                    row = [0] * len(gens)
                    row[pos] = o
                    rows.append(row)
            out.append(smith_invariants(rows, len(gens)))
        return out

    def abelian_invariants(self) -> AbelianInvariants:
        if self.nclass == 0:
            return AbelianInvariants(0, ())
        return self.lcs_factors()[0]

    def order(self) -> Optional[int]:
        total = 1
        for o in self.orders:
            if o is None:
                return None
            total *= o
        return total

    def format_nf(self, nf: dict[int, int]) -> str:
        if not nf:
            return "1"
        return "*".join(
            "g%d" % (g + 1) if nf[g] == 1 else "g%d^%d" % (g + 1, nf[g])
            for g in sorted(nf)
        )
