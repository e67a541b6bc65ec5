"""Permutation oracle for Grigorchuk quotients on a finite binary tree.

Everything here is independent of the package: permutations of the
2**depth leaves are built straight from the wreath recursion, a
stabilizer chain provides orders and membership, and lower central
series terms come from normal closures of commutators.  Layer
invariants produced by this module from first principles are frozen as
fixtures and compared against the package's collected presentations.

Run tests/make_fixtures.py to regenerate the fixture file.
"""

from __future__ import annotations


def identity(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def mul(p, q):
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image] = i
    return tuple(out)


def commutator(x, y):
    return mul(mul(inv(x), inv(y)), mul(x, y))


def grigorchuk_generators(depth: int) -> dict[str, tuple[int, ...]]:
    """The four standard generators acting on the 2**depth leaves.

    Leaves are indexed by bit strings read top bit first.  The
    generator a swaps the two halves of the tree, and the others act
    by the wreath recursion b = (a, c), c = (a, d), d = (1, b).
    """
    a = b = c = d = (0,)
    for level in range(1, depth + 1):
        half = 1 << (level - 1)
        size = half << 1
        a2 = tuple((i + half) % size for i in range(size))
        b2 = a[:half] + tuple(half + c[i] for i in range(half))
        c2 = a[:half] + tuple(half + d[i] for i in range(half))
        d2 = tuple(range(half)) + tuple(half + b[i] for i in range(half))
        a, b, c, d = a2, b2, c2, d2
    return {"a": a, "b": b, "c": c, "d": d}


class Chain:
    """Stabilizer chain built by deterministic Schreier-Sims.

    Strong generators discovered while sifting Schreier generators at
    level i are registered at every level up to the one where sifting
    stopped, and each (orbit point, generator) pair is processed once;
    transversal entries are never replaced, so processed pairs stay
    processed when orbits grow.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.ident = identity(degree)
        self.base: list[int] = []
        self.gens: list[list[tuple[int, ...]]] = []
        self.orbit: list[dict[int, tuple[int, ...]]] = []
        self.orbit_inv: list[dict[int, tuple[int, ...]]] = []
        self.points: list[list[int]] = []
        self.done: list[set[tuple[int, int]]] = []

    def order(self) -> int:
        total = 1
        for pts in self.points:
            total *= len(pts)
        return total

    def strip(self, g, start: int = 0):
        for level in range(start, len(self.base)):
            image = g[self.base[level]]
            back = self.orbit_inv[level].get(image)
            if back is None:
                return g, level
            g = mul(g, back)
        return g, len(self.base)

    def contains(self, g) -> bool:
        h, _ = self.strip(g)
        return h == self.ident

    def generating_set(self):
        return list(self.gens[0]) if self.base else []

    def add_generator(self, g) -> bool:
        """Enlarge the group by g; returns whether it grew."""
        h, level = self.strip(g)
        if h == self.ident:
            return False
        self._register(h, 0, level)
        return True

    # ------------------------------------------------------------ internals

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.orbit.append({point: self.ident})
        self.orbit_inv.append({point: self.ident})
        self.points.append([point])
        self.done.append(set())

    def _register(self, h, top: int, stop: int) -> None:
        # h fixes base[:stop]; it becomes a generator of levels top..stop.
        if stop == len(self.base):
            moved = next(i for i in range(self.degree) if h[i] != i)
            self._add_level(moved)
        for level in range(top, stop + 1):
            self.gens[level].append(h)
        for level in range(stop, top - 1, -1):
            self._complete(level)

    def _extend_orbit(self, level: int) -> None:
        pts = self.points[level]
        orbit = self.orbit[level]
        orbit_inv = self.orbit_inv[level]
        gens = self.gens[level]
        i = 0
        while i < len(pts):
            p = pts[i]
            u = orbit[p]
            for s in gens:
                q = s[p]
                if q not in orbit:
                    t = mul(u, s)
                    orbit[q] = t
                    orbit_inv[q] = inv(t)
                    pts.append(q)
            i += 1

    def _complete(self, level: int) -> None:
        self._extend_orbit(level)
        pts = self.points[level]
        gens = self.gens[level]
        orbit = self.orbit[level]
        orbit_inv = self.orbit_inv[level]
        done = self.done[level]
        idx = 0
        while idx < len(pts):
            p = pts[idx]
            u = orbit[p]
            for gi in range(len(gens)):
                if (p, gi) in done:
                    continue
                done.add((p, gi))
                s = gens[gi]
                schreier = mul(mul(u, s), orbit_inv[s[p]])
                if schreier == self.ident:
                    continue
                h, stop = self.strip(schreier, level + 1)
                if h != self.ident:
                    self._register(h, level + 1, stop)
            idx += 1


def group_chain(gens) -> Chain:
    gens = list(gens)
    chain = Chain(len(gens[0]))
    for g in gens:
        chain.add_generator(g)
    return chain


def normal_closure(seeds, conjugators, degree: int) -> Chain:
    """Chain for the normal closure of the seeds under the conjugators."""
    chain = Chain(degree)
    queue = list(seeds)
    while queue:
        g = queue.pop()
        if chain.add_generator(g):
            for x in conjugators:
                queue.append(mul(mul(inv(x), g), x))
    return chain


def lower_central_series(group_gens, length: int) -> list[Chain]:
    """Chains for the first `length` terms, whole group first."""
    group_gens = list(group_gens)
    degree = len(group_gens[0])
    series = [group_chain(group_gens)]
    while len(series) < length:
        seeds = [
            commutator(y, x)
            for y in series[-1].generating_set()
            for x in group_gens
        ]
        series.append(normal_closure(seeds, group_gens, degree))
    return series


def layer_exponents(series: list[Chain]) -> list[int]:
    """log2 of each layer size, asserting the layers are elementary.

    Each quotient term/next is abelian by construction; generated by
    involutions it is a power of Z_2, so a single integer per layer
    pins the isomorphism type.
    """
    out = []
    for upper, lower in zip(series, series[1:]):
        ratio = upper.order() // lower.order()
        k = ratio.bit_length() - 1
        if 1 << k != ratio:
            raise AssertionError("layer size %d is not a power of two" % ratio)
        for y in upper.generating_set():
            if not lower.contains(mul(y, y)):
                raise AssertionError("layer is not elementary abelian")
        out.append(k)
    return out
