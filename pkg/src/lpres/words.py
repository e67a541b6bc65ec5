"""Exact arithmetic in finitely generated free groups.

Words are kept freely reduced in run-length form: a tuple of
(generator index, exponent) pairs with nonzero exponents and no two
adjacent pairs sharing a generator.  Exponents are plain Python ints,
so iterated endomorphism images never overflow.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class Alphabet:
    """Ordered, immutable list of distinct generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError("unknown generator %r" % (name,)) from None

    def word(self, name: str) -> "Word":
        """Single-generator word, a convenience for building relators."""
        return Word(self, ((self.index(name), 1),))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return "Alphabet(%s)" % ", ".join(self.names)


def _reduce_runs(alphabet: Alphabet, runs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    n = len(alphabet)
    out: list[list[int]] = []
    for gen, exp in runs:
        if not 0 <= gen < n:
            raise ValueError("generator index %r out of range" % (gen,))
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


class Word:
    """A freely reduced word over an :class:`Alphabet`.

    The ``syllables`` attribute is the run-length normal form; the empty
    tuple is the identity.  Words are immutable and hashable.
    """

    __slots__ = ("alphabet", "syllables")

    def __init__(self, alphabet: Alphabet, runs: Iterable[tuple[int, int]] = ()):
        self.alphabet = alphabet
        self.syllables = _reduce_runs(alphabet, runs)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet)

    def is_identity(self) -> bool:
        return not self.syllables

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        """Word length counted in letters, not syllables."""
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("words over different alphabets")
        return Word(self.alphabet, self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word(self.alphabet)
        base = self if n > 0 else self.inverse()
        return Word(self.alphabet, base.syllables * abs(n))

    def conjugate(self, by: "Word") -> "Word":
        """self**by in the exponent convention w^v = v^-1 * w * v."""
        return by.inverse() * self * by

    def exponent_vector(self) -> tuple[int, ...]:
        vec = [0] * len(self.alphabet)
        for g, e in self.syllables:
            vec[g] += e
        return tuple(vec)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.syllables == other.syllables
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.syllables))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        names = self.alphabet.names
        parts = []
        for g, e in self.syllables:
            parts.append(names[g] if e == 1 else "%s^%d" % (names[g], e))
        return "*".join(parts)

    def __repr__(self) -> str:
        return "Word(%s)" % self


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 * v^-1 * u * v."""
    return u.inverse() * v.inverse() * u * v


def reduce(alphabet: Alphabet, letters: Iterable[tuple[int, int]]) -> Word:
    """Freely reduce a raw run sequence into a :class:`Word`."""
    return Word(alphabet, tuple(letters))


def exponent_vector(word: Word) -> tuple[int, ...]:
    return word.exponent_vector()


class FreeEndomorphism:
    """An endomorphism of the free group, given by generator images."""

    __slots__ = ("alphabet", "images")

    def __init__(self, alphabet: Alphabet, images: Sequence[Word]):
        images = tuple(images)
        if len(images) != len(alphabet):
            raise ValueError(
                "endomorphism needs an image for each of the %d generators" % len(alphabet)
            )
        for w in images:
            if w.alphabet != alphabet:
                raise ValueError("image word over a different alphabet")
        self.alphabet = alphabet
        self.images = images

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "FreeEndomorphism":
        return cls(alphabet, tuple(Word(alphabet, ((g, 1),)) for g in range(len(alphabet))))

    def is_identity(self) -> bool:
        return all(
            w.syllables == ((g, 1),) for g, w in enumerate(self.images)
        )

    def __call__(self, word: Word) -> Word:
        if word.alphabet != self.alphabet:
            raise ValueError("word over a different alphabet")
        runs: list[tuple[int, int]] = []
        for g, e in word.syllables:
            img = self.images[g] if e > 0 else self.images[g].inverse()
            runs.extend(img.syllables * abs(e))
        return Word(self.alphabet, runs)

    def compose(self, other: "FreeEndomorphism") -> "FreeEndomorphism":
        """Left-to-right composition: w^(self.compose(other)) = (w^self)^other.

        The monoid of endomorphisms acts on the right of words, so the
        product phi*psi applies phi first and psi second.
        """
        if other.alphabet != self.alphabet:
            raise ValueError("endomorphisms over different alphabets")
        return FreeEndomorphism(self.alphabet, tuple(other(w) for w in self.images))

    def matrix(self) -> list[list[int]]:
        """Induced matrix on the abelianization; row g is images[g]'s exponent vector."""
        return [list(w.exponent_vector()) for w in self.images]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FreeEndomorphism)
            and self.alphabet == other.alphabet
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.images))

    def __repr__(self) -> str:
        body = ", ".join(
            "%s -> %s" % (self.alphabet.names[g], w) for g, w in enumerate(self.images)
        )
        return "FreeEndomorphism(%s)" % body


def apply_endomorphism(phi: FreeEndomorphism, word: Word) -> Word:
    return phi(word)


def compose(phi: FreeEndomorphism, psi: FreeEndomorphism) -> FreeEndomorphism:
    """Left-to-right: apply phi first, then psi.  See FreeEndomorphism.compose."""
    return phi.compose(psi)
