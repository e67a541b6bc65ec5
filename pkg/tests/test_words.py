"""Free-group word arithmetic and endomorphism application."""

import random

import pytest

from lpres.words import (
    Alphabet,
    FreeEndomorphism,
    Word,
    apply_endomorphism,
    commutator,
    compose,
    exponent_vector,
)


@pytest.fixture
def abcd():
    return Alphabet(["a", "b", "c", "d"])


@pytest.fixture
def sigma(abcd):
    a, b, c, d = (abcd.word(x) for x in "abcd")
    return FreeEndomorphism(abcd, [c.conjugate(a), d, b, c])


def random_word(rng, alphabet, max_syllables=12, max_exp=4):
    runs = []
    for _ in range(rng.randrange(max_syllables + 1)):
        g = rng.randrange(len(alphabet))
        e = rng.choice([k for k in range(-max_exp, max_exp + 1) if k != 0])
        runs.append((g, e))
    return Word(alphabet, runs)


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet(["a", "b", "a"])
    with pytest.raises(ValueError):
        Alphabet([])


def test_alphabet_unknown_name(abcd):
    with pytest.raises(ValueError, match="unknown generator"):
        abcd.index("x")


def test_free_reduction_cancels(abcd):
    w = Word(abcd, [(0, 2), (0, -2), (1, 1), (2, 3), (2, -3), (1, -1)])
    assert w.is_identity()
    w = Word(abcd, [(0, 1), (1, 2), (1, -1), (1, -1), (0, 1)])
    assert w.syllables == ((0, 2),)


def test_mul_and_inverse(abcd):
    a, b = abcd.word("a"), abcd.word("b")
    w = a * b * a.inverse()
    assert w.syllables == ((0, 1), (1, 1), (0, -1))
    assert (w * w.inverse()).is_identity()
    assert w.inverse().inverse() == w


def test_pow(abcd):
    a, b = abcd.word("a"), abcd.word("b")
    w = a * b
    assert w**0 == Word.identity(abcd)
    assert w**3 == w * w * w
    assert w**-2 == (w * w).inverse()


def test_commutator_identity_when_equal(abcd):
    a = abcd.word("a")
    assert commutator(a, a).is_identity()
    assert commutator(a, a**3).is_identity()


def test_conjugation_convention(abcd):
    a, c = abcd.word("a"), abcd.word("c")
    # c^a = a^-1 c a
    assert c.conjugate(a).syllables == ((0, -1), (2, 1), (0, 1))


def test_sigma_images(abcd, sigma):
    a, b, c, d = (abcd.word(x) for x in "abcd")
    assert sigma(a) == a.inverse() * c * a
    assert sigma(b) == d
    assert sigma(c) == b
    assert sigma(d) == c
    # sigma(a*d) = a^-1 c a c
    assert sigma(a * d) == a.inverse() * c * a * c


def test_sigma_matrix(sigma):
    assert sigma.matrix() == [
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
    ]


def test_sigma_exponent_vector(abcd, sigma):
    a, b, c, d = (abcd.word(x) for x in "abcd")
    w = sigma(a * b * c * d)
    assert exponent_vector(w) == (0, 1, 2, 1)


def test_compose_is_left_to_right(abcd, sigma):
    c, d = abcd.word("c"), abcd.word("d")
    sig2 = compose(sigma, sigma)
    # c -> b -> d under two applications
    assert sig2(c) == d
    assert sig2(c) == sigma(sigma(c))


def test_identity_endomorphism(abcd):
    ident = FreeEndomorphism.identity(abcd)
    assert ident.is_identity()
    w = abcd.word("a") * abcd.word("d") ** -2
    assert ident(w) == w
    assert compose(ident, ident).is_identity()


def test_endomorphism_validates_length(abcd):
    with pytest.raises(ValueError):
        FreeEndomorphism(abcd, [abcd.word("a")])


def test_reduce_idempotent_random(abcd):
    rng = random.Random(20240901)
    for _ in range(200):
        w = random_word(rng, abcd)
        again = Word(abcd, w.syllables)
        assert again.syllables == w.syllables
        # no adjacent equal generators, no zero exponents
        for (g1, e1), (g2, _) in zip(w.syllables, w.syllables[1:]):
            assert g1 != g2
            assert e1 != 0


def test_exponent_vector_homomorphism_random(abcd):
    rng = random.Random(20240902)
    for _ in range(200):
        u = random_word(rng, abcd)
        v = random_word(rng, abcd)
        uv = tuple(x + y for x, y in zip(u.exponent_vector(), v.exponent_vector()))
        assert (u * v).exponent_vector() == uv
        assert u.inverse().exponent_vector() == tuple(-x for x in u.exponent_vector())


def test_matrix_tracks_abelianization_random(abcd):
    rng = random.Random(20240903)
    for _ in range(50):
        images = [random_word(rng, abcd, max_syllables=5, max_exp=3) for _ in range(4)]
        phi = FreeEndomorphism(abcd, images)
        mat = phi.matrix()
        for _ in range(5):
            w = random_word(rng, abcd)
            vec = w.exponent_vector()
            expected = tuple(
                sum(vec[g] * mat[g][j] for g in range(4)) for j in range(4)
            )
            assert apply_endomorphism(phi, w).exponent_vector() == expected


def test_compose_associative_random(abcd):
    rng = random.Random(20240904)
    for _ in range(30):
        endos = []
        for _ in range(3):
            images = [random_word(rng, abcd, max_syllables=4, max_exp=2) for _ in range(4)]
            endos.append(FreeEndomorphism(abcd, images))
        f, g, h = endos
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        w = random_word(rng, abcd)
        assert compose(f, g)(w) == g(f(w))
