import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfbraid import combing as cb
from surfbraid.braid_words import A, S, BraidWord, artin_image, syn_reduce, t, transposition
from surfbraid.coset_split import HElem, h_identity, h_inv, h_mul, k_part, phi, section

W1, W2 = (0,), (2,)


def words(n, g):
    pool = [A(i, r, e) for i in range(1, n + 1) for r in range(1, 2 * g + 1) for e in (1, -1)]
    pool += [S(k, e) for k in range(1, n) for e in (1, -1)]
    return st.lists(st.sampled_from(pool), max_size=10).map(lambda xs: BraidWord(tuple(xs), n, g))


def test_phi_examples():
    assert phi(BraidWord((A(1, 1),), 2, 1)) == HElem((W1, ()), (1, 2))
    assert phi(BraidWord((S(1), S(1)), 2, 1)) == h_identity(2)
    assert phi(BraidWord((A(1, 1), t(1, 2), A(1, 1, -1)), 2, 1)) == h_identity(2)


def test_h_mul_examples():
    x = HElem((W1, ()), (1, 2))
    assert h_mul(x, h_identity(2), 1) == x
    assert h_mul(x, HElem(((), W2), (1, 2)), 1) == HElem((W1, W2), (1, 2))
    # the strand starting at 1 sits at position 2 when the second factor acts
    swapped = HElem((W1, ()), transposition(2, 1))
    expected = phi(BraidWord((A(1, 1), S(1), A(1, 1)), 2, 1))
    assert h_mul(swapped, x, 1) == expected == HElem((W1, W1), (2, 1))


@pytest.mark.parametrize("n,g", [(2, 1), (3, 2)])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_phi_is_a_homomorphism(n, g, data):
    u, v = data.draw(words(n, g)), data.draw(words(n, g))
    pu, pv = phi(u), phi(v)
    assert phi(u + v) == h_mul(pu, pv, g)
    assert h_mul(pu, h_inv(pu, g), g) == h_identity(n)
    assert h_mul(h_inv(pu, g), pu, g) == h_identity(n)


def test_section_examples():
    assert section(h_identity(2), 1).letters == ()
    assert section(HElem((W1, ()), (1, 2)), 1).letters == (A(1, 1),)
    assert section(HElem(((), ()), (2, 1)), 1).letters == (S(1),)


@pytest.mark.parametrize("n,g", [(3, 1), (3, 2)])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_section_splits_phi(n, g, data):
    h = phi(data.draw(words(n, g)))
    assert phi(section(h, g)) == h


def test_k_part_examples():
    assert syn_reduce(k_part(BraidWord((S(1),), 2, 1))).letters == ()
    assert syn_reduce(k_part(BraidWord((A(1, 1),), 2, 1))).letters == ()
    k = syn_reduce(k_part(BraidWord((S(1, -1),), 2, 1)))
    assert k.letters == (S(1, -1), S(1, -1))
    assert artin_image(cb.to_pure(k), 2) == artin_image((t(1, 2, -1),), 2)


@settings(max_examples=80, deadline=None)
@given(words(3, 1))
def test_k_part_lies_in_kernel(w):
    assert phi(k_part(w)) == h_identity(3)
