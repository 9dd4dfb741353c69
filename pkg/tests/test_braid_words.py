import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfbraid.braid_words import (A, S, BraidWord, IndexRangeError, WordSyntaxError, X, artin_image,
                                   compose_perms, concat, format_word, identity_perm, invert_word,
                                   parse_word, permutation_braid, permutation_of, relation_table,
                                   resolve_singular, syn_reduce, t)
from surfbraid.coset_split import phi


def braid_letters(n, g, singular=False):
    pool = [A(i, r, e) for i in range(1, n + 1) for r in range(1, 2 * g + 1) for e in (1, -1)]
    pool += [S(k, e) for k in range(1, n) for e in (1, -1)]
    if singular:
        pool += [X(k) for k in range(1, n)]
    return st.lists(st.sampled_from(pool), max_size=10).map(tuple)


# -- syntax ---------------------------------------------------------------------

def test_parse_examples():
    assert parse_word("s[1] s[1]", 2, 1).letters == (S(1), S(1))
    assert parse_word("a[1,1] s[2]^-1", 3, 1).letters == (A(1, 1), S(2, -1))
    w = parse_word("x[1]", 2, 1)
    assert w.letters == (X(1),) and w.singular
    assert parse_word("", 2, 1).letters == ()


@pytest.mark.parametrize("text,err", [
    ("q[1]", WordSyntaxError),
    ("s[1,2]", WordSyntaxError),
    ("a[1]", WordSyntaxError),
    ("x[1]^-1", WordSyntaxError),
    ("s[2]", IndexRangeError),
    ("a[3,1]", IndexRangeError),
    ("a[1,3]", IndexRangeError),
    ("t[2,1]", IndexRangeError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_word(text, 2, 1)


@settings(max_examples=100)
@given(braid_letters(3, 2, singular=True))
def test_format_parse_round_trip(letters):
    w = BraidWord(letters, 3, 2)
    assert parse_word(format_word(w), 3, 2) == w


# -- word operations ---------------------------------------------------------------

def test_word_operation_examples():
    w = BraidWord((A(1, 1), S(1)), 2, 1)
    assert invert_word(w).letters == (S(1, -1), A(1, 1, -1))
    assert syn_reduce(BraidWord((S(1), S(1, -1)), 2, 1)).letters == ()
    assert syn_reduce(BraidWord((S(1), S(2), S(2, -1), S(1)), 3, 1)).letters == (S(1), S(1))
    with pytest.raises(ValueError):
        concat(w, BraidWord((), 3, 1))


def test_resolve_examples():
    assert [(c, x.letters) for c, x in resolve_singular(BraidWord((X(1),), 2, 1))] == \
        [(1, (S(1),)), (-1, (S(1, -1),))]
    w = BraidWord((A(1, 1),), 2, 1)
    assert resolve_singular(w) == [(1, w)]
    coeffs = [c for c, _ in resolve_singular(BraidWord((X(1), X(1)), 2, 1))]
    assert coeffs == [1, -1, -1, 1]


@settings(max_examples=100)
@given(braid_letters(3, 1, singular=True))
def test_resolve_size_and_coefficients(letters):
    w = BraidWord(letters, 3, 1)
    d = sum(1 for x in letters if x.kind == "x")
    out = resolve_singular(w)
    assert len(out) == 2 ** d
    assert sum(c for c, _ in out) == (1 if d == 0 else 0)
    assert all(not x.singular for _, x in out)


# -- permutations ------------------------------------------------------------------

def test_permutation_examples():
    assert permutation_of(BraidWord((S(1),), 2, 1)) == (2, 1)
    assert permutation_of(BraidWord((S(1), S(1)), 2, 1)) == (1, 2)
    # end positions: strand 1 ends at 3, strand 2 at 1, strand 3 at 2
    assert permutation_of(BraidWord((A(1, 1), S(1), S(2)), 3, 1)) == (3, 1, 2)


@settings(max_examples=100)
@given(braid_letters(4, 1), braid_letters(4, 1))
def test_permutation_is_multiplicative(u, v):
    w1, w2 = BraidWord(u, 4, 1), BraidWord(v, 4, 1)
    assert permutation_of(w1 + w2) == compose_perms(permutation_of(w1), permutation_of(w2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_permutation_braid_realizes_every_permutation(n):
    for p in itertools.permutations(range(1, n + 1)):
        crossings = permutation_braid(p)
        assert permutation_of(BraidWord(tuple(S(k) for k in crossings), n, 1)) == p
        assert len(crossings) == sum(1 for a, b in itertools.combinations(p, 2) if a > b)
    assert permutation_braid(identity_perm(n)) == ()


# -- Artin oracle --------------------------------------------------------------------

def test_artin_examples():
    x1, x1i, x2 = 0, 1, 2
    assert artin_image((S(1),), 2) == ((x1, x2, x1i), (x1,))
    assert artin_image((S(1), S(1, -1)), 2) == ((x1,), (x2,))
    assert artin_image((S(1), S(2), S(1)), 3) == artin_image((S(2), S(1), S(2)), 3)
    assert artin_image((S(1), S(1)), 2) == artin_image((t(1, 2),), 2)


@pytest.mark.parametrize("n,g", [(2, 1), (3, 1), (3, 2)])
def test_disc_relations_hold_under_artin(n, g):
    checked = 0
    for rel in relation_table(n, g):
        if all(x.kind in "stT" for x in rel.lhs + rel.rhs):
            assert artin_image(rel.lhs, n) == artin_image(rel.rhs, n), rel.name
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("n,g", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_relation_sides_agree_under_phi(n, g):
    for rel in relation_table(n, g):
        assert phi(BraidWord(rel.lhs, n, g)) == phi(BraidWord(rel.rhs, n, g)), rel.name


def test_relation_table_contains_listed_identities():
    table = relation_table(3, 1)
    pairs = {(r.lhs, r.rhs) for r in table}
    assert ((S(1), A(3, 1), S(1, -1)), (A(3, 1),)) in pairs
    assert ((S(1), A(1, 1), S(1, -1)), (t(1, 2), A(2, 1))) in pairs
