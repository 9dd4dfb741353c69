"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the lines are repeated in the
terminal summary.
"""

import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from surfbraid import cli
from surfbraid import surface_group as sgm
from surfbraid.braid_words import BraidWord, X, invert_letters, resolve_singular
from surfbraid.coset_split import h_identity
from surfbraid.combing import FreeGenLetter
from surfbraid.diagram_algebra import (AElem, UElem, a_mul, chord, graded_part, is_ordered,
                                       magnus_v, sd_mul, straighten, u_linear, u_of)
from surfbraid.selfcheck import (check_congruences, check_disc_rules, check_filling,
                                 check_relations, f_generator_word, random_braid_letters)


def report(number: int, title: str, passed: int, total: int, seconds: float) -> None:
    status = "PASS" if passed == total else "FAIL"
    line = "criterion %d: %s  %-34s %d/%d  (%.1fs)" % (number, status, title, passed, total, seconds)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed == total, line


class Tally:
    def __init__(self):
        self.passed = self.total = 0
        self.failures: list = []
        self.start = time.time()

    def add(self, good: bool, detail="") -> None:
        self.total += 1
        self.passed += bool(good)
        if not good:
            self.failures.append(detail)

    def absorb(self, suite) -> None:
        self.total += suite.total
        self.passed += suite.passed
        self.failures.extend(suite.failures)

    @property
    def seconds(self) -> float:
        return time.time() - self.start


def test_criterion_1_relation_invariance():
    tally = Tally()
    for n, g in itertools.product((1, 2, 3), (1, 2)):
        tally.absorb(check_relations(n, g, 3))
    report(1, "relation invariance (N=3)", tally.passed, tally.total, tally.seconds)
    assert tally.seconds < 120


def test_criterion_2_disc_oracle():
    tally = Tally()
    for n in (2, 3, 4):
        tally.absorb(check_disc_rules(n))
    report(2, "disc rewrites vs Artin action", tally.passed, tally.total, tally.seconds)


def test_criterion_3_filling_oracle():
    tally = Tally()
    tally.absorb(check_filling(1, 500, 24, seed=11))
    tally.absorb(check_filling(2, 500, 16, seed=12))
    report(3, "filling expansion oracle", tally.passed, tally.total, tally.seconds)


def test_criterion_4_degree_law():
    tally = Tally()
    rng = random.Random(4)
    for n, g, d in itertools.product((2, 3), (1, 2), (1, 2, 3)):
        for _ in range(6):
            letters = random_braid_letters(n, g, rng.randrange(4), rng, singular=d)
            u = u_linear(resolve_singular(BraidWord(letters, n, g)), 3, g)
            tally.add(all(graded_part(u, e).is_zero() for e in range(d)), (n, g, letters))
    report(4, "degree law V_d", tally.passed, tally.total, tally.seconds)
    assert tally.seconds < 60


def test_criterion_5_basis_round_trip():
    n, g = 3, 2
    labels = [(), (0,), (1,), (2,)]
    chords = [(i, j, lab) for i, j in itertools.combinations(range(1, n + 1), 2) for lab in labels]
    monomials = [()] + [(c,) for c in chords]
    monomials += [m for m in itertools.product(chords, repeat=2) if is_ordered(m)]
    tally = Tally()
    for mono in monomials:
        letters = sum((f_generator_word(i, j, lab) for i, j, lab in mono), ())
        u = u_of(BraidWord(letters, n, g), 2)
        expected = UElem({(mono, h_identity(n)): 1}, 2, g)
        tally.add(graded_part(u, len(mono)) == expected, mono)
    report(5, "basis round trip gr v(chi(R)) = R", tally.passed, tally.total, tally.seconds)


def _lowest_part(x: UElem):
    degrees = x.degrees()
    return (degrees[0], graded_part(x, degrees[0])) if degrees else (None, x)


def test_criterion_6_graded_multiplicativity():
    N = 3
    rng = random.Random(6)
    tally = Tally()
    for _ in range(100):
        n, g = rng.choice([(2, 1), (3, 1), (2, 2), (3, 2)])
        words = [BraidWord(random_braid_letters(n, g, rng.randrange(4), rng, singular=rng.randrange(3)), n, g)
                 for _ in range(2)]
        x, y = (u_linear(resolve_singular(w), N, g) for w in words)
        xy = u_linear(resolve_singular(words[0] + words[1]), N, g)
        (d, lx), (e, ly) = _lowest_part(x), _lowest_part(y)
        if d is None or e is None:
            tally.add(xy.is_zero(), words)
            continue
        tally.add(graded_part(xy, d + e) == sd_mul(lx, ly), words)
    report(6, "graded multiplicativity", tally.passed, tally.total, tally.seconds)


def test_criterion_7_lie_congruences():
    tally = Tally()
    for g in (1, 2):
        tally.absorb(check_congruences(3, g))
    # (R2) needs four distinct strands
    tally.absorb(check_congruences(4, 1, labels=[(), (0,)]))
    report(7, "Lie congruences R1/R2/R3", tally.passed, tally.total, tally.seconds)


def test_criterion_8_separation_demos():
    config = cli.RunConfig(n=2, g=1, N=1)
    cases = [
        ("t[1,2]", ""),
        ("a[1,1] t[1,2] a[1,1]^-1", "t[1,2]"),
        ("s[1]", "s[1]^-1"),
    ]
    tally = Tally()
    for w1, w2 in cases:
        code, text = cli.cmd_compare(w1, w2, config)
        tally.add(code == cli.EXIT_OK and text == "distinguished at degree 1", (w1, w2, text))
    code, text = cli.cmd_compare("s[1] a[1,2]", "s[1] a[1,2]", cli.RunConfig(n=2, g=1, N=3))
    tally.add(code == cli.EXIT_NEGATIVE, text)
    report(8, "separation demos", tally.passed, tally.total, tally.seconds)


def _random_free_word(rng, n=4, g=2, radius=4):
    grp = sgm.surface_group(g)
    word = []
    for _ in range(rng.randrange(1, 7)):
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        label = grp.normal_form(tuple(rng.randrange(4 * g) for _ in range(rng.randrange(radius + 1))))
        word.append(FreeGenLetter(i, j, label, rng.choice((1, -1))))
    return word


def test_criterion_9_magnus_inverse():
    N, g = 3, 2
    rng = random.Random(9)
    tally = Tally()
    for _ in range(200):
        w = _random_free_word(rng)
        inverse = [x.inverse() for x in reversed(w)]
        tally.add(magnus_v(w + inverse, N, g) == AElem.one(N, g), w)
    report(9, "Magnus w.w^-1 = 1", tally.passed, tally.total, tally.seconds)


def _random_monomial(rng, n, g, degree):
    grp = sgm.surface_group(g)
    out = []
    for _ in range(degree):
        i, j = rng.sample(range(1, n + 1), 2)
        label = grp.normal_form(tuple(rng.randrange(4 * g) for _ in range(rng.randrange(3))))
        out.append(chord(i, j, label, g))
    return tuple(out)


def test_criterion_10_straightening():
    N, n, g = 4, 4, 2
    rng = random.Random(10)
    tally = Tally()
    for _ in range(200):
        mono = _random_monomial(rng, n, g, rng.randrange(5))
        canonical = straighten(mono, N, g)
        good = all(is_ordered(m) for m in canonical)
        good &= all(straighten(mono, N, g, random.Random(rng.random())) == canonical for _ in range(3))
        tally.add(good, mono)
    for _ in range(200):
        x, y, z = (AElem.from_chords(_random_monomial(rng, n, g, rng.randrange(3)), N, g) for _ in range(3))
        tally.add(a_mul(a_mul(x, y), z) == a_mul(x, a_mul(y, z)), (x, y, z))
    report(10, "straightening confluence/assoc.", tally.passed, tally.total, tally.seconds)
