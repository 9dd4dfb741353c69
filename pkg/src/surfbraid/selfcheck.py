"""Self-check suites: relation invariance, exact oracles and Lie congruences.

Every suite returns a :class:`SuiteResult`; ``run_all`` collects them for the
``selfcheck`` command and for the test-suite.
"""

from __future__ import annotations

import contextlib
import itertools
import random
from dataclasses import dataclass, field

from . import combing as cb
from . import freegroup as fg
from . import surface_group as sgm
from .braid_words import (A, S, BraidWord, Letter, X, artin_image, compose_perms, disc_letters,
                          format_word, invert_letters, permutation_braid, relation_table,
                          resolve_singular, t, transposition)
from .coset_split import k_part
from .diagram_algebra import graded_part, u_linear, u_of


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, good: bool, detail: str) -> None:
        self.total += 1
        if not good:
            self.failures.append(detail)

    def line(self) -> str:
        return "%-14s %s  %d/%d" % (self.name, "PASS" if self.ok else "FAIL", self.passed, self.total)


# -- word generators ---------------------------------------------------------------

def random_null_word(grp: sgm.SurfaceGroup, max_len: int, rng: random.Random) -> tuple:
    """A random word of length <= max_len that is trivial in the surface group."""
    ngen = 4 * grp.g
    while True:
        if rng.random() < 0.5:
            u = tuple(rng.randrange(ngen) for _ in range(rng.randrange(max_len // 2 + 1)))
            w = u + fg.invert_word(grp.normal_form(u))
        else:
            # conjugated relator rotations, freely interleaved
            w: tuple = ()
            while len(w) < max_len:
                rel = grp.relator if rng.random() < 0.5 else fg.invert_word(grp.relator)
                s = rng.randrange(len(rel))
                piece = rel[s:] + rel[:s]
                c = tuple(rng.randrange(ngen) for _ in range(rng.randrange(3)))
                i = rng.randrange(len(w) + 1)
                w = w[:i] + c + piece + fg.invert_word(c) + w[i:]
        if 0 < len(w) <= max_len:
            return w


def random_braid_letters(n: int, g: int, length: int, rng: random.Random,
                         singular: int = 0) -> tuple:
    pool = [A(i, r, e) for i in range(1, n + 1) for r in range(1, 2 * g + 1) for e in (1, -1)]
    pool += [S(k, e) for k in range(1, n) for e in (1, -1)]
    word = [rng.choice(pool) for _ in range(length)]
    for _ in range(singular):
        word.insert(rng.randrange(len(word) + 1), X(rng.randrange(1, n)))
    return tuple(word)


def f_generator_word(i: int, j: int, label: tuple) -> tuple:
    """Braid letters of label~ t_{i,j} label~^-1, the label read on strand i."""
    conj = tuple(A(i, sgm.letter_index(c), sgm.letter_sign(c)) for c in label)
    return conj + (t(min(i, j), max(i, j)),) + invert_letters(conj)


def commutator(x: tuple, y: tuple) -> tuple:
    return x + y + invert_letters(x) + invert_letters(y)


# -- suites ---------------------------------------------------------------------------

def check_relations(n: int, g: int, N: int, verify: bool = False) -> SuiteResult:
    res = SuiteResult("relations")
    for rel in relation_table(n, g):
        lhs = u_of(BraidWord(rel.lhs, n, g), N, verify)
        rhs = u_of(BraidWord(rel.rhs, n, g), N, verify)
        res.record(lhs == rhs, rel.name)
    return res


def check_disc_rules(n: int) -> SuiteResult:
    """Every sigma/t rewrite of the purification agrees with the Artin action."""
    res = SuiteResult("disc-oracle")
    for k in range(1, n):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            for sign in (1, -1):
                x = t(i, j, sign)
                lhs = (S(k),) + (x,) + (S(k, -1),)
                rhs = cb.sigma_conj(k, x)
                good = artin_image(disc_letters(lhs), n) == artin_image(disc_letters(rhs), n)
                res.record(good, "sigma_%d %s" % (k, format_word((x,))))
    for p in itertools.permutations(range(1, n + 1)):
        for k in range(1, n):
            for sign in (1, -1):
                q = compose_perms(p, transposition(n, k))
                beta_p = tuple(S(c) for c in permutation_braid(p))
                beta_q = tuple(S(c) for c in permutation_braid(q))
                lhs = beta_p + (S(k, sign),) + invert_letters(beta_q)
                rhs = cb.crossing_piece(p, k, sign)
                good = artin_image(disc_letters(lhs), n) == artin_image(disc_letters(rhs), n)
                res.record(good, "crossing %s k=%d sign=%+d" % (p, k, sign))
    return res


def check_filling(g: int, count: int, max_len: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("filling")
    rng = random.Random(seed)
    grp = sgm.surface_group(g)
    for _ in range(count):
        w = random_null_word(grp, max_len, rng)
        faces = grp.fill_null_word(w)
        expanded = fg.reduce_word(sum((grp.expand_face_factor(f) for f in faces), ()))
        res.record(expanded == fg.reduce_word(w), sgm.format_word(w))
    return res


def check_conjugation_rules(n: int, g: int) -> SuiteResult:
    """Derive every strand-1 conjugation automorphism and its inverse."""
    res = SuiteResult("conjugation")
    for m in range(2, n + 1):
        for closed in (True, False):
            rules = cb.ConjugationRules(m, g, closed=closed)
            letters = [Letter("a", i, r, e) for i in range(2, m + 1)
                       for r in range(1, 2 * g + 1) for e in (1, -1)]
            letters += [Letter(kind, i, j, e) for kind in "tT" for i in range(2, m + 1)
                        for j in range(i + 1, m + 1) for e in (1, -1)]
            for x in letters:
                try:
                    forward = rules.images(x)
                    back = rules.images(x.inverse())
                    good = all(fg.substitute(fg.substitute((2 * k,), forward), back) == (2 * k,)
                               for k in rules.gens)
                except cb.CombingError:
                    good = False
                res.record(good, "m=%d %s %s" % (m, "closed" if closed else "open", format_word((x,))))
    return res


def check_free_basis(n: int, g: int, count: int, seed: int = 0) -> SuiteResult:
    """Decompose random kernel elements with the expansion oracle switched on."""
    res = SuiteResult("free-basis")
    rng = random.Random(seed)
    for _ in range(count):
        w = BraidWord(random_braid_letters(n, g, rng.randrange(1, 7), rng), n, g)
        try:
            cb.decompose(k_part(w), verify=True)
            good = True
        except cb.CombingError:
            good = False
        res.record(good, format_word(w))
    return res


def _vanishes_below(x, d: int) -> bool:
    return all(graded_part(x, e).is_zero() for e in range(d))


def check_degree_law(n: int, g: int, N: int, count: int, seed: int = 0) -> SuiteResult:
    res = SuiteResult("degree-law")
    rng = random.Random(seed)
    for _ in range(count):
        d = rng.randrange(1, min(N, 3) + 1)
        w = BraidWord(random_braid_letters(n, g, rng.randrange(4), rng, singular=d), n, g)
        res.record(_vanishes_below(u_linear(resolve_singular(w), N, g), d), format_word(w))
    return res


def check_congruences(n: int, g: int, labels=None) -> SuiteResult:
    """(R1) in degree 1, (R3) and, with four strands, (R2) in degrees 1 and 2."""
    res = SuiteResult("congruences")
    grp = sgm.surface_group(g)
    labels = labels or [(), (0,), (1,), (2,)]
    for i, j in itertools.permutations(range(1, n + 1), 2):
        for gam in labels:
            a = u_of(BraidWord(f_generator_word(i, j, gam), n, g), 1)
            b = u_of(BraidWord(f_generator_word(j, i, grp.inv(gam)), n, g), 1)
            res.record(graded_part(a, 1) == graded_part(b, 1), "R1 %d,%d %s" % (i, j, gam))
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        for gam, dlt in itertools.product(labels, repeat=2):
            gd = grp.mul(gam, dlt)
            w = commutator(f_generator_word(i, j, gam), f_generator_word(j, k, dlt))
            w += invert_letters(commutator(f_generator_word(i, k, gd), f_generator_word(i, j, gam)))
            u = u_of(BraidWord(w, n, g), 2)
            res.record(not any(m for m, _ in u.terms), "R3 %d,%d,%d %s %s" % (i, j, k, gam, dlt))
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        for gam, dlt in itertools.product(labels[:2], repeat=2):
            w = commutator(f_generator_word(i, j, gam), f_generator_word(k, l, dlt))
            u = u_of(BraidWord(w, n, g), 2)
            res.record(not any(m for m, _ in u.terms), "R2 %d,%d,%d,%d %s %s" % (i, j, k, l, gam, dlt))
    return res


# -- negative control ---------------------------------------------------------------

def corrupt_rule(x: Letter, images: dict) -> dict:
    """Twist conjugation by a_{k,1} with an extra inner automorphism."""
    if x.kind != "a" or x.j != 1 or x.sign < 0:
        return images
    twist = (0,)
    return {k: fg.reduce_word(twist + w + fg.invert_word(twist)) for k, w in images.items()}


@contextlib.contextmanager
def corrupted_rules(n: int, g: int):
    """Temporarily replace the shared level-1 rules with a sabotaged copy."""
    key = (n, g, True)
    saved = cb._RULES.get(key)
    cb._RULES[key] = cb.ConjugationRules(n, g, sabotage=corrupt_rule)
    try:
        yield
    finally:
        if saved is None:
            cb._RULES.pop(key, None)
        else:
            cb._RULES[key] = saved


def run_all(n: int, g: int, N: int, verify: bool = False, quick: bool = False) -> list:
    count = 50 if quick else 200
    results = [
        check_relations(n, g, N, verify),
        check_disc_rules(n),
        check_filling(g, count, 24 if g == 1 else 16),
        check_conjugation_rules(n, g),
        check_free_basis(n, g, count // 4),
        check_degree_law(n, g, N, count // 4),
    ]
    if n >= 2:
        results.append(check_congruences(n, g))
    return results
