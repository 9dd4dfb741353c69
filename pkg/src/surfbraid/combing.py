"""Combing kernel elements into the iterated free-group normal form.

A braid with trivial image in H_n is first purified into a word over the
pure generators a_{i,r} and t_{i,j}.  Strands are then peeled one at a time:
the letters on the first remaining strand are pushed to the left through the
rest of the word, which lands them in the free group

    F = < a_{1,1}, ..., a_{1,2g}, T_{1,2}, ..., T_{1,m-1} >

of the current m-strand level.  On the first level T_{1,m} equals the
surface relator; higher levels use the open model, where it is a generator
of its own and the gap is carried by :func:`boundary_defect`.  Finally the
free words are rewritten in the basis f_{l,j,gamma} using the prefix tree of
surface normal forms as Schreier transversal.

Strand-1 words are integer code tuples (see :mod:`freegroup`): a_{1,s} has
generator index s-1, so its codes coincide with the surface letter codes,
and T_{1,j} has generator index 2g + j - 2.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import NamedTuple

from . import freegroup as fg
from . import surface_group as sgm
from .braid_words import (A, BraidWord, Letter, S, compose_perms, expand_T, format_word as
                          format_braid, identity_perm, invert_letters, inversions,
                          permutation_braid, reduce_letters, t, transposition)
from .coset_split import h_identity, phi


class CombingError(Exception):
    pass


class NotInKernel(CombingError):
    pass


# -- purification ---------------------------------------------------------

def sigma_conj(k: int, x: Letter) -> tuple:
    """sigma_k x sigma_k^-1 for a pure letter x."""
    if x.sign < 0:
        return invert_letters(sigma_conj(k, x.inverse()))
    if x.kind == "a":
        i, r = x.i, x.j
        if k == i:
            return (A(i + 1, r), t(i, i + 1, -1)) if r % 2 == 0 else (t(i, i + 1), A(i + 1, r))
        if k == i - 1:
            return (t(i - 1, i), A(i - 1, r)) if r % 2 == 0 else (A(i - 1, r), t(i - 1, i, -1))
        return (x,)
    if x.kind == "t":
        i, j = x.i, x.j
        if k == i - 1:
            return (t(i - 1, j),)
        if k == i and j > i + 1:
            return (t(i, i + 1), t(i + 1, j), t(i, i + 1, -1))
        if k == j - 1 and j > i + 1:
            return (t(i, j - 1),)
        if k == j:
            return (t(i, j, -1), t(i, j + 1), t(i, j))
        return (x,)
    raise CombingError("cannot conjugate letter %r by a crossing" % (x,))


@lru_cache(maxsize=None)
def conj_by_perm_braid(p: tuple, x: Letter) -> tuple:
    """beta_p x beta_p^-1 where beta_p is the canonical permutation braid."""
    word = (x,)
    for k in reversed(permutation_braid(p)):
        out = []
        for y in word:
            out.extend(sigma_conj(k, y))
        word = reduce_letters(out)
    return word


@lru_cache(maxsize=None)
def crossing_piece(p: tuple, k: int, sign: int) -> tuple:
    """beta_p sigma_k^sign beta_q^-1 as a pure word, q = p followed by s_k."""
    q = compose_perms(p, transposition(len(p), k))
    if sign < 0:
        return invert_letters(crossing_piece(q, k, 1))
    if inversions(q) > inversions(p):
        return ()
    # beta_p = beta_q sigma_k, so the piece is beta_q sigma_k^2 beta_q^-1
    return conj_by_perm_braid(q, t(k, k + 1))


def to_pure(w: BraidWord) -> tuple:
    """Rewrite a braid word with trivial permutation over a_{i,r} and t_{i,j}.

    Uses the permutation braids as coset transversal: the word is cut into
    pieces beta_p x beta_q^-1 and each piece is rewritten by the crossing
    conjugation rules.
    """
    n = w.n
    p = identity_perm(n)
    out: list = []
    for x in w.letters:
        if x.kind == "x":
            raise CombingError("resolve singular letters before purifying")
        if x.kind == "s":
            out.extend(crossing_piece(p, x.i, x.sign))
            p = compose_perms(p, transposition(n, x.i))
        elif x.kind == "T":
            for y in expand_T(x.i, x.j, x.sign):
                out.extend(conj_by_perm_braid(p, y))
        else:
            out.extend(conj_by_perm_braid(p, x))
    if p != identity_perm(n):
        raise CombingError("word does not induce the trivial permutation")
    return reduce_letters(out)


# -- the level free group ---------------------------------------------------

def gen_a(s: int) -> int:
    return s - 1


def gen_T(m: int, g: int) -> int:
    return 2 * g + m - 2


def level_gens(m: int, g: int, closed: bool = True) -> range:
    return range(2 * g + m - (2 if closed else 1))


def T_word(j: int, m: int, g: int, closed: bool = True) -> tuple:
    """T_{1,j} in the level basis (T_{1,1} trivial).

    In the closed model T_{1,m} is the surface relator; in the open model it
    is a free generator of its own.
    """
    if j == 1:
        return ()
    if j == m and closed:
        return sgm.relator(g)
    return (2 * gen_T(j, g),)


def t_word(j: int, m: int, g: int, closed: bool = True) -> tuple:
    return fg.reduce_word(T_word(j, m, g, closed) + fg.invert_word(T_word(j - 1, m, g, closed)))


def strand1_word(letters, m: int, g: int, closed: bool = True) -> tuple:
    """Level-basis word for letters a_{1,s} / t_{1,j} / T_{1,j}."""
    out: list = []
    for x in letters:
        if x.kind == "a":
            w = (2 * gen_a(x.j),)
        elif x.kind == "t":
            w = t_word(x.j, m, g, closed)
        elif x.kind == "T":
            w = T_word(x.j, m, g, closed)
        else:
            raise CombingError("not a strand-1 letter: %r" % (x,))
        out.extend(fg.power(w, x.sign))
    return fg.reduce_word(out)


class ConjugationRules:
    """Automorphisms of the level free group induced by conjugation.

    ``images(x)`` returns the images of the generators under y -> x y x^-1
    for a pure letter x that avoids strand 1.  Rules are derived once per
    letter and validated: every automorphism is checked against the relator
    and its inverse is checked by composing both ways.

    With ``closed=False`` the rules act on the open model, where T_{1,m} is
    an independent generator.  That model is what a level above the first
    looks like inside the full braid group, since the lower strands puncture
    the surface.
    """

    def __init__(self, m: int, g: int, sabotage=None, closed: bool = True):
        self.m = m
        self.g = g
        self.closed = closed
        self.gens = level_gens(m, g, closed)
        self._cache: dict = {}
        self._lock = threading.Lock()
        self._sabotage = sabotage

    def _t(self, j):
        return t_word(j, self.m, self.g, self.closed)

    def _T(self, j):
        return T_word(j, self.m, self.g, self.closed)

    def _from_t_images(self, a_images, t_images):
        """Generator images from images of a_{1,s} and of t_{1,j}, j=2..m."""
        g = self.g
        images = {gen_a(s): a_images[s] for s in range(1, 2 * g + 1)}
        for j in range(2, self.m + (0 if self.closed else 1)):
            w: list = []
            for l in range(j, 1, -1):
                w.extend(t_images[l])
            images[gen_T(j, g)] = fg.reduce_word(w)
        if not self.closed:
            return images
        # the relator must map to the image of T_{1,m}
        top: list = []
        for l in range(self.m, 1, -1):
            top.extend(t_images[l])
        if fg.reduce_word(top) != fg.substitute(sgm.relator(g), images):
            raise CombingError("conjugation rule does not respect the surface relator")
        return images

    def _b_conj(self, k: int, r: int):
        """Conjugation by b_{k,r} (a_{k,r} for odd r, a_{k,r}^-1 for even r)."""
        g = self.g

        def b(s, e=1):
            return fg.power((2 * gen_a(s),), e if s % 2 else -e)

        a_images = {}
        for s in range(1, 2 * g + 1):
            if s == r:
                img = b(s)
            elif s < r:
                img = fg.invert_word(self._t(k)) + b(s)
            else:
                img = b(s) + b(r, -1) + self._t(k) + b(r)
            a_images[s] = fg.reduce_word(img if s % 2 else fg.invert_word(img))
        t_images = {}
        chain = ()
        for l in range(k - 1, 1, -1):
            chain += self._t(l)
        for j in range(2, self.m + 1):
            if j < k:
                img = self._t(j)
            elif j > k:
                img = fg.invert_word(self._t(k)) + self._t(j) + self._t(k)
            else:
                img = chain + b(r, -1) + self._t(k) + b(r) + fg.invert_word(chain)
            t_images[j] = fg.reduce_word(img)
        return self._from_t_images(a_images, t_images)

    def _T_conj(self, i: int, j: int):
        g = self.g
        images = {gen_a(s): (2 * gen_a(s),) for s in range(1, 2 * g + 1)}
        T = self._T
        for k in range(2, self.m + (0 if self.closed else 1)):
            if k < i or k >= j:
                img = T(k)
            else:
                inv = fg.invert_word
                img = T(i - 1) + inv(T(i)) + T(k) + inv(T(j)) + T(i) + inv(T(i - 1)) + T(j)
            images[gen_T(k, g)] = fg.reduce_word(img)
        if self.closed and fg.substitute(sgm.relator(g), images) != sgm.relator(g):
            raise CombingError("T conjugation does not fix the relator")
        return images

    def _checked_inverse(self, images):
        inverse = fg.invert_automorphism(images, self.gens)
        for k in self.gens:
            if fg.substitute(fg.substitute((2 * k,), inverse), images) != (2 * k,):
                raise CombingError("inverse conjugation failed the round trip")
            if fg.substitute(fg.substitute((2 * k,), images), inverse) != (2 * k,):
                raise CombingError("inverse conjugation failed the round trip")
        return inverse

    def images(self, x: Letter) -> dict:
        key = x
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if x.i < 2:
            raise CombingError("conjugating letter touches strand 1: %r" % (x,))
        if x.sign < 0:
            result = self._checked_inverse(self.images(x.inverse()))
        elif x.kind == "a":
            base = self._b_conj(x.i, x.j)
            result = base if x.j % 2 else self._checked_inverse(base)
        elif x.kind == "T":
            result = self._T_conj(x.i, x.j)
        elif x.kind == "t":
            upper = self.images(Letter("T", x.i, x.j, 1))
            if x.j == x.i + 1:
                result = upper
            else:
                lower_inv = self.images(Letter("T", x.i, x.j - 1, -1))
                result = fg.compose(upper, lower_inv, self.gens)
        else:
            raise CombingError("no conjugation rule for %r" % (x,))
        if self._sabotage is not None:
            result = self._sabotage(x, result)
        with self._lock:
            self._cache[key] = result
        return result

    def conj_strand1(self, x: Letter, yword: tuple) -> tuple:
        """x . yword . x^-1 as a level-basis word."""
        return fg.substitute(yword, self.images(x))


_RULES: dict = {}


def conjugation_rules(m: int, g: int, closed: bool = True) -> ConjugationRules:
    key = (m, g, closed)
    rules = _RULES.get(key)
    if rules is None:
        rules = _RULES.setdefault(key, ConjugationRules(m, g, closed=closed))
    return rules


# -- peeling ------------------------------------------------------------------

def peel(letters, m: int, g: int, rules: ConjugationRules | None = None):
    """Split a pure word on m strands as (strand-1 free word) . (rest).

    The rest is the word with its strand-1 letters deleted; each strand-1
    letter is conjugated through the rest letters preceding it.
    """
    rules = rules or conjugation_rules(m, g)
    gens = rules.gens
    pushed: dict = {k: (2 * k,) for k in gens}  # conjugation by the rest so far
    f_acc: list = []
    # the rest is kept freely reduced, with the conjugation in force below each letter
    rest: list = []
    saved: list = []
    for x in letters:
        if x.i == 1:
            y = fg.substitute(strand1_word((x,), m, g, rules.closed), pushed)
            for c in y:
                if f_acc and f_acc[-1] == c ^ 1:
                    f_acc.pop()
                else:
                    f_acc.append(c)
        elif rest and rest[-1] == x.inverse():
            rest.pop()
            pushed = saved.pop()
        else:
            step = rules.images(x)
            saved.append(pushed)
            pushed = {k: fg.substitute(step.get(k, (2 * k,)), pushed) for k in gens}
            rest.append(x)
    return tuple(f_acc), tuple(rest)


def drop_first_strand(letters) -> tuple:
    out = []
    for x in letters:
        if x.i < 2:
            raise CombingError("letter %r still touches strand 1" % (x,))
        out.append(x._replace(i=x.i - 1, j=x.j - 1 if x.kind in "tT" else x.j))
    return tuple(out)


# -- free basis -----------------------------------------------------------------

class FreeGenLetter(NamedTuple):
    level: int
    target: int
    label: tuple
    sign: int

    def inverse(self):
        return self._replace(sign=-self.sign)


def reduce_free_letters(letters) -> tuple:
    out: list = []
    for x in letters:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _emit_T(out: list, level: int, j: int, gamma: tuple, sign: int) -> None:
    # gamma T_{1,j} gamma^-1 = f_{1,j} f_{1,j-1} ... f_{1,2}, all at gamma
    word = [FreeGenLetter(level, level + l - 1, gamma, 1) for l in range(j, 1, -1)]
    if sign < 0:
        word = [x.inverse() for x in reversed(word)]
    out.extend(word)


class BasisFactor(NamedTuple):
    """gamma T_{1,j}^sign gamma^-1, or a conjugated relator when ``face``."""
    j: int
    gamma: tuple
    sign: int
    face: bool


def basis_factors(f: tuple, m: int, g: int, level: int = 1) -> list:
    """Cut a level word with trivial surface image into conjugated T-letters and faces.

    The product of the factors, with faces read as conjugated relators, is
    freely equal to ``f``.
    """
    grp = sgm.surface_group(g)
    ngen_a = 2 * g
    gamma: tuple = ()
    out: list = []
    budget = {"fuel": grp.fuel}  # shared by every edge of this word
    for c in f:
        k, sign = c >> 1, (-1 if c & 1 else 1)
        if k < ngen_a:
            for face in grp.edge_loop(gamma, c, budget):
                out.append(BasisFactor(m, face.anchor, face.sign, True))
            gamma = grp.normal_form(gamma + (c,))
        else:
            out.append(BasisFactor(k - ngen_a + 2, gamma, sign, False))
    if gamma != ():
        raise NotInKernel("strand-%d word has nontrivial surface image" % level)
    return out


def _expand_factors(factors, m: int, g: int) -> tuple:
    """Open-model product of basis factors, faces read as relators."""
    out: list = []
    for x in factors:
        core = sgm.relator(g) if x.face else T_word(x.j, m, g, closed=False)
        out.extend(x.gamma + fg.power(core, x.sign) + fg.invert_word(x.gamma))
    return fg.reduce_word(out)


def to_free_basis(f: tuple, m: int, g: int, level: int = 1, verify: bool = False) -> tuple:
    """Rewrite a level-basis word with trivial surface image in the f-basis."""
    out: list = []
    for x in basis_factors(f, m, g, level):
        _emit_T(out, level, x.j, x.gamma, x.sign)
    result = reduce_free_letters(out)
    if verify and expand_free_letters(result, m, g) != fg.reduce_word(f):
        raise CombingError("free-basis rewrite failed its expansion check")
    return result


def expand_free_letters(letters, m: int, g: int) -> tuple:
    """Substitute f_{1,j,gamma} -> gamma T_{1,j} T_{1,j-1}^-1 gamma^-1."""
    out: list = []
    for x in letters:
        j = x.target - x.level + 1
        w = x.label + t_word(j, m, g) + fg.invert_word(x.label)
        out.extend(fg.power(w, x.sign))
    return fg.reduce_word(out)


class KDecomposition(NamedTuple):
    parts: tuple

    def dump(self) -> str:
        lines = []
        for i, part in enumerate(self.parts, 1):
            body = " ".join('f[%d,%d,"%s"]^%+d' % (x.level, x.target, sgm.format_word(x.label), x.sign)
                            for x in part)
            lines.append(("level %d: %s" % (i, body)).rstrip())
        return "\n".join(lines)


def decompose(w: BraidWord, verify: bool = False) -> KDecomposition:
    if phi(w) != h_identity(w.n):
        raise NotInKernel("braid word is not in the kernel of phi")
    return decompose_pure(to_pure(w), w.n, w.g, verify)


def shift_strands(letters, offset: int) -> tuple:
    return tuple(x._replace(i=x.i + offset, j=x.j + offset if x.kind in "tT" else x.j)
                 for x in letters)


def _relator_letters(level: int, g: int, sign: int = 1) -> tuple:
    word = tuple(A(level, s) for s in range(1, 2 * g + 1))
    word += tuple(A(level, s, -1) for s in range(1, 2 * g + 1))
    return word if sign > 0 else invert_letters(word)


def _level_letters(f: tuple, level: int, g: int) -> tuple:
    """Open-model level codes back to braid letters on the full strand range."""
    out = []
    for c in f:
        k, sign = c >> 1, (-1 if c & 1 else 1)
        if k < 2 * g:
            out.append(A(level, k + 1, sign))
        else:
            out.append(Letter("T", level, level + k - 2 * g + 1, sign))
    return tuple(out)


def peel_levels(letters, n: int, g: int, first: int, last: int):
    """Peel levels first..last of a word living on strands >= first.

    Level 1 uses the closed model, higher levels the open one, so that every
    identity used holds in the full n-strand group.  Returns the level words
    and the remaining word, both indexed on the full strand range.
    """
    word = shift_strands(letters, 1 - first)
    parts = []
    for level in range(first, last + 1):
        m = n - level + 1
        f, rest = peel(word, m, g, conjugation_rules(m, g, closed=level == 1))
        parts.append(f)
        word = drop_first_strand(rest)
    return parts, shift_strands(word, last)


@lru_cache(maxsize=None)
def boundary_defect(level: int, n: int, g: int) -> tuple:
    """A pure word equal to R_level T_{level,n}^-1 whose higher strands cancel.

    R_level is the surface relator run by strand ``level``.  Above the first
    level the relator does not close up to T_{level,n}: it also encircles the
    lower points.  The word is obtained by conjugating the first-strand
    boundary identity R_1 = T_{1,n} by sigma_{level-1}...sigma_1.
    """
    beta = tuple(S(k) for k in range(level - 1, 0, -1))
    back = invert_letters(beta)
    lhs = to_pure(BraidWord(beta + _relator_letters(1, g) + back, n, g))
    rhs = to_pure(BraidWord(beta + expand_T(1, n) + back, n, g))
    word = reduce_letters(_relator_letters(level, g) + invert_letters(lhs) + rhs
                          + expand_T(level, n, -1))
    _, rest = peel_levels(word, n, g, 1, level - 1)
    if reduce_letters(rest):
        raise CombingError("boundary defect of strand %d does not cancel above it" % level)
    return word


def decompose_pure(letters, n: int, g: int, verify: bool = False) -> KDecomposition:
    """Normal form k = k_1 s(k_2) ... s(k_{n-1}) of a pure word in the kernel.

    Here s sends f_{l,j,gamma} to the literal word gamma t_{l,j} gamma^-1.
    All levels are peeled at once.  Going down from the top level, each level
    word is cut into basis factors; a face there differs from its T_{l,n}
    reading by the boundary defect, which is pushed down and re-peeled into
    the levels below.
    """
    if n < 2:
        return KDecomposition(())
    levels, rest = peel_levels(letters, n, g, 1, n)
    if reduce_letters(rest):
        raise CombingError("peeling left letters behind: %s" % format_braid(rest))
    parts: dict = {}
    for level in range(n, 1, -1):
        m = n - level + 1
        out: list = []
        mixed: list = []  # factors with each face split as defect and T-piece
        literal: list = []  # s(k_level)
        has_face = False
        factors = basis_factors(levels[level - 1], m, g, level)
        if verify and _expand_factors(factors, m, g) != fg.reduce_word(levels[level - 1]):
            raise CombingError("factor cut of level %d failed its expansion check" % level)
        for x in factors:
            _emit_T(out, level, x.j, x.gamma, x.sign)
            conj = _level_letters(x.gamma, level, g)
            top = expand_T(level, level + x.j - 1, x.sign) if x.j > 1 else ()
            piece = conj + top + invert_letters(conj)
            literal.extend(piece)
            if not x.face:
                mixed.extend(piece)
                continue
            has_face = True
            core = boundary_defect(level, n, g)
            if x.sign < 0:
                core = invert_letters(core)
            defect = conj + core + invert_letters(conj)
            # face = conj D T conj^-1, and its inverse puts the T-piece first
            mixed.extend(defect + piece if x.sign > 0 else piece + defect)
        if level < n:
            parts[level] = reduce_free_letters(out)
        if has_face:
            prefix = sum((_level_letters(levels[l - 1], l, g) for l in range(1, level)), ())
            lower, rest = peel_levels(prefix + tuple(mixed), n, g, 1, level - 1)
            if reduce_letters(rest) != reduce_letters(literal):
                raise CombingError("boundary defect left letters on strand %d" % level)
            levels[:level - 1] = lower
    parts[1] = to_free_basis(levels[0], n, g, 1, verify)
    return KDecomposition(tuple(parts[l] for l in range(1, n)))

