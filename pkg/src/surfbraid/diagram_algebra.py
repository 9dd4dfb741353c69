"""Labelled chord diagrams, the H_n action, Magnus expansions and u.

A chord is ``(i, j, label)`` with i < j and ``label`` a surface normal form;
t_{j,i,gamma} is stored as t_{i,j,gamma^-1}.  A monomial is a tuple of
chords, read left to right.  Elements are dictionaries from monomials (or
``(monomial, HElem)`` pairs) to nonzero integers, truncated above degree N.
"""

from __future__ import annotations

import random
from functools import lru_cache

from . import surface_group as sgm
from .braid_words import BraidWord, inverse_perm, resolve_singular
from .combing import KDecomposition, decompose
from .coset_split import HElem, h_from_json, h_identity, h_mul, k_part, phi

DEFAULT_N = 3


def chord(i: int, j: int, label: tuple, g: int) -> tuple:
    if i == j:
        raise ValueError("a chord joins two different strands")
    if i > j:
        return (j, i, sgm.surface_group(g).inv(label))
    return (i, j, label)


def is_ordered(mono: tuple) -> bool:
    return all(mono[k][0] <= mono[k + 1][0] for k in range(len(mono) - 1))


def _add(terms: dict, key, coeff: int) -> None:
    c = terms.get(key, 0) + coeff
    if c:
        terms[key] = c
    else:
        terms.pop(key, None)


# -- straightening -------------------------------------------------------------

def _swap_terms(left: tuple, right: tuple, g: int):
    """Rewrite the out-of-order product left.right (left starts later)."""
    grp = sgm.surface_group(g)
    k, l, delta = left
    i, j, gamma = right
    out = [(1, (right, left))]
    if j == k:
        extra = (i, l, grp.mul(gamma, delta))
    elif j == l:
        extra = (i, k, grp.mul(gamma, grp.inv(delta)))
    else:
        return out
    out.append((1, (right, extra)))
    out.append((-1, (extra, right)))
    return out


@lru_cache(maxsize=500000)
def _straighten_cached(mono: tuple, N: int, g: int) -> tuple:
    return tuple(_straighten(mono, N, g, None).items())


def _straighten(mono: tuple, N: int, g: int, rng) -> dict:
    if len(mono) > N:
        return {}
    bad = [k for k in range(len(mono) - 1) if mono[k][0] > mono[k + 1][0]]
    if not bad:
        return {mono: 1}
    k = bad[0] if rng is None else rng.choice(bad)
    out: dict = {}
    for coeff, pair in _swap_terms(mono[k], mono[k + 1], g):
        sub = mono[:k] + pair + mono[k + 2:]
        if rng is None:
            items = _straighten_cached(sub, N, g)
        else:
            items = _straighten(sub, N, g, rng).items()
        for m, c in items:
            _add(out, m, coeff * c)
    return out


def straighten(mono: tuple, N: int, g: int, rng: random.Random | None = None) -> dict:
    """Express a monomial in ordered monomials (first indices weakly rising).

    Without ``rng`` the leftmost out-of-order pair is rewritten first; with
    ``rng`` the pair is chosen at random, which exercises confluence.
    """
    if rng is None:
        return dict(_straighten_cached(tuple(mono), N, g))
    return _straighten(tuple(mono), N, g, rng)


# -- the chord algebra -----------------------------------------------------------

class AElem:
    """Element of the truncated chord algebra."""

    __slots__ = ("terms", "N", "g")

    def __init__(self, terms: dict, N: int, g: int):
        self.terms = {m: c for m, c in terms.items() if c}
        self.N = N
        self.g = g

    @classmethod
    def one(cls, N: int, g: int) -> "AElem":
        return cls({(): 1}, N, g)

    @classmethod
    def from_chords(cls, chords, N: int, g: int, coeff: int = 1) -> "AElem":
        mono = tuple(chord(i, j, lab, g) for i, j, lab in chords)
        out: dict = {}
        for m, c in straighten(mono, N, g).items():
            _add(out, m, coeff * c)
        return cls(out, N, g)

    def __eq__(self, other):
        return isinstance(other, AElem) and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add(out, m, c)
        return AElem(out, self.N, self.g)

    def __neg__(self):
        return AElem({m: -c for m, c in self.terms.items()}, self.N, self.g)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return a_mul(self, other)

    def __repr__(self):
        return "AElem(%s)" % format_terms(self.terms.items(), None) if self.terms else "AElem(0)"


def a_mul(x: AElem, y: AElem) -> AElem:
    if x.N != y.N:
        raise ValueError("truncation degrees differ")
    N, g = x.N, x.g
    out: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            if len(m1) + len(m2) > N:
                continue
            m = m1 + m2
            if is_ordered(m):
                _add(out, m, c1 * c2)
            else:
                for m3, c3 in straighten(m, N, g).items():
                    _add(out, m3, c1 * c2 * c3)
    return AElem(out, N, g)


def act_on_chord(h: HElem, ch: tuple, g: int) -> tuple:
    """Image of one chord under conjugation by h = (mu, s)."""
    grp = sgm.surface_group(g)
    pinv = inverse_perm(h.perm)
    i, j, lab = ch
    ni, nj = pinv[i - 1], pinv[j - 1]
    lab = grp.normal_form(h.loops[ni - 1] + lab + sgm.invert_word(h.loops[nj - 1]))
    return chord(ni, nj, lab, g)


def act_on_monomial(h: HElem, mono: tuple, N: int, g: int) -> dict:
    return straighten(tuple(act_on_chord(h, ch, g) for ch in mono), N, g)


def h_act(h: HElem, x: AElem) -> AElem:
    out: dict = {}
    for m, c in x.terms.items():
        for m2, c2 in act_on_monomial(h, m, x.N, x.g).items():
            _add(out, m2, c * c2)
    return AElem(out, x.N, x.g)


# -- the semidirect product ------------------------------------------------------

class UElem:
    """Element of the truncated algebra A_n x| Z[H_n]."""

    __slots__ = ("terms", "N", "g")

    def __init__(self, terms: dict, N: int, g: int):
        self.terms = {k: c for k, c in terms.items() if c}
        self.N = N
        self.g = g

    @classmethod
    def tensor(cls, a: AElem, h: HElem) -> "UElem":
        return cls({(m, h): c for m, c in a.terms.items()}, a.N, a.g)

    def __eq__(self, other):
        return isinstance(other, UElem) and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return UElem(out, self.N, self.g)

    def __neg__(self):
        return UElem({k: -c for k, c in self.terms.items()}, self.N, self.g)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, coeff: int) -> "UElem":
        return UElem({k: coeff * c for k, c in self.terms.items()}, self.N, self.g)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list:
        return sorted({len(m) for m, _ in self.terms})

    def __repr__(self):
        return "UElem(%s)" % format_uelem(self, "text").replace("\n", "; ")


def sd_mul(x: UElem, y: UElem) -> UElem:
    if x.N != y.N:
        raise ValueError("truncation degrees differ")
    N, g = x.N, x.g
    out: dict = {}
    for (m1, h1), c1 in x.terms.items():
        for (m2, h2), c2 in y.terms.items():
            if len(m1) + len(m2) > N:
                continue
            h = h_mul(h1, h2, g)
            for moved, c3 in act_on_monomial(h1, m2, N, g).items():
                for m, c4 in straighten(m1 + moved, N, g).items():
                    _add(out, (m, h), c1 * c2 * c3 * c4)
    return UElem(out, N, g)


def graded_part(x: UElem, d: int) -> UElem:
    return UElem({k: c for k, c in x.terms.items() if len(k[0]) == d}, x.N, x.g)


def a_graded_part(x: AElem, d: int) -> AElem:
    return AElem({m: c for m, c in x.terms.items() if len(m) == d}, x.N, x.g)


# -- Magnus expansions and the invariant ----------------------------------------

def _times_letter(cur: dict, ch: tuple, sign: int, N: int) -> dict:
    """Multiply on the right by 1 + t, or by 1 - t + t^2 - ... for sign -1."""
    out = dict(cur)
    for m, c in cur.items():
        room = N - len(m)
        power = m
        for p in range(1, room + 1):
            power = power + (ch,)
            coeff = c if sign > 0 else c * (-1) ** p
            _add(out, power, coeff)
            if sign > 0:
                break
    return out


def magnus_v(letters, N: int, g: int) -> AElem:
    """Magnus image of a word in the free generators f_{i,j,gamma}.

    Letters are ``FreeGenLetter`` values (or ``(i, j, gamma, sign)`` tuples).
    """
    cur: dict = {(): 1}
    for x in letters:
        level, target, label, sign = x
        cur = _times_letter(cur, chord(level, target, label, g), sign, N)
    out: dict = {}
    for m, c in cur.items():
        if is_ordered(m):
            _add(out, m, c)
        else:
            for m2, c2 in straighten(m, N, g).items():
                _add(out, m2, c * c2)
    return AElem(out, N, g)


def v_of(k: KDecomposition, N: int, g: int) -> AElem:
    cur: dict = {(): 1}
    for part in k.parts:
        for x in part:
            cur = _times_letter(cur, chord(x.level, x.target, x.label, g), x.sign, N)
    # levels ascend, so every monomial is already ordered
    return AElem(cur, N, g)


def u_of(w: BraidWord, N: int = DEFAULT_N, verify: bool = False) -> UElem:
    if w.singular:
        raise ValueError("use u_linear for singular words")
    h = phi(w)
    k = decompose(k_part(w), verify=verify)
    return UElem.tensor(v_of(k, N, w.g), h)


def u_linear(signed_words, N: int = DEFAULT_N, g: int | None = None, verify: bool = False) -> UElem:
    signed_words = list(signed_words)
    if g is None:
        g = signed_words[0][1].g
    total = UElem({}, N, g)
    for coeff, w in signed_words:
        total = total + u_of(w, N, verify).scaled(coeff)
    return total


def u_any(w: BraidWord, N: int = DEFAULT_N, verify: bool = False) -> UElem:
    """u for a braid word, extended linearly over resolutions if singular."""
    if w.singular:
        return u_linear(resolve_singular(w), N, w.g, verify)
    return u_of(w, N, verify)


def u_one(n: int, N: int, g: int) -> UElem:
    return UElem.tensor(AElem.one(N, g), h_identity(n))


# -- serialisation -------------------------------------------------------------------

def _term_key(item):
    (m, h), _ = item
    return (len(m), m, h.sort_key())


def uelem_to_json(x: UElem) -> dict:
    terms = []
    for (m, h), c in sorted(x.terms.items(), key=_term_key):
        terms.append({
            "coeff": c,
            "chords": [{"i": i, "j": j, "gamma": sgm.format_word(lab)} for i, j, lab in m],
            "h": h.to_json(),
        })
    return {"N": x.N, "terms": terms}


def uelem_from_json(data: dict, g: int) -> UElem:
    grp = sgm.surface_group(g)
    terms: dict = {}
    for t in data["terms"]:
        m = tuple((c["i"], c["j"], grp.normal_form(sgm.parse_word(c["gamma"], g))) for c in t["chords"])
        _add(terms, (m, h_from_json(t["h"], g)), t["coeff"])
    return UElem(terms, data["N"], g)


def format_chords(m: tuple) -> str:
    if not m:
        return "1"
    return " ".join('t[%d,%d,"%s"]' % (i, j, sgm.format_word(lab)) for i, j, lab in m)


def format_h(h: HElem) -> str:
    loops = ",".join('"%s"' % sgm.format_word(m) for m in h.loops)
    return "(%s | %s)" % (loops, " ".join(map(str, h.perm)))


def format_terms(items, h_of) -> str:
    return " + ".join("%d*%s" % (c, format_chords(m)) for m, c in sorted(items, key=lambda it: (len(it[0]), it[0])))


def format_uelem(x: UElem, style: str = "text") -> str:
    if style != "text":
        raise ValueError("unknown format %r" % style)
    if not x.terms:
        return "0"
    lines = []
    for (m, h), c in sorted(x.terms.items(), key=_term_key):
        lines.append("%+d %s @ %s" % (c, format_chords(m), format_h(h)))
    return "\n".join(lines)
