"""The map phi: B_n(M) -> H_n, arithmetic in H_n, and its set-section.

An element of H_n = pi_1(M)^n x| S_n is ``HElem(loops, perm)``.  ``loops[i]``
is the surface loop (normal-form code tuple) traced by the strand starting at
position i+1, and ``perm`` uses the end-position convention of
:mod:`braid_words`.
"""

from __future__ import annotations

from typing import NamedTuple

from . import surface_group as sgm
from .braid_words import (A, S, BraidWord, compose_perms, identity_perm, inverse_perm,
                          invert_letters, permutation_braid, transposition)


class HElem(NamedTuple):
    loops: tuple
    perm: tuple

    @property
    def n(self) -> int:
        return len(self.perm)

    def to_json(self) -> dict:
        return {"loops": [sgm.format_word(m) for m in self.loops], "perm": list(self.perm)}

    def sort_key(self):
        return (self.perm, self.loops)


def h_identity(n: int) -> HElem:
    return HElem(((),) * n, identity_perm(n))


def h_from_json(data: dict, g: int) -> HElem:
    grp = sgm.surface_group(g)
    loops = tuple(grp.normal_form(sgm.parse_word(s, g)) for s in data["loops"])
    return HElem(loops, tuple(data["perm"]))


def h_mul(x: HElem, y: HElem, g: int) -> HElem:
    if x.n != y.n:
        raise ValueError("H_n elements of different rank")
    grp = sgm.surface_group(g)
    loops = tuple(grp.mul(x.loops[i], y.loops[x.perm[i] - 1]) for i in range(x.n))
    return HElem(loops, compose_perms(x.perm, y.perm))


def h_inv(x: HElem, g: int) -> HElem:
    grp = sgm.surface_group(g)
    pinv = inverse_perm(x.perm)
    # (mu, s)^-1 = (nu, s^-1) with nu_i = mu_{s^-1(i)}^-1
    loops = tuple(grp.inv(x.loops[pinv[i] - 1]) for i in range(x.n))
    return HElem(loops, pinv)


def letter_image(x, n: int) -> HElem:
    if x.kind == "a":
        loops = [()] * n
        loops[x.i - 1] = (sgm.letter_code(x.j, x.sign),)
        return HElem(tuple(loops), identity_perm(n))
    if x.kind in "sx":
        return HElem(((),) * n, transposition(n, x.i))
    return h_identity(n)


def phi(w: BraidWord) -> HElem:
    """Left fold of per-letter images; singular letters count as crossings."""
    n = w.n
    grp = sgm.surface_group(w.g)
    loops = [[] for _ in range(n)]
    pos = list(range(1, n + 1))  # pos[strand] = current position
    at = list(range(n))  # at[position] = strand there
    for x in w.letters:
        if x.kind == "a":
            loops[at[x.i - 1]].append(sgm.letter_code(x.j, x.sign))
        elif x.kind in "sx":
            k = x.i - 1
            at[k], at[k + 1] = at[k + 1], at[k]
            pos[at[k]], pos[at[k + 1]] = k + 1, k + 2
    return HElem(tuple(grp.normal_form(tuple(m)) for m in loops), tuple(pos))


def section(h: HElem, g: int) -> BraidWord:
    n = h.n
    letters = []
    for i, loop in enumerate(h.loops, 1):
        letters.extend(A(i, sgm.letter_index(c), sgm.letter_sign(c)) for c in loop)
    letters.extend(S(k) for k in permutation_braid(h.perm))
    w = BraidWord(tuple(letters), n, g)
    if phi(w) != h:
        raise AssertionError("section does not split phi")
    return w


def k_part(w: BraidWord) -> BraidWord:
    """w . section(phi(w))^-1, which lies in the kernel of phi."""
    s = section(phi(w), w.g)
    out = BraidWord(w.letters + invert_letters(s.letters), w.n, w.g)
    if phi(out) != h_identity(w.n):
        raise AssertionError("k_part left the kernel of phi")
    return out
