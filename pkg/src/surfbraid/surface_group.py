"""The fundamental group of a closed orientable surface of genus g.

Group letters are integer codes: wall ``r`` (1-based) has code ``2(r-1)`` and
its inverse has code ``2(r-1) + 1``.  Integer order on codes is therefore the
frozen shortlex order w1 < w1^-1 < w2 < w2^-1 < ...

Elements are represented by their normal-form words (tuples of codes).  For
g = 1 the normal form is w1^a w2^b.  For g >= 2 it is the shortlex-least
geodesic, found by Dehn reduction followed by a search over half-relator
flips.
"""

from __future__ import annotations

import re
import sys
import threading
from dataclasses import dataclass
from functools import lru_cache

from .freegroup import invert_word, reduce_word

DEFAULT_FUEL = 200000


class SurfaceGroupError(Exception):
    pass


class NotNullError(SurfaceGroupError):
    pass


class FuelExhausted(SurfaceGroupError):
    pass


def letter_code(r: int, sign: int) -> int:
    return 2 * (r - 1) + (0 if sign > 0 else 1)


def letter_index(code: int) -> int:
    return code // 2 + 1


def letter_sign(code: int) -> int:
    return -1 if code & 1 else 1


def relator(g: int) -> tuple:
    """w1 w2 ... w2g w1^-1 ... w2g^-1 as a code tuple."""
    return tuple(2 * r for r in range(2 * g)) + tuple(2 * r + 1 for r in range(2 * g))


def format_word(w) -> str:
    parts = []
    for c in w:
        s = "w%d" % letter_index(c)
        parts.append(s + "^-1" if c & 1 else s)
    return " ".join(parts)


_TOKEN = re.compile(r"w(\d+)(\^-1)?$")


def parse_word(text: str, g: int) -> tuple:
    out = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError("bad surface letter %r" % tok)
        r = int(m.group(1))
        if not 1 <= r <= 2 * g:
            raise ValueError("surface letter %r out of range for genus %d" % (tok, g))
        out.append(letter_code(r, -1 if m.group(2) else 1))
    return tuple(out)


@dataclass(frozen=True)
class FaceFactor:
    anchor: tuple
    sign: int


class SurfaceGroup:
    """Normal forms, group operations and null-word filling for one genus."""

    def __init__(self, g: int, fuel: int = DEFAULT_FUEL):
        if g < 1:
            raise ValueError("genus must be at least 1")
        self.g = g
        self.fuel = fuel
        self.relator = relator(g)
        self._lock = threading.Lock()
        self._edge_memo: dict = {}
        if g >= 2:
            self._long, self._half = self._rewrite_tables()
        # counter-clockwise rotation of directions at a Cayley-graph vertex
        rel = self.relator
        m = len(rel)
        succ = {rel[(k + 1) % m]: rel[k] ^ 1 for k in range(m)}
        order = [0]
        while len(order) < m:
            order.append(succ[order[-1]])
        self._rot = {c: k for k, c in enumerate(order)}
        self._rel_pos = {c: k for k, c in enumerate(rel)}
        self.normal_form = lru_cache(maxsize=200000)(self._normal_form)

    # -- normal forms ---------------------------------------------------

    def _rewrite_tables(self):
        g = self.g
        long, half = {}, {}
        for cyc in (self.relator, invert_word(self.relator)):
            for s in range(4 * g):
                rot = cyc[s:] + cyc[:s]
                for k in range(2 * g, 4 * g + 1):
                    (half if k == 2 * g else long)[rot[:k]] = invert_word(rot[k:])
        return long, half

    def _dehn(self, w):
        g = self.g
        w = reduce_word(w)
        while True:
            for k in range(4 * g, 2 * g, -1):
                hit = next((i for i in range(len(w) - k + 1) if w[i:i + k] in self._long), None)
                if hit is not None:
                    w = reduce_word(w[:hit] + self._long[w[hit:hit + k]] + w[hit + k:])
                    break
            else:
                return w

    def _normal_form(self, w: tuple) -> tuple:
        if self.g == 1:
            a = sum(1 if c == 0 else -1 for c in w if c < 2)
            b = sum(1 if c == 2 else -1 for c in w if c >= 2)
            return (0,) * a + (1,) * -a + (2,) * b + (3,) * -b
        h = 2 * self.g
        w = self._dehn(w)
        budget = self.fuel
        while True:
            seen = {w}
            frontier = [w]
            shorter = None
            while frontier and shorter is None:
                nxt = []
                for u in frontier:
                    for i in range(len(u) - h + 1):
                        rep = self._half.get(u[i:i + h])
                        if rep is None:
                            continue
                        v = u[:i] + rep + u[i + h:]
                        v2 = self._dehn(v)
                        if len(v2) < len(u):
                            shorter = v2
                            break
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
                            budget -= 1
                            if budget < 0:
                                raise FuelExhausted("normal form search exceeded fuel")
                    if shorter is not None:
                        break
                frontier = nxt
            if shorter is None:
                return min(seen)
            w = shorter

    def mul(self, x: tuple, y: tuple) -> tuple:
        return self.normal_form(x + y)

    def inv(self, x: tuple) -> tuple:
        return self.normal_form(invert_word(x))

    def is_tree_edge(self, gamma: tuple, letter: int) -> bool:
        target = self.normal_form(gamma + (letter,))
        return target == gamma + (letter,) or gamma == target + (letter ^ 1,)

    # -- faces ----------------------------------------------------------

    def expand_face_factor(self, f: FaceFactor) -> tuple:
        rel = self.relator if f.sign > 0 else invert_word(self.relator)
        return f.anchor + rel + invert_word(f.anchor)

    def fill_null_word(self, w) -> list:
        """Factor a null word as a product of anchored relator conjugates.

        The result, expanded and freely reduced, equals ``reduce_free(w)``.
        """
        w = tuple(w)
        if self.normal_form(w) != ():
            raise NotNullError("word is not null in the surface group")
        factors: list = []
        vertex = ()
        state = {"fuel": self.fuel}
        for c in w:
            factors.extend(self.edge_loop(vertex, c, state))
            vertex = self.normal_form(vertex + (c,))
        return reduce_factors(factors)

    def edge_loop(self, vertex: tuple, letter: int, state=None) -> tuple:
        """Faces spelling ``vertex~ . letter . (vertex letter)~^-1``."""
        if letter & 1:
            back = self.normal_form(vertex + (letter,))
            return invert_factors(self.edge_loop(back, letter ^ 1, state))
        key = (vertex, letter)
        hit = self._edge_memo.get(key)
        if hit is not None:
            return hit
        if self.is_tree_edge(vertex, letter):
            result = ()
        elif self.g == 1:
            result = self._torus_edge(vertex, letter)
        else:
            if state is None:
                state = {"fuel": self.fuel}
            old = sys.getrecursionlimit()
            sys.setrecursionlimit(max(old, 20000))
            try:
                result = self._planar_edge(vertex, letter, state, set())
            finally:
                sys.setrecursionlimit(old)
        with self._lock:
            self._edge_memo[key] = result
        return result

    def _torus_edge(self, vertex, letter):
        # only w1 edges away from the w1-axis are off the tree
        a = vertex.count(0) - vertex.count(1)
        b = vertex.count(2) - vertex.count(3)

        def anchor(k):
            return self.normal_form((0,) * a + (1,) * -a + (2,) * k + (3,) * -k)

        if b > 0:
            return tuple(FaceFactor(anchor(k), -1) for k in range(b - 1, -1, -1))
        return tuple(FaceFactor(anchor(k), 1) for k in range(b, 0))

    def _interior_on_left(self, vertex, letter):
        target = self.normal_form(vertex + (letter,))
        k = 0
        while k < min(len(vertex), len(target)) and vertex[k] == target[k]:
            k += 1
        cycle = vertex[k:] + (letter,) + invert_word(target[k:])
        m = 4 * self.g
        total = 0
        for p in range(len(cycle)):
            back = cycle[p - 1] ^ 1
            out = cycle[p]
            steps = (self._rot[back] - self._rot[out]) % m
            total += 2 * self.g - steps
        return total > 0

    def _planar_edge(self, vertex, letter, state, active):
        key = (vertex, letter)
        hit = self._edge_memo.get(key)
        if hit is not None:
            return hit
        if key in active:
            raise FuelExhausted("face filling recursion revisited an edge")
        state["fuel"] -= 1
        if state["fuel"] < 0:
            raise FuelExhausted("face filling exceeded fuel")
        active.add(key)
        rel = self.relator
        m = len(rel)
        if self._interior_on_left(vertex, letter):
            q = self._rel_pos[letter]
            anchor = self.normal_form(vertex + invert_word(rel[:q]))
            sign = 1
        else:
            target = self.normal_form(vertex + (letter,))
            q = self._rel_pos[letter ^ 1]
            anchor = self.normal_form(target + invert_word(rel[:q]))
            sign = -1
        # boundary of the face, edge by edge, starting at its anchor
        before, after = [], []
        v = anchor
        for p in range(m):
            c = rel[p]
            if p != q:
                edge = (v, c)
                (before if p < q else after).append(edge)
            v = self.normal_form(v + (c,))

        def loops(edges):
            out = []
            for u, c in edges:
                if c & 1:
                    back = self.normal_form(u + (c,))
                    out.extend(invert_factors(self._sub_edge(back, c ^ 1, state, active)))
                else:
                    out.extend(self._sub_edge(u, c, state, active))
            return out

        face = (FaceFactor(anchor, 1),)
        # face = P . L^s . Q  =>  L^s = P^-1 face Q^-1
        inner = invert_factors(loops(before)) + face + invert_factors(loops(after))
        inner = reduce_factors(inner)
        result = inner if sign > 0 else invert_factors(inner)
        active.discard(key)
        with self._lock:
            self._edge_memo[key] = result
        return result

    def _sub_edge(self, vertex, letter, state, active):
        if self.is_tree_edge(vertex, letter):
            return ()
        return self._planar_edge(vertex, letter, state, active)


def invert_factors(factors) -> tuple:
    return tuple(FaceFactor(f.anchor, -f.sign) for f in reversed(factors))


def reduce_factors(factors) -> tuple:
    out: list = []
    for f in factors:
        if out and out[-1].anchor == f.anchor and out[-1].sign == -f.sign:
            out.pop()
        else:
            out.append(f)
    return tuple(out)


_GROUPS: dict = {}


_FUEL = [DEFAULT_FUEL]


def surface_group(g: int) -> SurfaceGroup:
    """Shared per-genus instance so normal-form and filling caches are reused."""
    grp = _GROUPS.get(g)
    if grp is None:
        grp = _GROUPS.setdefault(g, SurfaceGroup(g, _FUEL[0]))
    return grp


def set_fuel(fuel: int) -> None:
    """Change the filling budget of the shared instances."""
    if fuel < 1:
        raise ValueError("fuel must be positive")
    _FUEL[0] = fuel
    for grp in _GROUPS.values():
        grp.fuel = fuel
