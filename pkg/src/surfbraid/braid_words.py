"""Words in the surface braid group B_n(M) and the singular braid monoid.

Letters are ``Letter(kind, i, j, sign)`` tuples:

* ``a``: the surface generator a_{i,r}; ``i`` is the strand, ``j`` the wall r
* ``s``: the crossing sigma_i (``j`` unused)
* ``x``: the singular crossing tau_i (never inverted)
* ``t`` / ``T``: the pure disc generators t_{i,j} and T_{i,j}, with i < j

Words read left to right in time.  A permutation is stored as the tuple of
end positions: ``perm[i-1]`` is where the strand starting at position i ends.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple


class WordSyntaxError(ValueError):
    pass


class IndexRangeError(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


class Letter(NamedTuple):
    kind: str
    i: int
    j: int
    sign: int

    def inverse(self) -> "Letter":
        if self.kind == "x":
            raise ValueError("singular letters have no inverse")
        return self._replace(sign=-self.sign)


def A(i, r, sign=1):
    return Letter("a", i, r, sign)


def S(k, sign=1):
    return Letter("s", k, 0, sign)


def X(k):
    return Letter("x", k, 0, 1)


def t(i, j, sign=1):
    if i > j:
        i, j = j, i
    return Letter("t", i, j, sign)


def T(i, j, sign=1):
    return Letter("T", i, j, sign)


@dataclass(frozen=True)
class BraidWord:
    letters: tuple
    n: int
    g: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            check_letter(x, self.n, self.g)

    @property
    def singular(self) -> bool:
        return any(x.kind == "x" for x in self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return concat(self, other)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)


def check_letter(x: Letter, n: int, g: int) -> None:
    if x.sign not in (1, -1):
        raise IndexRangeError("bad sign in %r" % (x,))
    if x.kind == "a":
        ok = 1 <= x.i <= n and 1 <= x.j <= 2 * g
    elif x.kind in "sx":
        ok = 1 <= x.i <= n - 1 and (x.kind == "s" or x.sign == 1)
    elif x.kind in "tT":
        ok = 1 <= x.i < x.j <= n
    else:
        raise WordSyntaxError("unknown letter kind %r" % (x.kind,))
    if not ok:
        raise IndexRangeError("letter %s out of range for n=%d, g=%d" % (format_letter(x), n, g))


# -- text syntax --------------------------------------------------------

_TOKEN = re.compile(r"^(a|s|x|t|T)\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\](\^-1)?$")


def parse_word(text: str, n: int, g: int) -> BraidWord:
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError("cannot parse token %r" % tok)
        kind, first, second, inv = m.groups()
        two = kind in "atT"
        if two != (second is not None):
            raise WordSyntaxError("wrong number of indices in %r" % tok)
        if kind == "x" and inv:
            raise WordSyntaxError("singular letter %r cannot be inverted" % tok)
        sign = -1 if inv else 1
        i = int(first)
        j = int(second) if second is not None else 0
        if kind in "tT" and i >= j:
            raise IndexRangeError("pure letter %r needs i < j" % tok)
        letters.append(Letter(kind, i, j, sign))
    return BraidWord(tuple(letters), n, g)


def format_letter(x: Letter) -> str:
    if x.kind in "atT":
        body = "%s[%d,%d]" % (x.kind, x.i, x.j)
    else:
        body = "%s[%d]" % (x.kind, x.i)
    return body + ("^-1" if x.sign < 0 else "")


def format_word(w) -> str:
    letters = w.letters if isinstance(w, BraidWord) else w
    return " ".join(format_letter(x) for x in letters)


# -- word operations ----------------------------------------------------

def invert_letters(letters) -> tuple:
    return tuple(x.inverse() for x in reversed(letters))


def invert_word(w: BraidWord) -> BraidWord:
    return BraidWord(invert_letters(w.letters), w.n, w.g)


def concat(w1: BraidWord, w2: BraidWord) -> BraidWord:
    if (w1.n, w1.g) != (w2.n, w2.g):
        raise AmbientMismatch("cannot concatenate words from different ambients")
    return BraidWord(w1.letters + w2.letters, w1.n, w1.g)


def reduce_letters(letters) -> tuple:
    out: list = []
    for x in letters:
        if out and x.kind != "x" and out[-1] == x._replace(sign=-x.sign):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def syn_reduce(w: BraidWord) -> BraidWord:
    return BraidWord(reduce_letters(w.letters), w.n, w.g)


def resolve_singular(w: BraidWord) -> list:
    """Expand every tau_i as sigma_i - sigma_i^-1; returns signed words."""
    slots = [k for k, x in enumerate(w.letters) if x.kind == "x"]
    out = []
    for signs in itertools.product((1, -1), repeat=len(slots)):
        letters = list(w.letters)
        coeff = 1
        for k, e in zip(slots, signs):
            letters[k] = S(letters[k].i, e)
            coeff *= e
        out.append((coeff, BraidWord(tuple(letters), w.n, w.g)))
    return out


# -- permutations ---------------------------------------------------------

def identity_perm(n: int) -> tuple:
    return tuple(range(1, n + 1))


def compose_perms(first: tuple, second: tuple) -> tuple:
    """Permutation of ``first`` followed by ``second``."""
    return tuple(second[p - 1] for p in first)


def inverse_perm(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, q in enumerate(p, 1):
        out[q - 1] = i
    return tuple(out)


def transposition(n: int, k: int) -> tuple:
    p = list(range(1, n + 1))
    p[k - 1], p[k] = p[k], p[k - 1]
    return tuple(p)


def inversions(p: tuple) -> int:
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def permutation_of(w) -> tuple:
    letters = w.letters if isinstance(w, BraidWord) else w
    n = w.n
    pos = list(range(1, n + 1))  # pos[strand-1] = current position
    for x in letters:
        if x.kind in "sx":
            k = x.i
            for s in range(n):
                if pos[s] == k:
                    pos[s] = k + 1
                elif pos[s] == k + 1:
                    pos[s] = k
    return tuple(pos)


_PERM_BRAIDS: dict = {}


def permutation_braid(p: tuple) -> tuple:
    """Canonical positive permutation braid for ``p`` as crossing positions.

    Bubble-sorts the final arrangement (always swapping the leftmost
    inversion) and replays the swaps backwards.
    """
    hit = _PERM_BRAIDS.get(p)
    if hit is not None:
        return hit
    arrangement = list(inverse_perm(p))  # arrangement[pos-1] = strand there
    swaps = []
    while True:
        k = next((k for k in range(len(arrangement) - 1) if arrangement[k] > arrangement[k + 1]), None)
        if k is None:
            break
        arrangement[k], arrangement[k + 1] = arrangement[k + 1], arrangement[k]
        swaps.append(k + 1)
    result = tuple(reversed(swaps))
    _PERM_BRAIDS[p] = result
    return result


# -- pure letters as disc words ------------------------------------------

def expand_T(i: int, j: int, sign: int = 1) -> tuple:
    """T_{i,j} = t_{i,j} t_{i,j-1} ... t_{i,i+1}; T_{i,i} is trivial."""
    word = tuple(t(i, m) for m in range(j, i, -1))
    return word if sign > 0 else invert_letters(word)


def t_as_sigmas(i: int, j: int, sign: int = 1) -> tuple:
    """t_{i,j} = s_i ... s_{j-2} s_{j-1}^2 s_{j-2}^-1 ... s_i^-1."""
    word = tuple(S(k) for k in range(i, j - 1)) + (S(j - 1), S(j - 1)) + \
        tuple(S(k, -1) for k in range(j - 2, i - 1, -1))
    return word if sign > 0 else invert_letters(word)


def disc_letters(letters) -> tuple:
    """Rewrite t/T letters into crossings; other letters are kept."""
    out = []
    for x in letters:
        if x.kind == "t":
            out.extend(t_as_sigmas(x.i, x.j, x.sign))
        elif x.kind == "T":
            for y in expand_T(x.i, x.j, x.sign):
                out.extend(t_as_sigmas(y.i, y.j, y.sign))
        else:
            out.append(x)
    return tuple(out)


# -- Artin representation --------------------------------------------------

def artin_image(letters, n: int) -> tuple:
    """Images of x_1..x_n under the Artin action of a disc braid word.

    Free-group letters are codes ``2(k-1)`` for x_k and ``2(k-1)+1`` for its
    inverse.  sigma_i acts by x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.
    """
    from .freegroup import invert_word as finv, substitute

    images = {k: (2 * k,) for k in range(n)}
    for x in disc_letters(letters):
        if x.kind != "s":
            raise ValueError("Artin action is only defined for disc braids")
        k = x.i - 1
        if x.sign > 0:
            step = {k: (2 * k, 2 * (k + 1), 2 * k + 1), k + 1: (2 * k,)}
        else:
            step = {k: (2 * (k + 1),), k + 1: (2 * (k + 1) + 1, 2 * k, 2 * (k + 1))}
        # the word acts as the composite automorphism, earlier letters innermost
        images = {m: substitute(step.get(m, (2 * m,)), images) for m in range(n)}
    return tuple(images[m] for m in range(n))


# -- relation tables --------------------------------------------------------

class Relation(NamedTuple):
    name: str
    lhs: tuple
    rhs: tuple


def b_letter(i: int, m: int, sign: int = 1) -> Letter:
    """b_{i,m} is a_{i,m} for odd m and a_{i,m}^-1 for even m."""
    return A(i, m, sign if m % 2 else -sign)


def _chain(i: int, lo: int, hi: int, sign: int = 1) -> tuple:
    """t_{i,hi} t_{i,hi-1} ... t_{i,lo} (empty when hi < lo)."""
    word = tuple(t(i, m) for m in range(hi, lo - 1, -1))
    return word if sign > 0 else invert_letters(word)


def _conj(x, y) -> tuple:
    """x y x^-1 for letter tuples."""
    return tuple(x) + tuple(y) + invert_letters(x)


def relator_word(i: int, g: int) -> tuple:
    return tuple(A(i, r) for r in range(1, 2 * g + 1)) + tuple(A(i, r, -1) for r in range(1, 2 * g + 1))


def relation_table(n: int, g: int, corrected: bool = True) -> list:
    """The conjugation identities used as axioms for B_n(M).

    With ``corrected=False`` the odd-wall row of the ``a^-1 t a`` identity
    uses the conjugator a^-1(...)a literally; that row contradicts the other
    identities, and the default uses the consistent conjugator instead.
    """
    rels = []
    add = rels.append
    walls = range(1, 2 * g + 1)

    for k in range(1, n):
        sk = (S(k),)
        for i in range(1, n + 1):
            for r in walls:
                lhs = _conj(sk, (A(i, r),))
                if k == i:
                    rhs = (A(i + 1, r), t(i, i + 1, -1)) if r % 2 == 0 else (t(i, i + 1), A(i + 1, r))
                elif k == i - 1:
                    rhs = (t(i - 1, i), A(i - 1, r)) if r % 2 == 0 else (A(i - 1, r), t(i - 1, i, -1))
                else:
                    rhs = (A(i, r),)
                add(Relation("sigma-a k=%d i=%d r=%d" % (k, i, r), lhs, rhs))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                lhs = _conj(sk, (t(i, j),))
                if k == i - 1:
                    rhs = (t(i - 1, j),)
                elif k == i and j > i + 1:
                    rhs = _conj((t(i, i + 1),), (t(i + 1, j),))
                elif k == j - 1 and j > i + 1:
                    rhs = (t(i, j - 1),)
                elif k == j:
                    rhs = _conj((t(i, j, -1),), (t(i, j + 1),))
                else:
                    rhs = (t(i, j),)
                add(Relation("sigma-t k=%d i=%d j=%d" % (k, i, j), lhs, rhs))

    # a strand conjugating a chord that ends on it
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            chain = _chain(i, i + 1, j - 1)
            for r in walls:
                odd_form = _conj(chain, _conj((A(i, r, -1),), (t(i, j),)))
                even_form = _conj((A(i, r, -1),), _conj(invert_letters(chain), (t(i, j),)))
                swap_odd = _conj(chain, _conj((A(i, r),), (t(i, j),)))
                swap_even = _conj((A(i, r),), _conj(invert_letters(chain), (t(i, j),)))
                plus = odd_form if r % 2 else even_form
                minus = swap_even if r % 2 else swap_odd
                add(Relation("a-t own j=%d i=%d r=%d" % (j, i, r), _conj((A(j, r),), (t(i, j),)), plus))
                add(Relation("a^-1-t own j=%d i=%d r=%d" % (j, i, r),
                             _conj((A(j, r, -1),), (t(i, j),)), minus))

    # a strand conjugating a chord it does not touch
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                if i in (j, k):
                    continue
                for r in walls:
                    pa = _conj((A(i, r),), (t(j, k),))
                    ma = _conj((A(i, r, -1),), (t(j, k),))
                    tag = "i=%d j=%d k=%d r=%d" % (i, j, k, r)
                    if i < j or i > k:
                        add(Relation("a-t apart " + tag, pa, (t(j, k),)))
                        add(Relation("a^-1-t apart " + tag, ma, (t(j, k),)))
                        continue
                    twist = _conj((t(j, i, -1),), (t(j, k),))
                    inner = invert_letters(_chain(j, j + 1, i - 1)) + (t(j, i),) + _chain(j, j + 1, i - 1)
                    literal = _conj((A(j, r, -1),), inner)
                    consistent = _conj((b_letter(j, r),), inner)
                    alpha = consistent if corrected else literal
                    across = _conj(alpha, (t(j, k),))
                    if r % 2:
                        add(Relation("a-t across " + tag, pa, twist))
                        add(Relation("a^-1-t across " + tag, ma, across))
                    else:
                        add(Relation("a-t across " + tag, pa, across))
                        add(Relation("a^-1-t across " + tag, ma, twist))

    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            for r in walls:
                for e in (1, -1):
                    add(Relation("T-a i=%d j=%d r=%d e=%d" % (i, j, r, e),
                                 _conj((T(i, j),), (A(1, r, e),)), (A(1, r, e),)))
                    add(Relation("t-a i=%d j=%d r=%d e=%d" % (i, j, r, e),
                                 _conj((t(i, j),), (A(1, r, e),)), (A(1, r, e),)))
            for k in range(2, n + 1):
                lhs = _conj((T(i, j),), (T(1, k),))
                if k < i or k >= j:
                    rhs = (T(1, k),)
                else:
                    def TT(m, e=1):
                        return (T(1, m, e),) if m > 1 else ()
                    rhs = TT(i - 1) + TT(i, -1) + TT(k) + TT(j, -1) + TT(i) + TT(i - 1, -1) + TT(j)
                add(Relation("T-T i=%d j=%d k=%d" % (i, j, k), lhs, rhs))

    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if i == k:
                continue
            for r in walls:
                for s in walls:
                    bk, bi = b_letter(k, r), b_letter(i, s)
                    lhs = _conj((bk,), (bi,))
                    if s == r:
                        rhs = (bi,)
                    elif s < r and i < k:
                        rhs = (t(i, k, -1), bi)
                    elif s > r and i < k:
                        rhs = (bi,) + _conj((b_letter(i, r, -1),), (t(i, k),))
                    elif s < r and i > k:
                        rhs = (bi,) + _conj((b_letter(i, r, -1),), (t(k, i, -1),))
                    else:
                        rhs = (t(k, i), bi)
                    add(Relation("b-b k=%d i=%d r=%d s=%d" % (k, i, r, s), lhs, rhs))

    add(Relation("boundary T[1,n]", (T(1, n),) if n > 1 else (), relator_word(1, g)))
    for k in range(1, n):
        add(Relation("sigma square k=%d" % k, (S(k), S(k)), (t(k, k + 1),)))
    return rels
