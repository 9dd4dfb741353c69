"""Words in free groups over integer letter codes.

A generator with index ``k`` has letter codes ``2k`` (positive) and ``2k + 1``
(inverse), so ``code ^ 1`` is always the inverse letter.
"""


def letter_inv(c):
    return c ^ 1


def reduce_word(w):
    out = []
    for c in w:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def invert_word(w):
    return tuple(c ^ 1 for c in reversed(w))


def power(w, e):
    return w if e > 0 else invert_word(w)


def substitute(w, images):
    """Apply the endomorphism given by ``images[k]`` (image of generator k)."""
    out = []
    for c in w:
        img = images.get(c >> 1)
        if img is None:
            img = (c & ~1,)
        if c & 1:
            img = invert_word(img)
        for x in img:
            if out and out[-1] == x ^ 1:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def compose(outer, inner, gens):
    """Images of ``outer o inner`` on ``gens``."""
    return {k: substitute(inner.get(k, (2 * k,)), outer) for k in gens}


class NotAnAutomorphism(RuntimeError):
    pass


def invert_automorphism(images, gens):
    """Invert a free-group automorphism by Stallings folding.

    Each image word is laid out as a loop at a base vertex whose first edge
    carries the tag ``y_k`` (the formal preimage).  Folding keeps the tag of
    every closed path at the base by shifting vertex potentials, so once the
    graph is a rose the tag on the petal labelled ``g`` spells the preimage
    of ``g``.  Raises ``NotAnAutomorphism`` when the images are not a basis.
    """
    gens = list(gens)
    base = 0
    edges = {}  # id -> [src, gen, dst, tag]
    touching = {base: set()}
    fresh = 1
    eid = 0

    def add_edge(src, gen, dst, tag):
        nonlocal eid
        edges[eid] = [src, gen, dst, tag]
        touching.setdefault(src, set()).add(eid)
        touching.setdefault(dst, set()).add(eid)
        eid += 1

    for k in gens:
        word = reduce_word(images.get(k, (2 * k,)))
        if not word:
            raise NotAnAutomorphism("generator %d maps to the identity" % k)
        here = base
        for pos, c in enumerate(word):
            there = base if pos == len(word) - 1 else fresh
            if there != base:
                fresh += 1
            tag = (2 * k,) if pos == 0 else ()
            if c & 1:
                add_edge(there, c >> 1, here, invert_word(tag))
            else:
                add_edge(here, c >> 1, there, tag)
            here = there

    def shift(v, c):
        # new potential at v: paths through v keep their tags
        ci = invert_word(c)
        for e in touching[v]:
            src, gen, dst, tag = edges[e]
            if src == v:
                tag = ci + tag
            if dst == v:
                tag = tag + c
            edges[e][3] = reduce_word(tag)

    def merge(keep, drop):
        for e in touching.pop(drop):
            edge = edges[e]
            if edge[0] == drop:
                edge[0] = keep
            if edge[2] == drop:
                edge[2] = keep
            touching[keep].add(e)

    def find_fold():
        for v, inc in touching.items():
            seen = {}
            # a loop edge at v contributes both of its ends
            for e in inc:
                src, gen, dst, _ = edges[e]
                ends = []
                if src == v:
                    ends.append((gen, 1))
                if dst == v:
                    ends.append((gen, -1))
                for end in ends:
                    other = seen.get(end)
                    if other is not None and other != e:
                        return v, end, other, e
                    seen[end] = e
        return None

    while True:
        hit = find_fold()
        if hit is None:
            break
        v, (gen, d), e1, e2 = hit
        s1, _, t1, tag1 = edges[e1]
        s2, _, t2, tag2 = edges[e2]
        w1 = t1 if d == 1 else s1
        w2 = t2 if d == 1 else s2
        # orient both tags away from v
        o1 = tag1 if d == 1 else invert_word(tag1)
        o2 = tag2 if d == 1 else invert_word(tag2)
        if w1 != w2:
            if w2 == base:
                w1, w2, o1, o2, e1, e2 = w2, w1, o2, o1, e2, e1
            shift(w2, reduce_word(invert_word(o2) + o1))
            merge(w1, w2)
        elif o1 != o2:
            raise NotAnAutomorphism("images satisfy a relation")
        for end in (edges[e2][0], edges[e2][2]):
            touching[end].discard(e2)
        del edges[e2]

    if set(touching) != {base}:
        raise NotAnAutomorphism("images do not generate the whole group")
    inverse = {}
    for src, gen, dst, tag in edges.values():
        if gen in inverse:
            raise NotAnAutomorphism("duplicate petal")
        inverse[gen] = tag
    if sorted(inverse) != sorted(gens):
        raise NotAnAutomorphism("images do not generate the whole group")
    return inverse
