"""Tensor words over shifted algebras and maps between them.

A bar word is a tuple of entries; each entry is a width-r tuple of
algebra words (r = 1 for one algebra, r = 2, 3, ... for tensor
products of copies).  An entry contributes its word degree minus one:
the shift is where most of the signs below come from.  Expressions in
bar words are dicts keyed by (entries, sign monomials) exactly like
ordinary expressions, so they cancel the same way.

Entries whose every component is the unit word are dropped: words
containing them are identified with zero (reduced convention).

The pieces:

* bar_d: differential (entrywise derivations plus neighbor merges).
* bar_shuffle: the shuffle map into words over the tensor product,
  padding entries with units.
* bar_map: the word-level map of an operation family, summing over
  block decompositions.
* coalg_homotopy: the word-level homotopy associated with a family
  homotopy, with one homotopy block among map blocks.
* bar_tau: projection onto one-entry words (the cochain of a
  word-level map).
* mu_bar: the product on one-algebra bar words induced by the E
  operations directly: an entry a may stay, swallow a following run
  of b entries into E_m(a; b_1, ..., b_m), or a b entry may pass.
"""

from itertools import combinations
from itertools import product as iproduct

from .expr import EMPTY_SIGN, ex_add_into, eop_word
from .differential import differential
from .families import Family
from .signs import SignAccumulator, deg_sum, sign_xor
from .terms import UNIT_WORD, WORD_DEG


def entry_sdeg(entry):
    """Shifted degree of one entry."""
    return deg_sum([WORD_DEG[w] for w in entry] + [(1, frozenset())])


def _is_unit_entry(entry) -> bool:
    return all(w == UNIT_WORD for w in entry)


def bar_word(entries, coeff: int = 1) -> dict:
    entries = tuple(tuple(e) for e in entries)
    if any(_is_unit_entry(e) for e in entries):
        return {}
    return {(entries, EMPTY_SIGN): coeff}


def _emit(acc, entries, monos, coeff) -> None:
    if coeff == 0 or any(_is_unit_entry(e) for e in entries):
        return
    ex_add_into(acc, (entries, monos), coeff)


def bar_total_sdeg(entries):
    return deg_sum(entry_sdeg(e) for e in entries)


def bar_d(e: dict, mode: str = "reduced") -> dict:
    """Differential: shifted-Leibniz entry derivations plus merges."""
    from .expr import tuple_concat
    acc: dict = {}
    for (entries, ms), c in e.items():
        prefix = (0, frozenset())
        for i, entry in enumerate(entries):
            de = differential({(entry, EMPTY_SIGN): 1}, mode)
            if de:
                sign = SignAccumulator()
                sign.add_mul((1, frozenset()), prefix)
                bit, monos = sign.frozen()
                cc = -c if bit else c
                for (t2, m2), c2 in de.items():
                    _emit(acc, entries[:i] + (t2,) + entries[i + 1:],
                          sign_xor(ms, sign_xor(monos, m2)), cc * c2)
            prefix = deg_sum((prefix, entry_sdeg(entry)))
        prefix = (0, frozenset())
        for i in range(len(entries) - 1):
            prefix = deg_sum((prefix, entry_sdeg(entries[i])))
            bit, monos, merged = tuple_concat(entries[i], entries[i + 1])
            sign = SignAccumulator()
            sign.add(bit, monos)
            sign.add_mul((1, frozenset()), prefix)
            bit, monos = sign.frozen()
            _emit(acc, entries[:i] + (merged,) + entries[i + 2:],
                  sign_xor(ms, monos), -c if bit else c)
    return acc


def bar_shuffle(u: dict, v: dict, w1: int = 1, w2: int = 1) -> dict:
    """Shuffle of words over two algebras into words over their product.

    w1 and w2 are the entry widths of u and v; they cannot be read off
    the keys when a bar word is empty.
    """
    acc: dict = {}
    for (ue, m1), c1 in u.items():
        for (ve, m2), c2 in v.items():
            upad = tuple(e + (UNIT_WORD,) * w2 for e in ue)
            vpad = tuple((UNIT_WORD,) * w1 + e for e in ve)
            p, q = len(ue), len(ve)
            base = sign_xor(m1, m2)
            for upos in combinations(range(p + q), p):
                entries = []
                sign = SignAccumulator()
                ui, vi = 0, 0
                for t in range(p + q):
                    if ui < p and t == upos[ui]:
                        # this u entry crossed every v entry already placed
                        sign.add_mul(entry_sdeg(ue[ui]),
                                     deg_sum(entry_sdeg(x)
                                             for x in ve[:vi]))
                        entries.append(upad[ui])
                        ui += 1
                    else:
                        entries.append(vpad[vi])
                        vi += 1
                bit, monos = sign.frozen()
                _emit(acc, tuple(entries), sign_xor(base, monos),
                      -c1 * c2 if bit else c1 * c2)
    return acc


def bar_shuffle_many(us, widths=None) -> dict:
    us = list(us)
    widths = list(widths) if widths is not None else [1] * len(us)
    out = None
    wout = 0
    for u, w in zip(us, widths):
        out = u if out is None else bar_shuffle(out, u, wout, w)
        wout += w
    if out is None:
        raise ValueError("empty shuffle")
    return out


def _block_sign(chunk):
    """Sign dressing one block of a word-level map.

    Unshifting k entries passes the i-th (1-indexed) entry by k - i
    shift maps; the component applied to the unshifted block and the
    final reshift of its value contribute the constant k(k+1)/2 + 1.
    The constant's +1 per block accounts for the blocks being odd
    before the reshift, which is what makes decompositions with
    different block counts cancel each other.
    """
    sign = SignAccumulator()
    k = len(chunk)
    for i, entry in enumerate(chunk):
        sign.add_mul((k - 1 - i, frozenset()), entry_sdeg(entry))
    sign.add_const(k * (k + 1) // 2 + 1)
    return sign


def _compositions_pos(n: int):
    """Ordered decompositions of n into positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions_pos(n - first):
            yield (first,) + rest


def bar_map(f: Family):
    """Word-level map of a family: sum over block decompositions."""

    def apply(e: dict) -> dict:
        acc: dict = {}
        for (entries, ms), c in e.items():
            n = len(entries)
            if n == 0:
                _emit(acc, (), ms, c)
                continue
            for parts in _compositions_pos(n):
                chunks = []
                at = 0
                for k in parts:
                    chunks.append(entries[at:at + k])
                    at += k
                vals = []
                sign = SignAccumulator()
                for chunk in chunks:
                    val = f.comp(len(chunk), chunk)
                    if not val:
                        break
                    vals.append(val)
                    bit, monos = _block_sign(chunk).frozen()
                    sign.add(bit, monos)
                else:
                    bit, monos = sign.frozen()
                    base = sign_xor(ms, monos)
                    cc = -c if bit else c
                    for combo in iproduct(*(v.items() for v in vals)):
                        coeff = cc
                        mall = base
                        out = []
                        for (wt, m2), c2 in combo:
                            coeff *= c2
                            mall = sign_xor(mall, m2)
                            out.append(wt)
                        _emit(acc, tuple(out), mall, coeff)
        return acc

    return apply


def coalg_homotopy(h: Family, f: Family, g: Family):
    """Word-level homotopy: one h block among f blocks (left) and g
    blocks (right).  The h block is odd, so it picks up the shifted
    degree of everything to its left."""

    def apply(e: dict) -> dict:
        acc: dict = {}
        for (entries, ms), c in e.items():
            n = len(entries)
            if n == 0:
                continue
            for parts in _compositions_pos(n):
                chunks = []
                at = 0
                for k in parts:
                    chunks.append(entries[at:at + k])
                    at += k
                for t in range(len(parts)):
                    vals = []
                    sign = SignAccumulator()
                    pre = (0, frozenset())
                    ok = True
                    for j, chunk in enumerate(chunks):
                        fam = f if j < t else (h if j == t else g)
                        val = fam.comp(len(chunk), chunk)
                        if not val:
                            ok = False
                            break
                        vals.append(val)
                        bit, monos = _block_sign(chunk).frozen()
                        sign.add(bit, monos)
                        if j < t:
                            pre = deg_sum([pre] +
                                          [entry_sdeg(x) for x in chunk])
                    if not ok:
                        continue
                    sign.add_mul((1, frozenset()), pre)
                    bit, monos = sign.frozen()
                    base = sign_xor(ms, monos)
                    cc = -c if bit else c
                    for combo in iproduct(*(v.items() for v in vals)):
                        coeff = cc
                        mall = base
                        out = []
                        for (wt, m2), c2 in combo:
                            coeff *= c2
                            mall = sign_xor(mall, m2)
                            out.append(wt)
                        _emit(acc, tuple(out), mall, coeff)
        return acc

    return apply


def bar_tau(e: dict) -> dict:
    """One-entry part, as an ordinary expression over slot tuples."""
    out: dict = {}
    for (entries, ms), c in e.items():
        if len(entries) == 1:
            ex_add_into(out, (entries[0], ms), c)
    return out


def mu_bar(u: dict, v: dict) -> dict:
    """Product of one-algebra bar words from the E operations."""
    acc: dict = {}
    for (ue, m1), c1 in u.items():
        for (ve, m2), c2 in v.items():
            base = sign_xor(m1, m2)
            _mu_walk(acc, ue, ve, base, c1 * c2)
    return acc


def _mu_walk(acc, ue, ve, monos, coeff):
    """Enumerate block interleavings of one pair of bar words."""
    k, l = len(ue), len(ve)

    def rec(i, j, out, sign: SignAccumulator, cur: int):
        if i == k and j == l:
            bit, ms = sign.frozen()
            for combo_entries, combo_monos, combo_coeff in _expand_out(out):
                _emit(acc, combo_entries, sign_xor(monos, combo_monos),
                      (-cur if bit else cur) * combo_coeff)
            return
        # a b entry passes through
        if j < l:
            s2 = sign.copy()
            s2.add_mul(entry_sdeg(ve[j]),
                       deg_sum(entry_sdeg(e) for e in ue[i:]))
            rec(i, j + 1, out + [("w", ve[j])], s2, cur)
        if i < k:
            # a alone
            rec(i + 1, j, out + [("w", ue[i])], sign, cur)
            # a swallows a run of following b entries
            for m in range(1, l - j + 1):
                s2 = sign.copy()
                chunk = ve[j:j + m]
                s2.add_mul(deg_sum(entry_sdeg(e) for e in chunk),
                           deg_sum(entry_sdeg(e) for e in ue[i + 1:]))
                blk = _block_sign((ue[i],) + chunk)
                s2.add(*blk.frozen())
                rec(i + 1, j + m, out + [("E", ue[i], chunk)], s2, cur)

    rec(0, 0, [], SignAccumulator(), coeff)


def _expand_out(out):
    """Resolve E blocks (which may be sums) into concrete entries."""
    parts = []
    for item in out:
        if item[0] == "w":
            parts.append({(item[1], EMPTY_SIGN): 1})
        else:
            _, aentry, chunk = item
            val = eop_word(aentry[0], tuple(e[0] for e in chunk))
            if not val:
                return
            parts.append(val)
    for combo in iproduct(*(p.items() for p in parts)):
        coeff = 1
        monos = EMPTY_SIGN
        entries = []
        for (wt, m2), c2 in combo:
            coeff *= c2
            monos = sign_xor(monos, m2)
            entries.append(wt)
        yield tuple(entries), monos, coeff
