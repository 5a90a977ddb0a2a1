"""The explicit structure maps: the product family, its homotopies for
commutation of factors, and the induced cup products.

All components are generated as recipes (see recipes.py) so that both sign
engines can consume them.  Index conventions:

* phi: components (A x A)^n -> A.  Summands are indexed by ballot
  sequences (j_1, ..., j_n) with sum n - 1 and j_1 + ... + j_s < s; the
  s-th head consumes the next j_s second-components, and the last
  second-component trails.  Catalan many summands, global display sign
  (-1)^(n-1).

* hc: two orientations.  "fwd" starts from the transposed product, "rev"
  ends there; they are mirror images under swapping the slot components
  and the two argument rows of F.
"""

from __future__ import annotations

from .expr import ex_merge_into, ex_scale, eop_word, ex_word
from .terms import f_fop, word
from .families import (Family, compose, family_from_recipes,
                       precompose_strict, tensor_with_id, transpose_family)


def ballot_sequences(n: int, total: int):
    """Sequences (j_1..j_n) >= 0 with sum `total`, prefixes j_1+..+j_s < s."""
    out: list = []

    def rec(prefix, ssum):
        s = len(prefix)
        if s == n:
            if ssum == total:
                out.append(tuple(prefix))
            return
        room = s + 1 - 1 - ssum  # j_{s+1} <= s - sum so far
        for j in range(0, min(room, total - ssum) + 1):
            rec(prefix + [j], ssum + j)

    rec([], 0)
    return out


def phi_recipes(n: int):
    """Recipes for the n-th component of the product family."""
    if n < 1:
        return []
    out = []
    for js in ballot_sequences(n, n - 1):
        prod = []
        pos = 0
        for s in range(n):
            if js[s] == 0:
                prod.append(("leaf", s, 0))
            else:
                args = [[("leaf", pos + t, 1)] for t in range(js[s])]
                prod.append(("E", ("leaf", s, 0), args))
                pos += js[s]
        prod.append(("leaf", n - 1, 1))
        out.append(((n - 1) & 1, prod))
    return out


def compositions(total: int, parts: int):
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, rest):
        if len(prefix) == parts - 1:
            out.append(tuple(prefix) + (rest,))
            return
        for v in range(rest + 1):
            rec(prefix + [v], rest - v)

    rec([], total)
    return out


def hc_recipes(n: int, orientation: str = "fwd"):
    """Recipes for the homotopy between the product and its transpose.

    'fwd' runs from the transposed product to the product; 'rev' the other
    way.  'rev' is the mirror of 'fwd' under swapping the two components of
    every slot and the two argument rows of F.
    """
    if orientation == "fwd":
        H, A = 0, 1  # heads take first components, arguments second
    elif orientation == "rev":
        H, A = 1, 0
    else:
        raise ValueError(orientation)
    out = []
    # first sum: all heads on one side
    for js in compositions(n, n):
        prod = []
        pos = 0
        for s in range(n):
            if js[s] == 0:
                prod.append(("leaf", s, H))
            else:
                args = [[("leaf", pos + t, A)] for t in range(js[s])]
                prod.append(("E", ("leaf", s, H), args))
                pos += js[s]
        out.append((0, prod))
    # second sum: leading group with opposite heads, one F, trailing group
    for q in range(1, n):
        p = n - q
        for iseq in _prefix_seqs(q):
            si = sum(iseq)
            k = q - si
            if k < 1:
                continue
            trailing = [(jseq, p - tsum) for tsum in range(p)
                        for jseq in compositions(tsum, p)]
            for jseq, l in trailing:
                prod = []
                pos = 0  # consumed opposite-side elements
                for t in range(q):
                    if iseq[t] == 0:
                        prod.append(("leaf", t, A))
                    else:
                        args = [[("leaf", pos + u, H)] for u in range(iseq[t])]
                        prod.append(("E", ("leaf", t, A), args))
                        pos += iseq[t]
                # F's first row continues the head side, second row the
                # argument side; the stated sum conditions only balance
                # this way
                hrow = [[("leaf", pos + u, H)] for u in range(k)]
                arow = [[("leaf", q + u, A)] for u in range(l)]
                prod.append(("F", hrow, arow))
                pos2 = q + l
                for s in range(p):
                    if jseq[s] == 0:
                        prod.append(("leaf", q + s, H))
                    else:
                        args = [[("leaf", pos2 + u, A)] for u in range(jseq[s])]
                        prod.append(("E", ("leaf", q + s, H), args))
                        pos2 += jseq[s]
                out.append((1, prod))
    return out


def _prefix_seqs(q: int):
    """Sequences (i_1..i_q) >= 0 with all prefix sums i_1+..+i_t < t."""
    out: list = []

    def rec(prefix, ssum):
        t = len(prefix)
        if t == q:
            out.append(tuple(prefix))
            return
        for v in range(t + 1 - ssum):
            rec(prefix + [v], ssum + v)

    rec([], 0)
    return out


def phi_family() -> Family:
    return family_from_recipes("phi", "map", 2, phi_recipes)


def hc_family(orientation: str) -> Family:
    return family_from_recipes(f"hc-{orientation}", "homotopy", 2,
                               lambda n: hc_recipes(n, orientation))


def phi_assoc_left() -> Family:
    """phi o (phi x 1) on triple slots."""
    phi = phi_family()
    return compose(phi, tensor_with_id(phi, "right"), name="phi(phix1)")


def phi_assoc_right() -> Family:
    phi = phi_family()
    return compose(phi, tensor_with_id(phi, "left"), name="phi(1xphi)")


def phi_transposed() -> Family:
    phi = phi_family()
    return precompose_strict(phi, transpose_family(), name="phiT")


def cup1(a_wid: int, b_wid: int) -> dict:
    """The degree -1 product extracted from the stage-2 component."""
    return ex_scale(eop_word(a_wid, (b_wid,)), -1)


def cup2(a_wid: int, b_wid: int) -> dict:
    """The degree -2 product: minus the first extended operation."""
    fid = f_fop(1, 1, (a_wid,), (b_wid,))
    if fid is None:
        return {}
    return ex_scale(ex_word(word((fid,))), -1)


def cup2_from_homotopy(a_wid: int, b_wid: int) -> dict:
    """Derive the degree -2 product from the commutation homotopy."""
    from .signs import SignAccumulator
    from .terms import UNIT_WORD, WORD_DEG
    h = hc_family("rev")
    acc: dict = {}
    t1 = h.comp(2, ((UNIT_WORD, b_wid), (a_wid, UNIT_WORD)))
    sign = SignAccumulator()
    sign.add_mul(WORD_DEG[a_wid], WORD_DEG[b_wid])
    bit, monos = sign.frozen()
    ex_merge_into(acc, t1, 1, bit, monos)
    t2 = h.comp(2, ((a_wid, UNIT_WORD), (UNIT_WORD, b_wid)))
    ex_merge_into(acc, t2, -1)
    # the two cup1 correction terms vanish: the stage-1 component kills
    # slots containing the unit
    return acc


def bar_product_cochain(a_wids, b_wids) -> dict:
    """Twisting cochain of the multiplication on the bar construction."""
    k, l = len(a_wids), len(b_wids)
    if (k, l) == (1, 0):
        return ex_word(a_wids[0])
    if (k, l) == (0, 1):
        return ex_word(b_wids[0])
    if k == 1 and l >= 1:
        return eop_word(a_wids[0], b_wids)
    return {}
