"""Term recipes: the shared layout data behind both sign engines.

A family component is generated as a list of recipes.  A recipe is a pair
``(display_bit, product)`` where ``product`` is a list of tree nodes:

    ("leaf", slot, comp)            an input element
    ("E", head_node, [product, ...])  E_k, k = number of argument products
    ("F", [product, ...], [product, ...])

The displayed sign of the source formula is ``display_bit``; everything the
Koszul rule adds is derived from the textual walk of the tree.  Maps pick up
the elements standing before them; element pairs whose textual order inverts
their arrival order pick up each other.  Arrival order is the inputs in
listed order with tuple components expanded in order.

``recipe_to_expr`` evaluates through the polynomial sign engine and the
normalizing rewrites; ``recipe_numeric`` is the independent integer twin
used by the engine crosscheck (it refuses inputs that would trigger a
rewrite).
"""

from __future__ import annotations

from .signs import SignAccumulator, deg_sum
from .terms import (FACTOR_DATA, UNIT_WORD, WORD_DATA, WORD_DEG, f_eop,
                    f_fop, word, word_concat)
from .expr import (InternalInvariantError, e_op, ex_merge_into, ex_mul_many,
                   ex_word, layout_sign)


def _ranks(slots):
    ranks = {}
    r = 0
    for i, slot in enumerate(slots):
        for j in range(len(slot)):
            ranks[(i, j)] = r
            r += 1
    return ranks


def _node_layout(node, slots, ranks, out: list) -> None:
    kind = node[0]
    if kind == "leaf":
        _, i, j = node
        out.append(("e", ranks[(i, j)], WORD_DEG[slots[i][j]]))
        return
    if kind == "E":
        _, head, args = node
        out.append(("m", (len(args), frozenset())))
        _node_layout(head, slots, ranks, out)
        for prod in args:
            for sub in prod:
                _node_layout(sub, slots, ranks, out)
        return
    if kind == "F":
        _, arows, brows = node
        out.append(("m", (len(arows) + len(brows), frozenset())))
        for prod in arows + brows:
            for sub in prod:
                _node_layout(sub, slots, ranks, out)
        return
    raise InternalInvariantError(kind)


def _node_expr(node, slots) -> dict:
    kind = node[0]
    if kind == "leaf":
        return ex_word(slots[node[1]][node[2]])
    if kind == "E":
        _, head, args = node
        return e_op(_node_expr(head, slots),
                    [_prod_expr(p, slots) for p in args])
    if kind == "F":
        _, arows, brows = node
        k, l = len(arows), len(brows)
        rows = [_prod_expr(p, slots) for p in arows + brows]
        acc: dict = {}
        _f_multilinear(acc, rows, k, l)
        return acc
    raise InternalInvariantError(kind)


def _prod_expr(prod, slots) -> dict:
    if not prod:
        return ex_word(UNIT_WORD)
    return ex_mul_many(_node_expr(n, slots) for n in prod)


def _f_multilinear(acc: dict, rows, k: int, l: int) -> None:
    def rec(i, wids, coeff, monos):
        if i == len(rows):
            fid = f_fop(k, l, wids[:k], wids[k:])
            if fid is not None:
                from .expr import ex_add_into
                ex_add_into(acc, ((word((fid,)),), monos), coeff)
            return
        for (wt, ms), c in rows[i].items():
            m2 = monos ^ ms if ms else monos
            rec(i + 1, wids + [wt[0]], coeff * c, m2)
    rec(0, [], 1, frozenset())


def recipe_to_expr(recipe, slots) -> dict:
    display_bit, product = recipe
    ranks = _ranks(slots)
    layout: list = []
    for node in product:
        _node_layout(node, slots, ranks, layout)
    bit, monos = layout_sign(layout)
    bit ^= display_bit & 1
    val = _prod_expr(product, slots)
    acc: dict = {}
    ex_merge_into(acc, val, 1, bit, monos)
    return acc


def recipes_to_expr(recipes, slots) -> dict:
    acc: dict = {}
    for r in recipes:
        ex_merge_into(acc, recipe_to_expr(r, slots), 1)
    return acc


# ---------------------------------------------------------------------------
# integer twin


def _num_word_deg(wid: int, odd: frozenset) -> int:
    total = 0
    for fid in WORD_DATA[wid]:
        total += _num_factor_deg(fid, odd)
    return total & 1


def _num_factor_deg(fid: int, odd: frozenset) -> int:
    key = FACTOR_DATA[fid]
    kind = key[0]
    if kind == "g":
        return 1 if key[1] in odd else 0
    if kind == "d":
        return (1 if key[1] in odd else 0) ^ 1
    if kind == "E":
        t = len(key[2]) + _num_factor_deg(key[1], odd)
        for w in key[2]:
            t += _num_word_deg(w, odd)
        return t & 1
    if kind == "F":
        t = key[1] + key[2]
        for w in key[3] + key[4]:
            t += _num_word_deg(w, odd)
        return t & 1
    if kind == "pw":
        return 0
    if kind == "fs":
        return (1 - key[1]) & 1
    raise InternalInvariantError(kind)


def _num_node(node, slots, odd):
    """Returns (wid, parity).  No rewrites allowed: heads must be atomic."""
    kind = node[0]
    if kind == "leaf":
        wid = slots[node[1]][node[2]]
        return wid, _num_word_deg(wid, odd)
    if kind == "E":
        _, head, args = node
        hw, _ = _num_node(head, slots, odd)
        if len(WORD_DATA[hw]) != 1 or FACTOR_DATA[WORD_DATA[hw][0]][0] not in ("g", "pw", "d"):
            raise InternalInvariantError("numeric twin saw a composite head")
        arg_wids = [_num_prod(p, slots, odd)[0] for p in args]
        if any(w == UNIT_WORD for w in arg_wids):
            return None, 0
        fid = f_eop(WORD_DATA[hw][0], arg_wids)
        if fid is None:
            return None, 0
        w = word((fid,))
        return w, _num_word_deg(w, odd)
    if kind == "F":
        _, arows, brows = node
        wids = [_num_prod(p, slots, odd)[0] for p in arows + brows]
        if any(w is None or w == UNIT_WORD for w in wids):
            return None, 0
        fid = f_fop(len(arows), len(brows), wids[:len(arows)], wids[len(arows):])
        if fid is None:
            return None, 0
        w = word((fid,))
        return w, _num_word_deg(w, odd)
    raise InternalInvariantError(kind)


def _num_prod(prod, slots, odd):
    w = UNIT_WORD
    for node in prod:
        nw, _ = _num_node(node, slots, odd)
        if nw is None:
            return None, 0
        w = word_concat(w, nw)
    return w, _num_word_deg(w, odd)


def _num_layout(node, slots, ranks, odd, out: list) -> None:
    kind = node[0]
    if kind == "leaf":
        _, i, j = node
        out.append(("e", ranks[(i, j)], _num_word_deg(slots[i][j], odd)))
        return
    if kind == "E":
        out.append(("m", len(node[2]) & 1))
        _num_layout(node[1], slots, ranks, odd, out)
        for prod in node[2]:
            for sub in prod:
                _num_layout(sub, slots, ranks, odd, out)
        return
    if kind == "F":
        _, arows, brows = node
        out.append(("m", (len(arows) + len(brows)) & 1))
        for prod in arows + brows:
            for sub in prod:
                _num_layout(sub, slots, ranks, odd, out)
        return
    raise InternalInvariantError(kind)


def recipe_numeric(recipe, slots, odd: frozenset):
    """(word or None, coefficient) at one parity assignment."""
    display_bit, product = recipe
    ranks = _ranks(slots)
    layout: list = []
    for node in product:
        _num_layout(node, slots, ranks, odd, layout)
    bit = display_bit & 1
    seen: list = []
    for item in layout:
        if item[0] == "m":
            if item[1]:
                for _, p in seen:
                    bit ^= p
        else:
            _, rank, p = item
            for r2, p2 in seen:
                if r2 > rank:
                    bit ^= p & p2
            seen.append((rank, p))
    w, _ = _num_prod(product, slots, odd)
    if w is None:
        return None, 0
    return w, -1 if bit else 1
