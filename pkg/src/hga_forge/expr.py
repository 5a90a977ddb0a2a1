"""Signed expressions and the normalizing operadic rewrites.

An expression is ``dict[(wtuple, monos) -> int]`` where ``wtuple`` is a tuple
of word ids (length = tensor arity, usually 1) and ``monos`` is the sign
polynomial attached to the term (a frozenset, see signs.py).  Zero
coefficients are never stored, so an identity holds iff the dict is empty.

``e_op`` is the only way E operations enter a word: it rewrites composite
heads on the fly (product heads split across the arguments, E heads compose)
until every E factor in the result has an atomic head.  The head size is a
strictly decreasing measure across the recursion; a non-decreasing step
raises InternalInvariantError.
"""

from __future__ import annotations

from itertools import product as iproduct

from .signs import EMPTY_SIGN, SignAccumulator, deg_sum, sign_mul, sign_xor
from .terms import (FACTOR_DATA, FACTOR_DEG, UNIT_WORD, WORD_DATA, WORD_DEG,
                    f_eop, f_pow, word, word_concat)


class InternalInvariantError(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class TermBudget:
    """Counts term insertions across one check; trips past the ceiling."""

    __slots__ = ("count", "limit")

    def __init__(self, limit: int):
        self.count = 0
        self.limit = limit

    def tick(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise BudgetExceeded(f"term budget of {self.limit} exceeded")


_BUDGET: list = []


def set_budget(b: TermBudget | None) -> None:
    _BUDGET.clear()
    if b is not None:
        _BUDGET.append(b)


def ex_zero() -> dict:
    return {}


def ex_word(wid: int, coeff: int = 1, monos: frozenset = EMPTY_SIGN) -> dict:
    if coeff == 0:
        return {}
    return {((wid,), monos): coeff}


def ex_add_into(acc: dict, key, coeff: int) -> None:
    if coeff == 0:
        return
    if _BUDGET:
        _BUDGET[0].tick()
    c = acc.get(key, 0) + coeff
    if c:
        acc[key] = c
    else:
        del acc[key]


def ex_merge_into(acc: dict, e: dict, coeff: int = 1,
                  bit: int = 0, monos: frozenset = EMPTY_SIGN) -> None:
    c0 = -coeff if bit & 1 else coeff
    for (wt, ms), c in e.items():
        ex_add_into(acc, (wt, sign_xor(ms, monos)), c * c0)


def ex_add(e1: dict, e2: dict) -> dict:
    acc = dict(e1)
    for key, c in e2.items():
        ex_add_into(acc, key, c)
    return acc


def ex_sub(e1: dict, e2: dict) -> dict:
    acc = dict(e1)
    for key, c in e2.items():
        ex_add_into(acc, key, -c)
    return acc


def ex_scale(e: dict, coeff: int, bit: int = 0,
             monos: frozenset = EMPTY_SIGN) -> dict:
    acc: dict = {}
    ex_merge_into(acc, e, coeff, bit, monos)
    return acc


def tuple_deg(wt):
    return deg_sum(WORD_DEG[w] for w in wt)


def tuple_concat(t1, t2):
    """Componentwise product of tuples with the Koszul crossing sign."""
    r = len(t1)
    if len(t2) != r:
        raise InternalInvariantError("tensor arity mismatch")
    sign = SignAccumulator()
    for i in range(r):
        for j in range(i + 1, r):
            sign.add_mul(WORD_DEG[t2[i]], WORD_DEG[t1[j]])
    wt = tuple(word_concat(t1[i], t2[i]) for i in range(r))
    bit, monos = sign.frozen()
    return bit, monos, wt


def ex_mul(e1: dict, e2: dict) -> dict:
    acc: dict = {}
    for (t1, m1), c1 in e1.items():
        for (t2, m2), c2 in e2.items():
            bit, monos, wt = tuple_concat(t1, t2)
            c = c1 * c2
            if bit:
                c = -c
            ex_add_into(acc, (wt, sign_xor(sign_xor(m1, m2), monos)), c)
    return acc


def ex_mul_many(es) -> dict:
    acc = None
    for e in es:
        acc = e if acc is None else ex_mul(acc, e)
    if acc is None:
        raise ValueError("empty product")
    return acc


def _word_size(wid: int) -> int:
    return sum(_factor_size(f) for f in WORD_DATA[wid])


def _factor_size(fid: int) -> int:
    key = FACTOR_DATA[fid]
    kind = key[0]
    if kind == "E":
        return 1 + _factor_size(key[1]) + sum(_word_size(w) for w in key[2])
    if kind == "F":
        return 1 + sum(_word_size(w) for w in key[3] + key[4])
    if kind == "pw":
        return key[2]
    return 1


def eop_word(head_wid: int, arg_wids, bound: float = float("inf")) -> dict:
    """E_k(head word; arg words) in normal form.  k = 0 is the identity."""
    args = tuple(arg_wids)
    if not args:
        return ex_word(head_wid)
    if any(w == UNIT_WORD for w in args):
        return {}
    if head_wid == UNIT_WORD:
        return {}
    size = _word_size(head_wid)
    if size >= bound:
        raise InternalInvariantError("rewrite measure failed to decrease")
    factors = WORD_DATA[head_wid]
    if len(factors) > 1:
        return _split_head(word(factors[:1]), word(factors[1:]), args, size)
    key = FACTOR_DATA[factors[0]]
    if key[0] == "pw" and key[2] >= 2:
        # a power head is itself a product; keep peeling one generator
        x1 = word((f_pow(key[1], 1),))
        x2 = word((f_pow(key[1], key[2] - 1),))
        return _split_head(x1, x2, args, size)
    if key[0] in ("g", "pw", "d"):
        fid = f_eop(factors[0], args)
        if fid is None:
            return {}
        return ex_word(word((fid,)))
    if key[0] == "E":
        return _compose_eops(key, args, size)
    raise InternalInvariantError(f"factor kind {key[0]!r} cannot head an E")


def _split_head(x1: int, x2: int, args, size) -> dict:
    """E_k(X1 X2; args) = sum of E(X1; front) E(X2; back) with Koszul sign."""
    d1 = WORD_DEG[x1]
    d2 = WORD_DEG[x2]
    k = len(args)
    acc: dict = {}
    for k1 in range(k + 1):
        front, back = args[:k1], args[k1:]
        dfront = deg_sum(WORD_DEG[w] for w in front)
        k2 = k - k1
        sign = SignAccumulator()
        sign.add_mul((k2, frozenset()), deg_sum((d1, dfront)))
        sign.add_mul(d2, dfront)
        left = eop_word(x1, front, size)
        right = eop_word(x2, back, size)
        if not left or not right:
            continue
        bit, monos = sign.frozen()
        ex_merge_into(acc, ex_mul(left, right), 1, bit, monos)
    return acc


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _compose_eops(key, cargs, size) -> dict:
    """E_l(E_k(h; B); c) expanded into single-head E terms."""
    _, h_fid, bargs = key
    k = len(bargs)
    l = len(cargs)
    hdeg = FACTOR_DEG[h_fid]
    bdegs = [WORD_DEG[w] for w in bargs]
    cdegs = [WORD_DEG[w] for w in cargs]
    acc: dict = {}
    for comp in _compositions(l, 2 * k + 1):
        j = (comp[0],) + comp[2::2]
        i = comp[1::2]
        n = k + sum(j)
        sign = SignAccumulator()
        for s in range(1, k + 1):
            sign.add_const(i[s - 1] * (k + sum(j[s:])))
        for t in range(1, k + 1):
            sign.add_const(t * j[t])
        # display Koszul: arrival order is (h, B_1..B_k, c_1..c_l)
        layout: list = []
        layout.append(("m", (n, frozenset())))
        layout.append(("e", 0, hdeg))
        pos = 0
        for m in range(j[0]):
            layout.append(("e", 1 + k + pos, cdegs[pos]))
            pos += 1
        blocks = []
        for s in range(1, k + 1):
            layout.append(("m", (i[s - 1], frozenset())))
            layout.append(("e", s, bdegs[s - 1]))
            inner = cargs[pos:pos + i[s - 1]]
            for m in range(i[s - 1]):
                layout.append(("e", 1 + k + pos, cdegs[pos]))
                pos += 1
            outer = cargs[pos:pos + j[s]]
            for m in range(j[s]):
                layout.append(("e", 1 + k + pos, cdegs[pos]))
                pos += 1
            blocks.append((inner, outer))
        bit, monos = layout_sign(layout)
        sign.add(bit, monos)
        subs = []
        for s in range(1, k + 1):
            inner, _ = blocks[s - 1]
            if inner:
                subs.append(eop_word(bargs[s - 1], inner, size))
            else:
                subs.append(ex_word(bargs[s - 1]))
        if not all(subs):
            continue
        sbit, smonos = sign.frozen()
        for combo in iproduct(*(s.items() for s in subs)):
            coeff = 1
            ms = smonos
            vals = []
            for (wt, m), c in combo:
                coeff *= c
                ms = sign_xor(ms, m)
                vals.append(wt[0])
            outer_args = list(cargs[:j[0]])
            for s in range(1, k + 1):
                outer_args.append(vals[s - 1])
                _, outer = blocks[s - 1]
                outer_args.extend(outer)
            fid = f_eop(h_fid, outer_args)
            if fid is None:
                continue
            if sbit:
                coeff = -coeff
            ex_add_into(acc, ((word((fid,)),), ms), coeff)
    return acc


def layout_sign(layout):
    """Koszul exponent of a displayed line.

    Items are ('m', deg) for maps and ('e', arrival_rank, deg) for elements
    in textual order.  A map picks up every element standing before it; two
    elements whose textual order inverts their arrival order pick up each
    other.
    """
    sign = SignAccumulator()
    seen: list = []
    for item in layout:
        if item[0] == "m":
            for dd in seen:
                sign.add_mul(dd[1], item[1])
        else:
            _, rank, dd = item
            for r2, d2 in seen:
                if r2 > rank:
                    sign.add_mul(d2, dd)
            seen.append((rank, dd))
    return sign.frozen()


def e_op(head: dict, args) -> dict:
    """Multilinear E operation on expressions (arity len(args))."""
    acc: dict = {}
    arg_items = [list(a.items()) for a in args]
    for (ht, hm), hc in head.items():
        if len(ht) != 1:
            raise InternalInvariantError("E head must have tensor arity 1")
        for combo in iproduct(*arg_items):
            coeff = hc
            ms = hm
            wids = []
            for (wt, m), c in combo:
                if len(wt) != 1:
                    raise InternalInvariantError("E args must have arity 1")
                coeff *= c
                ms = sign_xor(ms, m)
                wids.append(wt[0])
            ex_merge_into(acc, eop_word(ht[0], wids), coeff, 0, ms)
    return acc


def normalize(e: dict) -> dict:
    """Re-walk an expression through the rewrites.  Idempotent."""
    acc: dict = {}
    for (wt, ms), c in e.items():
        cur = None
        for wid in wt:
            ew = _normalize_word(wid)
            one = {}
            for (t2, m2), c2 in ew.items():
                one[(t2, m2)] = c2
            cur = one if cur is None else _tensor(cur, one)
        if cur is None:
            cur = {((), EMPTY_SIGN): 1}
        ex_merge_into(acc, cur, c, 0, ms)
    return acc


def _tensor(e1: dict, e2: dict) -> dict:
    acc: dict = {}
    for (t1, m1), c1 in e1.items():
        for (t2, m2), c2 in e2.items():
            ex_add_into(acc, (t1 + t2, sign_xor(m1, m2)), c1 * c2)
    return acc


def _normalize_word(wid: int) -> dict:
    out = ex_word(UNIT_WORD)
    for fid in WORD_DATA[wid]:
        key = FACTOR_DATA[fid]
        if key[0] == "E":
            part = _eop_renorm(key)
        else:
            part = ex_word(word((fid,)))
        out = ex_mul(out, part)
    return out


def _eop_renorm(key) -> dict:
    _, h_fid, args = key
    acc: dict = {}
    head = ex_word(word((h_fid,)))
    arg_exprs = [_normalize_word(w) for w in args]
    for (ht, hm), hc in head.items():
        for combo in iproduct(*(a.items() for a in arg_exprs)):
            coeff = hc
            ms = hm
            wids = []
            for (wt, m), c in combo:
                coeff *= c
                ms = sign_xor(ms, m)
                wids.append(wt[0])
            ex_merge_into(acc, eop_word(ht[0], wids), coeff, 0, ms)
    return acc


def render_expr(e: dict) -> str:
    """Stable text form, one summand per line, sorted by rendered word."""
    from .terms import render_sign, render_word
    lines = []
    for (wt, monos), c in e.items():
        body = " | ".join(render_word(w) for w in wt)
        sgn = render_sign(monos) if monos else ""
        line = f"{c:+d} {body}" + (f" {sgn}" if sgn else "")
        lines.append((body, sgn, line))
    lines.sort()
    return "\n".join(line for _, _, line in lines)
