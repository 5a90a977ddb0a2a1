"""The differential on normalized expressions.

Two modes.  In "reduced" mode generator differentials are zero and only the
operadic structure part acts (E and F factors have the displayed boundary
formulas, powers and family symbols their own rules).  In "formal" mode a
generator g additionally contributes a formal symbol d(g), or a bound value
when one was attached with bind_differential.

The internal degree of every summand is one above the input's; the verifier
relies on this.
"""

from __future__ import annotations

from .signs import SignAccumulator, deg_shift, deg_sum
from .terms import (BIND_BOUND, BIND_FORMAL, BIND_ZERO, FACTOR_DATA,
                    FACTOR_DEG, GEN_BOUND, GEN_DATA, WORD_DATA, WORD_DEG,
                    f_dsym, f_eop, f_fop, f_fsym, word, word_concat)
from .expr import (InternalInvariantError, eop_word, ex_add_into,
                   ex_merge_into, ex_word)

# Constants of the twisting-family shape: the differential of a family
# component f_(n) splits as sum_t TW_C1(t) f_(n-1)(merge at t) plus
# sum_t TW_C2(t) f_(t) f_(n-t).  Pinned numerically by the n = 2, 3
# twisting checks for the explicit product family.


def TW_C1(t: int) -> int:
    return -1 if t % 2 == 0 else 1


def TW_C2(t: int) -> int:
    return -1 if t % 2 else 1


def differential(e: dict, mode: str = "reduced") -> dict:
    """d on an expression of any tensor arity, componentwise Leibniz."""
    acc: dict = {}
    for (wt, ms), c in e.items():
        prefix = (0, frozenset())
        for i, wid in enumerate(wt):
            dw = d_word(wid, mode)
            if dw:
                sign = SignAccumulator()
                sign.add_mul((1, frozenset()), prefix)
                bit, monos = sign.frozen()
                for (t2, m2), c2 in dw.items():
                    key = (wt[:i] + (t2[0],) + wt[i + 1:],
                           _xor3(ms, monos, m2))
                    cc = c * c2
                    if bit:
                        cc = -cc
                    ex_add_into(acc, key, cc)
            prefix = deg_sum((prefix, WORD_DEG[wid]))
    return acc


def _xor3(a, b, c):
    return (a ^ b) ^ c if (b or c) else a


def d_word(wid: int, mode: str) -> dict:
    acc: dict = {}
    factors = WORD_DATA[wid]
    prefix = (0, frozenset())
    for i, fid in enumerate(factors):
        df = d_factor(fid, mode)
        if df:
            pre = word(factors[:i])
            post = word(factors[i + 1:])
            sign = SignAccumulator()
            sign.add_mul((1, frozenset()), prefix)
            bit, monos = sign.frozen()
            for (t2, m2), c2 in df.items():
                w = word_concat(word_concat(pre, t2[0]), post)
                cc = -c2 if bit else c2
                ex_add_into(acc, ((w,), m2 ^ monos if monos else m2), cc)
        prefix = deg_sum((prefix, FACTOR_DEG[fid]))
    return acc


def d_factor(fid: int, mode: str) -> dict:
    key = FACTOR_DATA[fid]
    kind = key[0]
    if kind == "g":
        return _d_gen(key[1], mode)
    if kind == "d":
        return {}
    if kind == "pw":
        if GEN_DATA[key[1]][4] != BIND_ZERO:
            raise InternalInvariantError("powers need a zero-bound generator")
        return {}
    if kind == "fs":
        return _d_fsym(key)
    if kind == "E":
        return _d_eop(key, mode)
    if kind == "F":
        return _d_fop(key, mode)
    raise InternalInvariantError(kind)


def _d_gen(gid: int, mode: str) -> dict:
    binding = GEN_DATA[gid][4]
    if binding == BIND_ZERO:
        return {}
    if mode == "reduced":
        if binding == BIND_BOUND:
            raise ValueError(
                "bound generator differential requires formal mode")
        return {}
    if binding == BIND_FORMAL:
        return ex_word(word((f_dsym(gid),)))
    val = GEN_BOUND.get(gid)
    if val is None:
        raise ValueError("bound generator has no attached differential")
    return val


def _d_fsym(key) -> dict:
    _, m, exps = key
    acc: dict = {}
    for t in range(1, m):
        merged = exps[:t - 1] + (exps[t - 1] + exps[t],) + exps[t + 1:]
        _fs_into(acc, m - 1, merged, TW_C1(t))
        pre = f_fsym(t, exps[:t])
        post = f_fsym(m - t, exps[t:])
        if pre is None or post is None:
            continue
        fs1 = () if pre == "unit" else (pre,)
        fs2 = () if post == "unit" else (post,)
        ex_add_into(acc, ((word(fs1 + fs2),), frozenset()), TW_C2(t))
    return acc


def _fs_into(acc: dict, m: int, exps, coeff: int) -> None:
    fs = f_fsym(m, exps)
    if fs is None:
        return
    w = word(()) if fs == "unit" else word((fs,))
    ex_add_into(acc, ((w,), frozenset()), coeff)


def _d_eop(key, mode: str) -> dict:
    _, h_fid, args = key
    k = len(args)
    hdeg = FACTOR_DEG[h_fid]
    acc: dict = {}

    # boundary of the operation itself
    sign = SignAccumulator()
    sign.add_mul(WORD_DEG[args[0]], deg_sum((hdeg, (k - 1, frozenset()))))
    _emit(acc, sign, args[0], _sub_eop(h_fid, args[1:]))
    for m in range(1, k):
        merged = args[:m - 1] + (word_concat(args[m - 1], args[m]),) + args[m + 1:]
        fid2 = f_eop(h_fid, merged)
        if fid2 is not None:
            ex_add_into(acc, ((word((fid2,)),), frozenset()),
                        -1 if m % 2 else 1)
    sign = SignAccumulator()
    sign.add_const(k)
    _emit(acc, sign, None, _sub_eop(h_fid, args[:k - 1]), args[k - 1])

    # boundary passed through to the head and the arguments
    dh = d_factor(h_fid, mode)
    if dh:
        for (t2, m2), c2 in dh.items():
            sub = eop_word(t2[0], args)
            ex_merge_into(acc, sub, c2 if k % 2 == 0 else -c2, 0, m2)
    prefix = deg_sum((hdeg, (k, frozenset())))
    for i in range(k):
        da = d_word(args[i], mode)
        if da:
            sign = SignAccumulator()
            sign.add_mul((1, frozenset()), prefix)
            bit, monos = sign.frozen()
            for (t2, m2), c2 in da.items():
                fid2 = f_eop(h_fid, args[:i] + (t2[0],) + args[i + 1:])
                if fid2 is None:
                    continue
                cc = -c2 if bit else c2
                ex_add_into(acc, ((word((fid2,)),), m2 ^ monos if monos else m2), cc)
        prefix = deg_sum((prefix, WORD_DEG[args[i]]))
    return acc


def _sub_eop(h_fid: int, args) -> int:
    """Word for E_j(h; args), j possibly 0."""
    if not args:
        return word((h_fid,))
    fid = f_eop(h_fid, args)
    if fid is None:
        raise InternalInvariantError("unit argument in canonical factor")
    return word((fid,))


def _emit(acc: dict, sign: SignAccumulator, pre_wid, mid_wid: int,
          post_wid=None) -> None:
    bit, monos = sign.frozen()
    w = mid_wid
    if pre_wid is not None:
        w = word_concat(pre_wid, w)
    if post_wid is not None:
        w = word_concat(w, post_wid)
    ex_add_into(acc, ((w,), monos), -1 if bit else 1)


def _d_fop(key, mode: str) -> dict:
    _, k, l, aws, bws = key
    adegs = [WORD_DEG[w] for w in aws]
    bdegs = [WORD_DEG[w] for w in bws]
    acc: dict = {}

    # A part
    if k == 1:
        ex_merge_into(acc, eop_word(aws[0], bws), 1)
    else:
        sign = SignAccumulator()
        sign.add_mul(adegs[0], (k - 1 + l, frozenset()))
        bit, monos = sign.frozen()
        fid2 = f_fop(k - 1, l, aws[1:], bws)
        if fid2 is not None:
            w = word_concat(aws[0], word((fid2,)))
            ex_add_into(acc, ((w,), monos), -1 if bit else 1)
        for i in range(1, k):
            merged = aws[:i - 1] + (word_concat(aws[i - 1], aws[i]),) + aws[i:][1:]
            fid2 = f_fop(k - 1, l, merged, bws)
            if fid2 is not None:
                ex_add_into(acc, ((word((fid2,)),), frozenset()),
                            -1 if i % 2 else 1)
        pre_a = deg_sum(adegs[:k - 1])
        for j in range(1, l + 1):
            sign = SignAccumulator()
            sign.add_const(k)
            db = deg_sum(bdegs[:j])
            sign.add_mul((l - j, frozenset()), deg_sum((pre_a, db)))
            sign.add_mul(adegs[k - 1], db)
            fid2 = f_fop(k - 1, j, aws[:k - 1], bws[:j])
            if fid2 is None:
                continue
            tail = eop_word(aws[k - 1], bws[j:])
            bit, monos = sign.frozen()
            for (t2, m2), c2 in tail.items():
                w = word_concat(word((fid2,)), t2[0])
                cc = -c2 if bit else c2
                ex_add_into(acc, ((w,), m2 ^ monos if monos else m2), cc)

    # B part, with the (-1)^k in front
    bacc: dict = {}
    if l == 1:
        sign = SignAccumulator()
        sign.add_const(1)
        sign.add_mul(bdegs[0], deg_sum(adegs))
        bit, monos = sign.frozen()
        ex_merge_into(bacc, eop_word(bws[0], aws), 1, bit, monos)
    else:
        for i in range(k):
            sign = SignAccumulator()
            da = deg_sum(adegs[:i])
            # b_1 stands leftmost, so it crosses the whole a row
            sign.add_mul(bdegs[0], deg_sum(adegs))
            sign.add_mul((k - i + l - 1, frozenset()),
                         deg_sum((bdegs[0], da)))
            fid2 = f_fop(k - i, l - 1, aws[i:], bws[1:])
            if fid2 is None:
                continue
            head = _sub_eop_or_word(bws[0], aws[:i])
            bit, monos = sign.frozen()
            for (t2, m2), c2 in head.items():
                w = word_concat(t2[0], word((fid2,)))
                cc = -c2 if bit else c2
                ex_add_into(bacc, ((w,), m2 ^ monos if monos else m2), cc)
        for j in range(1, l):
            merged = bws[:j - 1] + (word_concat(bws[j - 1], bws[j]),) + bws[j + 1:]
            fid2 = f_fop(k, l - 1, aws, merged)
            if fid2 is not None:
                ex_add_into(bacc, ((word((fid2,)),), frozenset()),
                            -1 if j % 2 else 1)
        sign = SignAccumulator()
        sign.add_const(l)
        fid2 = f_fop(k, l - 1, aws, bws[:l - 1])
        if fid2 is not None:
            bit, monos = sign.frozen()
            w = word_concat(word((fid2,)), bws[l - 1])
            ex_add_into(bacc, ((w,), monos), -1 if bit else 1)
    ex_merge_into(acc, bacc, 1 if k % 2 == 0 else -1)

    # boundary passed through to the arguments
    prefix = (k + l, frozenset())
    rows = list(aws) + list(bws)
    for i, wid in enumerate(rows):
        dw = d_word(wid, mode)
        if dw:
            sign = SignAccumulator()
            sign.add_mul((1, frozenset()), prefix)
            bit, monos = sign.frozen()
            for (t2, m2), c2 in dw.items():
                rows2 = rows[:i] + [t2[0]] + rows[i + 1:]
                fid2 = f_fop(k, l, rows2[:k], rows2[k:])
                if fid2 is None:
                    continue
                cc = -c2 if bit else c2
                ex_add_into(acc, ((word((fid2,)),), m2 ^ monos if monos else m2), cc)
        prefix = deg_sum((prefix, WORD_DEG[wid]))
    return acc


def _sub_eop_or_word(head_wid: int, args) -> dict:
    if not args:
        return ex_word(head_wid)
    return eop_word(head_wid, args)
