"""Interned generators, factors, and words.

Everything structural is hash-consed: a generator, factor, or word is an int
id into append-only tables.  Equality of normal forms is then equality of
int tuples, which keeps the cancellation-heavy checks cheap.

Factor kinds (the key stored in ``FACTOR_DATA``):

    ('g',  gid)                       a generator
    ('d',  gid)                       the formal differential of a generator
    ('E',  head_fid, (wid, ...))      brace operation, atomic head, k >= 1 args
    ('F',  k, l, (wid,...), (wid,...))  extended operation, two argument rows
    ('pw', gid, k)                    k-th power of an even generator, k >= 1
    ('fs', m, (e1, ..., em))          abstract family symbol on m power inputs

E heads must be atomic (kinds 'g', 'pw', 'd'); words with composite heads are
rewritten away by expr.py before interning.  E and F factors never hold the
unit as an argument: constructors return None (the zero term) instead.
"""

from __future__ import annotations

from .signs import ZERO_DEG, deg_add, deg_shift, deg_sum

# generator bindings for the differential
BIND_ZERO = "zero"
BIND_FORMAL = "formal"
BIND_BOUND = "bound"

GEN_KEYS: dict = {}
GEN_DATA: list = []
GEN_BOUND: dict = {}

FACTOR_KEYS: dict = {}
FACTOR_DATA: list = []
FACTOR_DEG: list = []

WORD_KEYS: dict = {}
WORD_DATA: list = []
WORD_DEG: list = []

UNIT_WORD = 0


def _reset() -> None:
    """Drop all interned state.  Test helper."""
    GEN_KEYS.clear()
    GEN_DATA.clear()
    GEN_BOUND.clear()
    FACTOR_KEYS.clear()
    FACTOR_DATA.clear()
    FACTOR_DEG.clear()
    WORD_KEYS.clear()
    WORD_DATA.clear()
    WORD_DEG.clear()
    WORD_KEYS[()] = UNIT_WORD
    WORD_DATA.append(())
    WORD_DEG.append(ZERO_DEG)


_reset()


def gen(tag: str, index: int, parity: str = "var", offset: int = 0,
        binding: str = BIND_FORMAL) -> int:
    """Intern a generator.  Re-registering with the same data is a no-op."""
    key = (tag, index)
    gid = GEN_KEYS.get(key)
    if gid is not None:
        prev = GEN_DATA[gid]
        if prev != (tag, index, parity, offset, binding):
            raise ValueError(f"generator {key} re-registered inconsistently")
        return gid
    if parity not in ("var", "even"):
        raise ValueError(f"bad parity {parity!r}")
    if binding not in (BIND_ZERO, BIND_FORMAL, BIND_BOUND):
        raise ValueError(f"bad binding {binding!r}")
    gid = len(GEN_DATA)
    GEN_KEYS[key] = gid
    GEN_DATA.append((tag, index, parity, offset, binding))
    return gid


def bind_differential(gid: int, expr) -> None:
    """Attach the value of d(generator) for a BIND_BOUND generator."""
    if GEN_DATA[gid][4] != BIND_BOUND:
        raise ValueError("binding a differential to a non-bound generator")
    GEN_BOUND[gid] = expr


def gen_degree(gid: int):
    tag, index, parity, offset, binding = GEN_DATA[gid]
    if parity == "var":
        return (offset, frozenset((gid,)))
    return (offset, frozenset())


def _intern_factor(key):
    fid = FACTOR_KEYS.get(key)
    if fid is not None:
        return fid
    fid = len(FACTOR_DATA)
    FACTOR_KEYS[key] = fid
    FACTOR_DATA.append(key)
    FACTOR_DEG.append(_factor_degree(key))
    return fid


def _factor_degree(key):
    kind = key[0]
    if kind == "g":
        return gen_degree(key[1])
    if kind == "d":
        return deg_shift(gen_degree(key[1]), 1)
    if kind == "E":
        d = deg_shift(FACTOR_DEG[key[1]], -len(key[2]))
        for wid in key[2]:
            d = deg_add(d, WORD_DEG[wid])
        return d
    if kind == "F":
        _, k, l, aws, bws = key
        d = (-(k + l), frozenset())
        for wid in aws:
            d = deg_add(d, WORD_DEG[wid])
        for wid in bws:
            d = deg_add(d, WORD_DEG[wid])
        return d
    if kind == "pw":
        g = gen_degree(key[1])
        return (g[0] * key[2], frozenset())
    if kind == "fs":
        _, m, exps = key
        return (1 - m, frozenset())
    raise ValueError(f"unknown factor kind {kind!r}")


def f_gen(gid: int) -> int:
    return _intern_factor(("g", gid))


def f_dsym(gid: int) -> int:
    return _intern_factor(("d", gid))


def f_pow(gid: int, k: int):
    """a^k as one factor.  k = 0 is the unit: returns None (no factor)."""
    if GEN_DATA[gid][2] != "even":
        raise ValueError("powers only for even generators")
    if k == 0:
        return None
    return _intern_factor(("pw", gid, k))


def f_eop(head_fid: int, arg_wids) -> int | None:
    """E_k(head; args).  None when some argument is the unit (term is zero)."""
    args = tuple(arg_wids)
    if not args:
        raise ValueError("E with no arguments is the identity; do not intern")
    if FACTOR_DATA[head_fid][0] not in ("g", "pw", "d"):
        raise ValueError("E head must be atomic")
    if any(w == UNIT_WORD for w in args):
        return None
    return _intern_factor(("E", head_fid, args))


def f_fop(k: int, l: int, a_wids, b_wids) -> int | None:
    aws, bws = tuple(a_wids), tuple(b_wids)
    if k < 1 or l < 1 or len(aws) != k or len(bws) != l:
        raise ValueError("bad F shape")
    if any(w == UNIT_WORD for w in aws) or any(w == UNIT_WORD for w in bws):
        return None
    return _intern_factor(("F", k, l, aws, bws))


def f_fsym(m: int, exps):
    """Abstract family symbol on x-power inputs, normalized.

    Returns None for a zero value, 'unit' when the value is the unit, a pw
    factor id for the m = 1, e = 1 identification, else an fs factor id.
    """
    es = tuple(exps)
    if len(es) != m or m < 1:
        raise ValueError("bad fs shape")
    if m == 1:
        if es[0] == 0:
            return "unit"
        if es[0] == 1:
            return f_pow(_poly_a_gid(), 1)
        return _intern_factor(("fs", 1, es))
    if any(e == 0 for e in es):
        return None
    return _intern_factor(("fs", m, es))


_POLY_A: list = []


def _poly_a_gid() -> int:
    if not _POLY_A or GEN_DATA[_POLY_A[0]][:2] != ("a", 0):
        _POLY_A.clear()
        _POLY_A.append(gen("a", 0, parity="even", offset=0, binding=BIND_ZERO))
    return _POLY_A[0]


def word(fids) -> int:
    """Intern a word from factor ids, merging adjacent powers of one gen."""
    out: list = []
    for fid in fids:
        key = FACTOR_DATA[fid]
        if key[0] == "pw" and out:
            prev = FACTOR_DATA[out[-1]]
            if prev[0] == "pw" and prev[1] == key[1]:
                out[-1] = _intern_factor(("pw", key[1], prev[2] + key[2]))
                continue
        out.append(fid)
    t = tuple(out)
    wid = WORD_KEYS.get(t)
    if wid is not None:
        return wid
    wid = len(WORD_DATA)
    WORD_KEYS[t] = wid
    WORD_DATA.append(t)
    WORD_DEG.append(deg_sum(FACTOR_DEG[f] for f in t))
    return wid


def word_concat(w1: int, w2: int) -> int:
    if w1 == UNIT_WORD:
        return w2
    if w2 == UNIT_WORD:
        return w1
    return word(WORD_DATA[w1] + WORD_DATA[w2])


def word_deg(wid: int):
    return WORD_DEG[wid]


def gen_word(tag: str, index: int, **kw) -> int:
    return word((f_gen(gen(tag, index, **kw)),))


# ---------------------------------------------------------------------------
# rendering


def render_gen(gid: int) -> str:
    tag, index = GEN_DATA[gid][0], GEN_DATA[gid][1]
    return f"{tag} {index}"


def render_factor(fid: int) -> str:
    key = FACTOR_DATA[fid]
    kind = key[0]
    if kind == "g":
        return f"(g {render_gen(key[1])})"
    if kind == "d":
        return f"(d {render_gen(key[1])})"
    if kind == "E":
        args = " ".join(render_word(w) for w in key[2])
        return f"(E {render_factor(key[1])} {args})"
    if kind == "F":
        aws = " ".join(render_word(w) for w in key[3])
        bws = " ".join(render_word(w) for w in key[4])
        return f"(F {key[1]} {key[2]} ({aws}) ({bws}))"
    if kind == "pw":
        return f"(pw {render_gen(key[1])} {key[2]})"
    if kind == "fs":
        exps = " ".join(str(e) for e in key[2])
        return f"(fs {key[1]} {exps})"
    raise ValueError(kind)


def render_word(wid: int) -> str:
    if wid == UNIT_WORD:
        return "1"
    return "(* " + " ".join(render_factor(f) for f in WORD_DATA[wid]) + ")"


def _var_name(gid: int) -> str:
    tag, index = GEN_DATA[gid][0], GEN_DATA[gid][1]
    return f"d{tag}{index}"


def render_sign(monos: frozenset) -> str:
    parts = sorted(
        ("*".join(_var_name(v) for v in m) for m in monos),
        key=lambda s: (s.count("*"), s),
    )
    if not parts:
        return "(sgn)"
    return "(sgn " + " ".join(f"({p})" for p in parts) + ")"
