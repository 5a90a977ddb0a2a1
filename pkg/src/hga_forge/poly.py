"""Power homotopies on a polynomial line.

Everything here lives in an all-even corner: the line generator x is
closed of degree zero and a, the image of x, is a closed even element
of the target, so every Koszul sign reduces to the displayed one.

Three homotopies are built.

* strict_homotopy(): f is a strong-homotopy map out of the line whose
  first component sends x to a, carried by opaque family symbols, and
  g is the strict map x^k -> a^k.  The family

      h_(n)(x^{k.}) = (-1)^(n-1) sum_{k'+k''=k_n-1}
                      f_(n+1)(x^{k_1},...,x^{k_{n-1}},x^{k'},x) a^{k''}

  joins f to g.  Normalization of the family symbols (interior unit
  arguments kill a symbol) prunes the sum.

* telescope_homotopy(): for two strict maps x^k -> u^k and x^k -> v^k
  whose values differ by a boundary d(s) = u - v, the single component

      h(x^k) = sum_{k'+k''=k-1} u^{k'} s v^{k''}

  with no higher components is already a homotopy between them.

* shc_homotopy(): on the target of x^k -> a^k, the composite product
  Phi after (f tensor f) and the strict product x^k (x) x^l -> a^{k+l}
  are joined by an explicit width-2 family whose correction terms use
  a bounding element b with d(b) = E_1(a; a).

Power factors stay atomic (a^k is a single factor); expanded=True
spells powers as repeated single-generator factors instead and pushes
E-operations with product heads through the first-argument splitting
rule.  expand_powers translates atomic values into that form so the
two computations can be compared.
"""

from .expr import (EMPTY_SIGN, ex_add_into, ex_merge_into, ex_mul_many,
                   ex_word, eop_word)
from .families import Family, precompose_strict, strict_family
from .structure import ballot_sequences, phi_family
from .terms import (BIND_BOUND, BIND_ZERO, FACTOR_DATA, UNIT_WORD, WORD_DATA,
                    bind_differential, f_eop, f_fsym, f_gen, f_pow, gen, word)


def x_gid() -> int:
    """The line generator: even, closed, degree zero."""
    return gen("x", 0, parity="even", offset=0, binding=BIND_ZERO)


def poly_a_gid() -> int:
    return gen("a", 0, parity="even", offset=0, binding=BIND_ZERO)


def poly_b_gid(expanded: bool = False) -> int:
    """Bounding element with d(b) = E_1(a; a).

    The attached differential has to live in the same spelling of
    powers as the rest of the computation, so each mode gets its own
    copy of the generator.
    """
    a = poly_a_gid()
    b = gen("b", 1 if expanded else 0, parity="even", offset=-2,
            binding=BIND_BOUND)
    hd = f_gen(a) if expanded else f_pow(a, 1)
    fid = f_eop(hd, (word((hd,)),))
    bind_differential(b, ex_word(word((fid,))))
    return b


def x_power(k: int) -> int:
    if k == 0:
        return UNIT_WORD
    return word((f_pow(x_gid(), k),))


def a_power_word(k: int, expanded: bool = False) -> int:
    a = poly_a_gid()
    if k == 0:
        return UNIT_WORD
    if expanded:
        return word(tuple(f_gen(a) for _ in range(k)))
    return word((f_pow(a, k),))


def _slot_exp(wid: int) -> int:
    if wid == UNIT_WORD:
        return 0
    (key,) = (FACTOR_DATA[f] for f in WORD_DATA[wid])
    if key[0] != "pw" or key[1] != x_gid():
        raise ValueError("slot is not a power of the line generator")
    return key[2]


def formal_family() -> Family:
    """Strong-homotopy map out of the line, carried by opaque symbols.

    Only the first component is pinned on the generator itself
    (f_(1)(x) = a); everything else stays an abstract symbol subject
    to the twisting relation and normalization.
    """

    def comp_fn(n, slots):
        fs = f_fsym(n, tuple(_slot_exp(s[0]) for s in slots))
        if fs is None:
            return {}
        if fs == "unit":
            return ex_word(UNIT_WORD)
        return ex_word(word((fs,)))

    return Family("f", "map", 1, 1, comp_fn)


def power_map_family() -> Family:
    """The strict map x^k -> a^k."""

    def fn(slot):
        return ex_word(a_power_word(_slot_exp(slot[0])))

    return strict_family("g", 1, 1, fn)


def strict_homotopy() -> Family:
    """Homotopy joining the formal family to the strict power map."""
    a = poly_a_gid()

    def comp_fn(n, slots):
        ks = tuple(_slot_exp(s[0]) for s in slots)
        coeff = -1 if (n - 1) % 2 else 1
        acc: dict = {}
        for kp in range(ks[-1]):
            fs = f_fsym(n + 1, ks[:-1] + (kp, 1))
            if fs is None:
                continue
            fids = () if fs == "unit" else (fs,)
            tail = f_pow(a, ks[-1] - 1 - kp)
            if tail is not None:
                fids = fids + (tail,)
            ex_add_into(acc, ((word(fids),), EMPTY_SIGN), coeff)
        return acc

    return Family("h", "homotopy", 1, 1, comp_fn)


def telescope_homotopy():
    """One-component homotopy between strict maps with d(s) = u - v.

    Returns (h, f, g).  The bounding generator keeps a symbolic
    parity, so the defect cancels for every degree of s at once.
    """
    u = gen("u", 0, parity="even", offset=-2, binding=BIND_ZERO)
    v = gen("v", 0, parity="even", offset=-2, binding=BIND_ZERO)
    s = gen("s", 0, parity="var", offset=-3, binding=BIND_BOUND)
    du = dict(ex_word(word((f_pow(u, 1),))))
    ex_merge_into(du, ex_word(word((f_pow(v, 1),))), -1)
    bind_differential(s, du)

    def pow_word(g, k):
        p = f_pow(g, k)
        return UNIT_WORD if p is None else word((p,))

    fmap = strict_family(
        "fu", 1, 1, lambda slot: ex_word(pow_word(u, _slot_exp(slot[0]))))
    gmap = strict_family(
        "gv", 1, 1, lambda slot: ex_word(pow_word(v, _slot_exp(slot[0]))))

    def comp_fn(n, slots):
        if n != 1:
            return {}
        k = _slot_exp(slots[0][0])
        acc: dict = {}
        for kp in range(k):
            fids = tuple(f for f in
                         (f_pow(u, kp), f_gen(s), f_pow(v, k - 1 - kp))
                         if f is not None)
            ex_add_into(acc, ((word(fids),), EMPTY_SIGN), 1)
        return acc

    return Family("ht", "homotopy", 1, 1, comp_fn), fmap, gmap


def product_pair(expanded: bool = False):
    """The two width-2 maps the shc homotopy joins.

    Returns (big, small): big is Phi precomposed with the power map in
    each tensor factor, small is the strict merged power map.
    """

    def fxf(slot):
        k, l = (_slot_exp(w) for w in slot)
        return {((a_power_word(k, expanded), a_power_word(l, expanded)),
                 EMPTY_SIGN): 1}

    big = precompose_strict(phi_family(),
                            strict_family("fxf", 2, 2, fxf),
                            name="phi(fxf)")

    def gm(slot):
        k, l = (_slot_exp(w) for w in slot)
        return ex_word(a_power_word(k + l, expanded))

    return big, strict_family("fmu", 2, 1, gm)


def shc_homotopy(expanded: bool = False, groups=(1, 2, 3)) -> Family:
    """Width-2 homotopy between the two products of power images.

    groups selects which of the three summand families contribute;
    anything but the full default is only for mutation tests.
    """
    b = poly_b_gid(expanded)
    bch = ex_word(word((f_gen(b),)))

    def apow(k):
        return ex_word(a_power_word(k, expanded))

    def echunk(head_k, arg_ks):
        # zero on a unit head as well as on unit arguments
        if head_k == 0 or any(j == 0 for j in arg_ks):
            return {}
        return eop_word(a_power_word(head_k, expanded),
                        tuple(a_power_word(j, expanded) for j in arg_ks))

    def comp_fn(n, slots):
        if n == 1:
            return {}
        ks = tuple(_slot_exp(s[0]) for s in slots)
        ls = tuple(_slot_exp(s[1]) for s in slots)
        acc: dict = {}

        def emit(chunks, coeff):
            ex_merge_into(acc, ex_mul_many(chunks), coeff)

        def estring(iseq, count):
            # E-factors for the first `count` slots, consuming l-powers
            pos = 0
            pieces = []
            for t in range(count):
                i = iseq[t]
                if i == 0:
                    pieces.append(apow(ks[t]))
                else:
                    ch = echunk(ks[t], ls[pos:pos + i])
                    pos += i
                    if not ch:
                        return None, pos
                    pieces.append(ch)
            return pieces, pos

        if 1 in groups:
            for iseq in ballot_sequences(n, n - 1):
                pieces, pos = estring(iseq, n - 1)
                if pieces is None:
                    continue
                i_n = iseq[n - 1]
                full = ls[pos:pos + i_n - 1]
                assert pos + i_n - 1 == n - 2
                for lp in range(ls[n - 2]):
                    ch = echunk(ks[n - 1], full + (lp, 1))
                    if not ch:
                        continue
                    emit([*pieces, ch,
                          apow(ls[n - 2] - 1 - lp + ls[n - 1])], 1)

        if 2 in groups:
            for iseq in ballot_sequences(n - 1, n - 2):
                pieces, pos = estring(iseq, n - 1)
                if pieces is None:
                    continue
                assert pos == n - 2
                for kp in range(ks[n - 1]):
                    for lp in range(ls[n - 2]):
                        tail = (ks[n - 1] - 1 - kp) + \
                            (ls[n - 2] - 1 - lp) + ls[n - 1]
                        emit([*pieces, apow(kp + lp), bch, apow(tail)], -1)

        if 3 in groups and n >= 3:
            for iseq in ballot_sequences(n - 1, n - 2):
                pieces, pos = estring(iseq, n - 2)
                if pieces is None:
                    continue
                i_last = iseq[n - 2]
                full = ls[pos:pos + i_last - 1]
                assert pos + i_last - 1 == n - 3
                for kp in range(ks[n - 1]):
                    for lp in range(ls[n - 3]):
                        ch = echunk(ks[n - 2], full + (lp,))
                        if not ch:
                            continue
                        tail = (ks[n - 1] - 1 - kp) + \
                            (ls[n - 3] - 1 - lp) + ls[n - 2] + ls[n - 1]
                        emit([*pieces, ch, apow(kp), bch, apow(tail)], -1)

        return acc

    return Family("hp", "homotopy", 2, 1, comp_fn)


def word_a_total(wid: int) -> int:
    """Total power of a in a word, counting the bounding element twice."""
    a = poly_a_gid()

    def fac(fid):
        key = FACTOR_DATA[fid]
        if key[0] == "pw":
            return key[2] if key[1] == a else 0
        if key[0] == "g":
            return 1 if key[1] == a else 2
        if key[0] == "E":
            return fac(key[1]) + sum(word_a_total(w) for w in key[2])
        raise ValueError("unexpected factor in a power word")

    return sum(fac(f) for f in WORD_DATA[wid])


def expand_powers(e: dict) -> dict:
    """Translate atomic power factors into repeated-generator form."""
    out: dict = {}
    for (wt, ms), c in e.items():
        (wid,) = wt
        ex_merge_into(out, _expand_word(wid), c, 0, ms)
    return out


def _expand_word(wid: int) -> dict:
    if wid == UNIT_WORD:
        return ex_word(UNIT_WORD)
    return ex_mul_many([_expand_factor(f) for f in WORD_DATA[wid]])


def _expand_factor(fid: int) -> dict:
    key = FACTOR_DATA[fid]
    if key[0] == "pw":
        return ex_word(a_power_word(key[2], True)) if key[1] == poly_a_gid() \
            else ex_word(word((fid,)))
    if key[0] == "g":
        if key[1] == poly_b_gid():
            return ex_word(word((f_gen(poly_b_gid(True)),)))
        return ex_word(word((fid,)))
    if key[0] == "E":
        head = FACTOR_DATA[key[1]]
        k = head[2] if head[0] == "pw" else 1
        args = tuple(a_power_word(word_a_total(w), True) for w in key[2])
        return eop_word(a_power_word(k, True), args)
    raise ValueError("unexpected factor in a power word")
