"""GF(2) sign arithmetic for Koszul bookkeeping.

Degrees are pairs ``(offset, vars)``: an exact integer plus a formal sum of
parity variables (one per generator of unspecified degree), the formal part
taken mod 2 as a frozenset.  A sign exponent lives in GF(2)[vars]; since
``v*v = v`` there, an exponent is a constant bit plus a set of monomials of
degree one or two.  The bit is folded into the integer coefficient of a term
immediately; only the monomial set travels inside term keys.

Monomials are tuples ``(v,)`` or ``(v, w)`` with ``v < w``.
"""

from __future__ import annotations

EMPTY_SIGN: frozenset = frozenset()

ZERO_DEG = (0, frozenset())


def deg_add(d1, d2):
    return (d1[0] + d2[0], d1[1] ^ d2[1])


def deg_sum(degs):
    off = 0
    vs = frozenset()
    for d in degs:
        off += d[0]
        vs = vs ^ d[1]
    return (off, vs)


def deg_shift(d, k):
    return (d[0] + k, d[1])


def sign_mul(d1, d2):
    """(-1)^(d1*d2) as (bit, monomials), degrees multiplied mod 2."""
    c1, v1 = d1[0] & 1, d1[1]
    c2, v2 = d2[0] & 1, d2[1]
    bit = c1 & c2
    monos = set()
    if c1:
        for w in v2:
            monos.symmetric_difference_update(((w,),))
    if c2:
        for v in v1:
            monos.symmetric_difference_update(((v,),))
    for v in v1:
        for w in v2:
            if v == w:
                m = (v,)
            elif v < w:
                m = (v, w)
            else:
                m = (w, v)
            monos.symmetric_difference_update((m,))
    return bit, frozenset(monos)


def sign_xor(a: frozenset, b: frozenset) -> frozenset:
    if not a:
        return b
    if not b:
        return a
    return a ^ b


def sign_eval(monos: frozenset, odd_vars: frozenset) -> int:
    """Evaluate a monomial set at a parity assignment (set of odd vars)."""
    bit = 0
    for m in monos:
        if len(m) == 1:
            if m[0] in odd_vars:
                bit ^= 1
        else:
            if m[0] in odd_vars and m[1] in odd_vars:
                bit ^= 1
    return bit


class SignAccumulator:
    """Mutable (bit, monomial set) pair for building one term's sign."""

    __slots__ = ("bit", "monos")

    def __init__(self, bit: int = 0, monos: frozenset = EMPTY_SIGN):
        self.bit = bit & 1
        self.monos = set(monos)

    def add_const(self, k: int) -> None:
        self.bit ^= k & 1

    def add_mul(self, d1, d2) -> None:
        b, ms = sign_mul(d1, d2)
        self.bit ^= b
        self.monos.symmetric_difference_update(ms)

    def add(self, bit: int, monos: frozenset) -> None:
        self.bit ^= bit & 1
        self.monos.symmetric_difference_update(monos)

    def copy(self) -> "SignAccumulator":
        return SignAccumulator(self.bit, frozenset(self.monos))

    def frozen(self):
        return self.bit, frozenset(self.monos)
