"""Families of maps between tensor powers and their defect functionals.

A family ``f`` assigns to each n >= 1 a component ``f.comp(n, slots)`` where
``slots`` is a tuple of n input tuples of word ids (one tuple per tensor
factor of the domain) and the value is an expression whose keys have tensor
arity ``f.out_width``.  Map-like families have component degree 1 - n and
vanishing 0-th component; homotopy-like families have component degree -n
and 0-th component the unit.

``twisting_defect`` and ``homotopy_defect`` expand the defining equations of
shm maps and shm homotopies; a family satisfies its equation at stage n iff
the returned expression is empty.
"""

from __future__ import annotations

from itertools import product as iproduct

from .signs import SignAccumulator, deg_sum
from .terms import WORD_DEG
from .differential import TW_C1, TW_C2, differential
from .expr import ex_add_into, ex_merge_into, sign_xor, tuple_concat


class Family:
    def __init__(self, name: str, kind: str, in_width: int, out_width: int,
                 comp_fn):
        if kind not in ("map", "homotopy"):
            raise ValueError(kind)
        self.name = name
        self.kind = kind
        self.in_width = in_width
        self.out_width = out_width
        self._comp_fn = comp_fn
        self._memo: dict = {}

    def comp_degree(self, n: int) -> int:
        return (1 - n) if self.kind == "map" else -n

    def comp(self, n: int, slots) -> dict:
        slots = tuple(tuple(s) for s in slots)
        if len(slots) != n:
            raise ValueError("slot count does not match stage")
        key = (n, slots)
        val = self._memo.get(key)
        if val is None:
            val = self._comp_fn(n, slots)
            self._memo[key] = val
        return val


def family_from_recipes(name: str, kind: str, in_width: int,
                        recipe_gen) -> Family:
    from .recipes import recipes_to_expr

    def comp_fn(n, slots):
        return recipes_to_expr(recipe_gen(n), slots)

    return Family(name, kind, in_width, 1, comp_fn)


def strict_family(name: str, in_width: int, out_width: int, fn) -> Family:
    """Family of a strict dga map: only the n = 1 component is nonzero."""

    def comp_fn(n, slots):
        if n != 1:
            return {}
        return fn(slots[0])

    return Family(name, "map", in_width, out_width, comp_fn)


def transpose_family(name: str = "T") -> Family:
    def fn(slot):
        x, y = slot
        sign = SignAccumulator()
        sign.add_mul(WORD_DEG[x], WORD_DEG[y])
        bit, monos = sign.frozen()
        return {((y, x), monos): -1 if bit else 1}

    return strict_family(name, 2, 2, fn)


def slot_deg(slot):
    return deg_sum(WORD_DEG[w] for w in slot)


def compose(g: Family, f: Family, name: str | None = None) -> Family:
    if f.out_width != g.in_width:
        raise ValueError("tensor widths do not compose")
    if f.kind != "map" or g.kind != "map":
        raise ValueError("only map families compose")

    def comp_fn(n, slots):
        acc: dict = {}
        for blocks in _compositions_pos(n):
            r = len(blocks)
            sign = SignAccumulator()
            pos = 0
            prefix = (0, frozenset())
            vals = []
            ok = True
            for t, nt in enumerate(blocks):
                block = slots[pos:pos + nt]
                sign.add_mul((1 - nt, frozenset()), prefix)
                # suspension bookkeeping of the regrouped tensor factors
                sign.add_const((r - 1 - t) * (nt + 1))
                for s in block:
                    prefix = deg_sum((prefix, slot_deg(s)))
                v = f.comp(nt, block)
                if not v:
                    ok = False
                    break
                vals.append(v)
                pos += nt
            if not ok:
                continue
            bit, monos = sign.frozen()
            for combo in iproduct(*(v.items() for v in vals)):
                coeff = -1 if bit else 1
                ms = monos
                gslots = []
                for (wt, m2), c2 in combo:
                    coeff *= c2
                    ms = sign_xor(ms, m2)
                    gslots.append(wt)
                ex_merge_into(acc, g.comp(len(gslots), gslots), coeff, 0, ms)
        return acc

    return Family(name or f"{g.name}*{f.name}", "map",
                  f.in_width, g.out_width, comp_fn)


def _compositions_pos(n: int):
    """Ordered tuples of positive ints summing to n."""
    if n == 0:
        return
    for first in range(1, n + 1):
        if first == n:
            yield (first,)
        else:
            for rest in _compositions_pos(n - first):
                yield (first,) + rest


def tensor_with_id(f: Family, side: str, name: str | None = None) -> Family:
    """f x 1 (side 'right') or 1 x f (side 'left'), identity on one factor."""
    if f.out_width != 1:
        raise ValueError("tensor helper expects out width 1")

    def comp_fn(n, slots):
        if side == "right":
            inner = [s[:-1] for s in slots]
            extra = [s[-1] for s in slots]
        else:
            inner = [s[1:] for s in slots]
            extra = [s[0] for s in slots]
        sign = SignAccumulator()
        if side == "left":
            fdeg = (f.comp_degree(n), frozenset())
            for x in extra:
                sign.add_mul(WORD_DEG[x], fdeg)
        for i in range(n):
            for j in range(i + 1, n):
                if side == "right":
                    sign.add_mul(WORD_DEG[extra[i]], slot_deg(inner[j]))
                else:
                    sign.add_mul(slot_deg(inner[i]), WORD_DEG[extra[j]])
        bit, monos = sign.frozen()
        from .terms import word_concat
        cw = extra[0]
        for x in extra[1:]:
            cw = word_concat(cw, x)
        acc: dict = {}
        for (wt, m2), c2 in f.comp(n, inner).items():
            if side == "right":
                key = (wt[0], cw)
            else:
                key = (cw, wt[0])
            cc = -c2 if bit else c2
            ex_add_into(acc, (key, sign_xor(m2, monos)), cc)
        return acc

    return Family(name or (f"{f.name}x1" if side == "right" else f"1x{f.name}"),
                  f.kind, f.in_width + 1, 2, comp_fn)


def precompose_strict(f: Family, t: Family, name: str | None = None) -> Family:
    """f after a strict width-preserving map t applied slotwise."""
    if t.in_width != f.in_width or t.out_width != f.in_width:
        raise ValueError("widths do not match")

    def comp_fn(n, slots):
        vals = [t.comp(1, (s,)) for s in slots]
        acc: dict = {}
        for combo in iproduct(*(v.items() for v in vals)):
            coeff = 1
            ms = frozenset()
            new_slots = []
            for (wt, m2), c2 in combo:
                coeff *= c2
                ms = sign_xor(ms, m2)
                new_slots.append(wt)
            ex_merge_into(acc, f.comp(n, new_slots), coeff, 0, ms)
        return acc

    return Family(name or f"{f.name}*{t.name}", f.kind, f.in_width,
                  f.out_width, comp_fn)


def merge_slots(slots, k: int):
    """Slots with entries k, k+1 (1-based) multiplied.  (bit, monos, slots)."""
    bit, monos, merged = tuple_concat(slots[k - 1], slots[k])
    return bit, monos, slots[:k - 1] + (merged,) + slots[k + 1:]


def twisting_defect(f: Family, n: int, slots, mode: str = "reduced") -> dict:
    """d(f_(n)) - sum TW_C1(k) f_(n-1)(merge_k) - sum TW_C2(k) f_(k) f_(n-k)."""
    slots = tuple(tuple(s) for s in slots)
    acc = differential(f.comp(n, slots), mode)
    for k in range(1, n):
        bit, monos, mslots = merge_slots(slots, k)
        c = -TW_C1(k)
        ex_merge_into(acc, f.comp(n - 1, mslots), c, bit, monos)
        pre, post = slots[:k], slots[k:]
        sign = SignAccumulator()
        sign.add_mul((f.comp_degree(n - k), frozenset()),
                     deg_sum(slot_deg(s) for s in pre))
        bit, monos = sign.frozen()
        left = f.comp(k, pre)
        if not left:
            continue
        right = f.comp(n - k, post)
        if not right:
            continue
        from .expr import ex_mul
        ex_merge_into(acc, ex_mul(left, right), -TW_C2(k), bit, monos)
    return acc


def homotopy_defect(h: Family, f: Family, g: Family, n: int, slots,
                    mode: str = "reduced") -> dict:
    """Defect of h as an shm homotopy from f to g at stage n.

    d(h_(n)) - sum_k (-1)^k h_(n-1)(merge_k)
             - sum_k [ f_(k) h_(n-k) - (-1)^k h_(k) g_(n-k) ]
    with h_(0) the unit, so the k = 0 and k = n boundary terms contribute
    g_(n) and f_(n).
    """
    from .expr import ex_mul
    slots = tuple(tuple(s) for s in slots)
    if h.kind != "homotopy":
        raise ValueError("h must be a homotopy family")
    acc = differential(h.comp(n, slots), mode)
    for k in range(1, n):
        bit, monos, mslots = merge_slots(slots, k)
        c = -1 if k % 2 == 0 else 1
        ex_merge_into(acc, h.comp(n - 1, mslots), c, bit, monos)
    for k in range(0, n + 1):
        pre, post = slots[:k], slots[k:]
        pre_deg = deg_sum(slot_deg(s) for s in pre)
        # f_(k) h_(n-k): f_(0) = 0, h_(0) = unit
        if k == n:
            ex_merge_into(acc, f.comp(n, slots), -1)
        elif k >= 1:
            left = f.comp(k, pre)
            right = h.comp(n - k, post)
            if left and right:
                sign = SignAccumulator()
                sign.add_mul((h.comp_degree(n - k), frozenset()), pre_deg)
                bit, monos = sign.frozen()
                ex_merge_into(acc, ex_mul(left, right), -1, bit, monos)
        # h_(k) g_(n-k)
        ck = -1 if k % 2 else 1
        if k == 0:
            ex_merge_into(acc, g.comp(n, slots), ck)
        elif k < n:
            left = h.comp(k, pre)
            right = g.comp(n - k, post)
            if left and right:
                sign = SignAccumulator()
                sign.add_mul((g.comp_degree(n - k), frozenset()), pre_deg)
                bit, monos = sign.frozen()
                ex_merge_into(acc, ex_mul(left, right), ck, bit, monos)
    return acc
