import itertools
import sys
sys.path.insert(0, "src")

from hga_forge.expr import ex_sub, render_expr
from hga_forge.families import homotopy_defect
from hga_forge import poly as P

# oracle: h_(1)(x^3) = f_(2)(x^2,x) + f_(2)(x,x) a
h = P.strict_homotopy()
v = h.comp(1, ((P.x_power(3),),))
print("h1(x^3):")
print(render_expr(v))
assert len(v) == 2 and all(c == 1 for c in v.values())

f = P.formal_family()
g = P.power_map_family()

bad = 0
for n in (1, 2, 3):
    for ks in itertools.product(range(4), repeat=n):
        slots = tuple((P.x_power(k),) for k in ks)
        d = homotopy_defect(h, f, g, n, slots)
        if d:
            bad += 1
            if bad < 3:
                print("strict defect fg", n, ks)
                print(render_expr(d))
print("poly-strict f->g nonzero tuples:", bad)

ht, fu, gv = P.telescope_homotopy()
bad = 0
for n in (1, 2, 3):
    for ks in itertools.product(range(4), repeat=n):
        slots = tuple((P.x_power(k),) for k in ks)
        d = homotopy_defect(ht, fu, gv, n, slots, mode="formal")
        if d:
            bad += 1
            if bad < 3:
                print("telescope defect", n, ks)
                print(render_expr(d))
print("telescope nonzero tuples:", bad)

# shc hand oracle at n=2, k=(1,2), l=(2,1)
hp = P.shc_homotopy()
slots = ((P.x_power(1), P.x_power(2)), (P.x_power(2), P.x_power(1)))
print("h2(x^1 x^2 ; x^2 x^1):")
print(render_expr(hp.comp(2, slots)))

big, small = P.product_pair()
bad = 0
for n in (1, 2, 3):
    for kls in itertools.product(range(3), repeat=2 * n):
        ks, ls = kls[:n], kls[n:]
        slots = tuple((P.x_power(k), P.x_power(l)) for k, l in zip(ks, ls))
        d = homotopy_defect(hp, big, small, n, slots, mode="formal")
        if d:
            bad += 1
            if bad < 4:
                print("shc defect", n, ks, ls)
                print(render_expr(d))
print("poly-shc big->small nonzero tuples:", bad)

# expanded mode: same defect at n=2, and values agree under expansion
hpx = P.shc_homotopy(expanded=True)
bigx, smallx = P.product_pair(expanded=True)
bad = 0
mism = 0
for kls in itertools.product(range(3), repeat=4):
    ks, ls = kls[:2], kls[2:]
    slots = tuple((P.x_power(k), P.x_power(l)) for k, l in zip(ks, ls))
    if homotopy_defect(hpx, bigx, smallx, 2, slots, mode="formal"):
        bad += 1
    if ex_sub(P.expand_powers(hp.comp(2, slots)), hpx.comp(2, slots)):
        mism += 1
print("expanded defect nonzero:", bad, "value mismatches:", mism)

# mutation: dropping group 3 at n=3 must leave a residual somewhere
hm = P.shc_homotopy(groups=(1, 2))
hit = 0
for kls in itertools.product(range(3), repeat=6):
    ks, ls = kls[:3], kls[3:]
    slots = tuple((P.x_power(k), P.x_power(l)) for k, l in zip(ks, ls))
    if homotopy_defect(hm, big, small, 3, slots, mode="formal"):
        hit += 1
print("group-3 mutation nonzero tuples:", hit)
