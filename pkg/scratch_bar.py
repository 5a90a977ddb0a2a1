import itertools
import sys
sys.path.insert(0, "src")

from hga_forge import bar as B
from hga_forge.expr import ex_sub, render_expr
from hga_forge.structure import phi_family, phi_transposed, hc_family
from hga_forge.terms import gen_word

phi = phi_family()
phiT = phi_transposed()


def w1(tag, n, start=1):
    return B.bar_word(tuple((gen_word(tag, start + i),) for i in range(n)))


def w2(n):
    return B.bar_word(tuple((gen_word("a", i + 1), gen_word("b", i + 1))
                            for i in range(n)))


def addmul(e1, e2, c=1):
    out = dict(e1)
    for k, v in e2.items():
        out[k] = out.get(k, 0) + c * v
        if not out[k]:
            del out[k]
    return out


# 1. d^2 = 0
for mk, width in ((lambda n: w1("a", n), 1), (w2, 2)):
    for n in range(1, 5):
        dd = B.bar_d(B.bar_d(mk(n), "formal"), "formal")
        assert not dd, ("dd", width, n, render_expr(dd) if dd else "")
print("bar d^2 = 0 ok")

# 2. shuffle chain map: d(shuffle(u,v)) = shuffle(du, v) + (-1)^|u| shuffle(u, dv)
fail = 0
for k, l in itertools.product(range(0, 3), repeat=2):
    u = w1("a", k)
    v = w1("b", l)
    lhs = B.bar_d(B.bar_shuffle(u, v), "formal")
    rhs = B.bar_shuffle(B.bar_d(u, "formal"), v)
    # sign (-1)^{total shifted degree of u}: u entries symbolic; build both signs
    from hga_forge.signs import SignAccumulator
    for (ue, ms), c in u.items():
        s = SignAccumulator()
        s.add_mul((1, frozenset()), B.bar_total_sdeg(ue))
        bit, monos = s.frozen()
        dv = B.bar_d(v, "formal")
        piece = {}
        for (vent, m2), c2 in B.bar_shuffle({(ue, ms): c}, dv).items():
            from hga_forge.signs import sign_xor
            piece[(vent, sign_xor(m2, monos))] = -c2 if bit else c2
        rhs = addmul(rhs, piece)
    diff = addmul(lhs, rhs, -1)
    if diff:
        fail += 1
        if fail == 1:
            print("shuffle chain FAIL", k, l)
            for key, c in sorted(diff.items(), key=repr)[:6]:
                print(" ", c, key)
print("shuffle chain map fails:", fail)

# 3. bar map of Phi is a chain map (width 2 words)
bphi = B.bar_map(phi)
fail = 0
for n in range(1, 4):
    w = w2(n)
    lhs = B.bar_d(bphi(w), "reduced")
    rhs = bphi(B.bar_d(w, "reduced"))
    diff = addmul(lhs, rhs, -1)
    if diff:
        fail += 1
        if fail == 1:
            print("bar map chain FAIL n=", n, "terms", len(diff))
            for key, c in sorted(diff.items(), key=repr)[:6]:
                print(" ", c, key)
print("bar map chain fails:", fail)

# 4. bar product theorem: BPhi(shuffle(u,v)) == mu_bar(u,v), k+l <= 4
fail = 0
for k in range(0, 4):
    for l in range(0, 4 - k):
        u = w1("a", k)
        v = w1("b", l)
        lhs = bphi(B.bar_shuffle(u, v))
        rhs = B.mu_bar(u, v)
        diff = addmul(lhs, rhs, -1)
        if diff:
            fail += 1
            if fail <= 2:
                print("bar product FAIL", k, l, "terms", len(diff))
                for key, c in sorted(diff.items(), key=repr)[:6]:
                    print(" ", c, key)
print("bar product fails:", fail)

# 5. mu_bar associativity, total <= 4
fail = 0
for k in range(0, 3):
    for l in range(0, 3):
        for m in range(0, 3):
            if k + l + m > 4:
                continue
            u, v, w = w1("a", k), w1("b", l), w1("c", m)
            lhs = B.mu_bar(B.mu_bar(u, v), w)
            rhs = B.mu_bar(u, B.mu_bar(v, w))
            if addmul(lhs, rhs, -1):
                fail += 1
print("mu_bar assoc fails:", fail)

# 6. coalgebra homotopy property for hc fwd: d H + H d = +-(BphiT - Bphi)
hcf = hc_family("fwd")
H = B.coalg_homotopy(hcf, phiT, phi)
bphiT = B.bar_map(phiT)
for n in range(1, 4):
    w = w2(n)
    lhs = addmul(B.bar_d(H(w), "reduced"), H(B.bar_d(w, "reduced")))
    d1 = addmul(lhs, addmul(bphiT(w), bphi(w), -1), -1)
    d2 = addmul(lhs, addmul(bphi(w), bphiT(w), -1), -1)
    print("coalg homotopy n=%d: lhs-(BphiT-Bphi)=%d terms, lhs-(Bphi-BphiT)=%d terms"
          % (n, len(d1), len(d2)))
