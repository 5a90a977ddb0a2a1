import itertools
from hga_forge import terms as T
from hga_forge import expr as X
from hga_forge import differential as D
from hga_forge.signs import sign_eval

T._reset()
a1 = T.gen_word("a", 1)
a2 = T.gen_word("a", 2)
b1 = T.gen_word("b", 1)
b2 = T.gen_word("b", 2)
c1 = T.gen_word("c", 1)

# E_1(a1 a2; b1) should be a1 E1(a2;b1) (-1)^{|a1|} + E1(a1;b1) a2 (-1)^{|a2||b1|}
e = X.eop_word(T.word_concat(a1, a2), (b1,))
for (wt, ms), c in sorted(e.items(), key=lambda kv: T.render_word(kv[0][0][0])):
    print(c, T.render_word(wt[0]), T.render_sign(ms))

# dd = 0 on E_2(a1; b1, b2), reduced and formal
for mode in ("reduced", "formal"):
    fid = T.f_eop(T.WORD_DATA[a1][0], (b1, b2))
    e0 = X.ex_word(T.word((fid,)))
    d1 = D.differential(e0, mode)
    d2 = D.differential(d1, mode)
    print(mode, "d1 terms:", len(d1), "dd terms:", len(d2))

# dd = 0 on F_21
fid = T.f_fop(2, 1, (a1, a2), (b1,))
e0 = X.ex_word(T.word((fid,)))
for mode in ("reduced", "formal"):
    d1 = D.differential(e0, mode)
    d2 = D.differential(d1, mode)
    print("F21", mode, "d1:", len(d1), "dd:", len(d2))

# E-prod-E consistency: E_k(E_p1(x1;y)E_p2(x2;y'); c...) vs displayed sum
x1 = T.gen_word("x", 1)
x2 = T.gen_word("x", 2)
y1 = T.gen_word("y", 1)
y2 = T.gen_word("y", 2)
X1 = X.eop_word(x1, (y1,))
X2 = X.eop_word(x2, (y2,))
assert len(X1) == len(X2) == 1
(w1t, _), _ = next(iter(X1.items()))
(w2t, _), _ = next(iter(X2.items()))
head = T.word_concat(w1t[0], w2t[0])
lhs = X.eop_word(head, (c1, b1))
# rhs via split with p1 k2 sign and fine layout, k=2, p1=p2=1
from hga_forge.signs import SignAccumulator
from hga_forge.expr import layout_sign
acc = {}
cargs = (c1, b1)
degs = dict(x1=T.word_deg(x1), x2=T.word_deg(x2), y1=T.word_deg(y1),
            y2=T.word_deg(y2))
for k1 in range(3):
    k2 = 2 - k1
    front, back = cargs[:k1], cargs[k1:]
    layout = [("m", (k1, frozenset())), ("m", (1, frozenset())),
              ("e", 0, degs["x1"]), ("e", 1, degs["y1"])]
    layout += [("e", 4 + i, T.word_deg(w)) for i, w in enumerate(front)]
    layout += [("m", (k2, frozenset())), ("m", (1, frozenset())),
               ("e", 2, degs["x2"]), ("e", 3, degs["y2"])]
    layout += [("e", 4 + k1 + i, T.word_deg(w)) for i, w in enumerate(back)]
    bit, monos = layout_sign(layout)
    bit ^= (1 * k2) & 1  # p1 k2
    sgn = SignAccumulator(bit, monos)
    # display-build of the LHS: inner map E_{p2} stands after x1, y1
    from hga_forge.signs import deg_sum
    sgn.add_mul((1, frozenset()), deg_sum((degs["x1"], degs["y1"])))
    bit, monos = sgn.frozen()
    piece = X.ex_mul(X.eop_word(w1t[0], front), X.eop_word(w2t[0], back))
    X.ex_merge_into(acc, piece, 1, bit, monos)
diff = X.ex_sub(lhs, acc)
print("E-prod-E residual:", len(diff))
