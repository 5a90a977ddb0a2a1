import sys
sys.path.insert(0, "src")
from hga_forge.terms import gen_word
from hga_forge.families import homotopy_defect
from hga_forge.structure import phi_family, phi_transposed, hc_family
from hga_forge.expr import render_expr


def slots2(n):
    return tuple((gen_word("a", i + 1), gen_word("b", i + 1))
                 for i in range(n))


phi = phi_family()
pt = phi_transposed()
h = hc_family("fwd")
d = homotopy_defect(h, pt, phi, 3, slots2(3))
print(f"hc-fwd n=3 residual: {len(d)}")
print(render_expr(d))
print()
h2 = hc_family("rev")
d2 = homotopy_defect(h2, phi, pt, 3, slots2(3))
print(f"hc-rev n=3 residual: {len(d2)}")
print(render_expr(d2))
