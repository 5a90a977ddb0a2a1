import sys
sys.path.insert(0, "src")
from hga_forge.terms import gen_word
from hga_forge.families import twisting_defect, homotopy_defect
from hga_forge.structure import (phi_family, phi_assoc_left, phi_assoc_right,
                                 phi_transposed, hc_family)
from hga_forge.expr import render_expr


def slots3(n):
    return tuple((gen_word("a", i + 1), gen_word("b", i + 1),
                  gen_word("c", i + 1)) for i in range(n))


def slots2(n):
    return tuple((gen_word("a", i + 1), gen_word("b", i + 1))
                 for i in range(n))


fl = phi_assoc_left()
fr = phi_assoc_right()
for n in (1, 2, 3):
    d = twisting_defect(fl, n, slots3(n))
    print(f"twisting defect phi(phix1) n={n}: {len(d)}")
    d = twisting_defect(fr, n, slots3(n))
    print(f"twisting defect phi(1xphi) n={n}: {len(d)}")

pt = phi_transposed()
for n in (1, 2, 3):
    d = twisting_defect(pt, n, slots2(n))
    print(f"twisting defect phiT n={n}: {len(d)}")

phi = phi_family()
for orient, src, dst in (("fwd", pt, phi), ("rev", phi, pt)):
    h = hc_family(orient)
    for n in (1, 2, 3):
        d = homotopy_defect(h, src, dst, n, slots2(n))
        print(f"homotopy defect hc-{orient} n={n}: {len(d)}")
        if d and n <= 2:
            print(render_expr(d))
