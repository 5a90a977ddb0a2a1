import sys
sys.path.insert(0, "src")
from hga_forge import terms
from hga_forge.terms import gen_word
from hga_forge.families import twisting_defect
from hga_forge.structure import phi_family, phi_recipes, hc_recipes
from hga_forge.recipes import recipes_to_expr
from hga_forge.expr import ex_sub
from hga_forge.expr import render_expr


def slots2(n):
    return tuple((gen_word("a", i + 1), gen_word("b", i + 1)) for i in range(n))


phi = phi_family()

# golden eyeball: phi_(1..3)
for n in (1, 2, 3):
    e = recipes_to_expr(phi_recipes(n), slots2(n))
    print(f"phi_{n}: {len(e)} terms")
    for line in sorted(render_expr(e).splitlines()):
        print("   ", line)

for n in (1, 2, 3, 4):
    d = twisting_defect(phi, n, slots2(n))
    print(f"twisting defect phi n={n}: {len(d)} residual terms")
    if d and n <= 2:
        for line in sorted(render_expr(d).splitlines()):
            print("   ", line)
