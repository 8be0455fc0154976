"""Pencils of skew forms x^ + t a^ and the argument-shift subalgebra.

At a point x the differentials of the shift subalgebra F_a span the sum of
the kernels of the regular members of the pencil.  We check this in gl_3 and
look at the Jordan-Kronecker census of a few pencils.
"""

import random

from poissonlab.invariants import differential_span, mf_subalgebra
from poissonlab.lie import classical, sample_regular, semisimple_representative, skew_form
from poissonlab.pencils import SkewPencil, jordan_kronecker_census, kernel_sum_L

rng = random.Random("demo/pencils")

if __name__ == "__main__":
    sl2 = classical("sl", 2)
    e, h, f = sl2.basis
    rep = jordan_kronecker_census(SkewPencil(skew_form(sl2, e), skew_form(sl2, f)), rng)
    print("sl2, pencil of e and f:", rep.to_json())

    g = classical("gl", 3)
    a = sample_regular(g, rng)
    for label, x in [("regular x", sample_regular(g, rng)),
                     ("x = diag(1,1,0)", semisimple_representative(g, [1, 1, 0]))]:
        p = SkewPencil(skew_form(g, x), skew_form(g, a))
        L = kernel_sum_L(p)
        span = differential_span(mf_subalgebra(g, a), x)
        census = jordan_kronecker_census(p, rng)
        print(f"gl3, {label}: dim L = {L.dim}, dim d_x F_a = {span.dim}, equal: {L == span}; "
              f"Kronecker sizes {census.kronecker_sizes}, Jordan blocks {census.jordan}")
