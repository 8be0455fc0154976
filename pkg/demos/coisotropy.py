"""Corank of the action of the corner subgroup on adjoint orbits.

For (GL_n, GL_{n-1}) and (SO_n, SO_{n-1}) the action on every orbit is
coisotropic (corank 0).  For (SL_3, SL_2) we print the full rank data at
diag(1, 1, -2); the identity 2 b(image) + corank = dim Gx holds exactly.
"""

import random

from poissonlab.corank import PairSpec, coisotropy_suite, hamiltonian_report
from poissonlab.exact import ExactMatrix
from poissonlab.lie import nilpotent_orbits

rng = random.Random("demo/coisotropy")

if __name__ == "__main__":
    for ident in ("gl:3/gl:2", "gl:4/gl:3", "so:4/so:3", "so:5/so:4"):
        pair = PairSpec.parse(ident)
        orbits = [(o.label, o.representative) for o in nilpotent_orbits(pair.G)]
        rep = coisotropy_suite(pair, orbits, rng, budget=10)
        print(f"{ident}: {len(orbits)} nilpotent orbits, coisotropic on all: {rep.passed}")
    for ident, x in (("gl:3/gl:2", ExactMatrix.diag([2, 2, 1])),
                     ("sl:3/sl:2", ExactMatrix.diag([1, 1, -2]))):
        rep = hamiltonian_report(PairSpec.parse(ident), x, rng)
        print(ident, rep.to_json())
