"""Deficiency indices of a boundary-restricted Jacobi matrix, and why a
relatively bounded Hermitian perturbation cannot change them.

Run with ``python demos/deficiency_under_perturbation.py [seed]``.
"""

import sys

import numpy as np

from relcalc import corpus, perturbation as pt, relation as rel
from relcalc.deficiency import deficiency_index, deficiency_indices
from relcalc.invariance import invariance_report

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
n = 6

# Graph of a tridiagonal matrix, but only on vectors that vanish at both
# ends. The result is Hermitian and not densely defined.
rng = np.random.default_rng(seed)
diag = rng.uniform(-1, 1, n)
T = corpus.jacobi_relation(n, diag, np.ones(n - 1), restrict_ends=True)
c = rel.classify(T)
print(f"T: dim {T.dim} in C^{n}, hermitian={c.is_hermitian}, selfadjoint={c.is_selfadjoint}")

rep = deficiency_indices(T, sample_count=10, seed=seed)
print(f"d+ = {rep.d_plus}, d- = {rep.d_minus}, constant on both half-planes: {rep.constancy_ok}")
print("sampled indices:", sorted(set(rep.indices)))

# A Hermitian perturbation defined on a larger domain, with no multivalued
# part, so both inclusion hypotheses hold.
S = corpus.perturbation_pair(T, "bounded-random", seed)
inc = pt.inclusion_report(T, S)
print("\nS Hermitian:", rel.classify(S).is_hermitian, "| inclusions:", inc.as_dict())

# The whole trade-off between a' and b' in ||S x||^2 <= a'^2 ||x||^2 + b'^2 ||T x||^2.
for b, a in pt.quadratic_frontier(T, S, [0.0, 0.25, 0.5, 1.0, 2.0]):
    print(f"  b' = {b:4.2f}  minimal a' = {a:.4f}")

# Follow the deficiency projectors of T + tS from t = 0 to t = 1. A gap
# below 1 between neighbours forces equal ranks, so the index is carried
# along the whole path.
trace = pt.homotopy_sweep(T, S, initial_grid=6)
print(f"\nhomotopy: {len(trace.points)} grid points, converged={trace.converged}")
for p in trace.points:
    print(f"  t = {p.t:5.3f}  rank(+i) = {p.rank_plus}  rank(-i) = {p.rank_minus}  "
          f"gap to previous = {max(p.gap_plus, p.gap_minus):.3f}")

TS = rel.op_sum(T, S)
print("\nd(T + S) computed directly:", (deficiency_index(TS, 1j), deficiency_index(TS, -1j)))
v = invariance_report(T, S, "thm31", seed=seed)
print("invariance verdict:", v.status, v.d_T, "->", v.d_other)
