"""Checking relative-bound certificates, and the ways a check can end.

Run with ``python demos/bound_certificates.py``.
"""

import numpy as np

from relcalc import corpus, perturbation as pt
from relcalc.perturbation import RelBoundCertificate as Cert
from relcalc.quotient import relation_norm

T = corpus.cayley_selfadjoint(4, seed=11, mv_dim=1)
S = corpus.perturbation_pair(T, "bounded-random", 11)
print(f"||S|| = {relation_norm(S):.4f}, ||T|| = {relation_norm(T):.4f}")

# Quadratic certificates are decided by one Hermitian eigenvalue problem.
((_, a),) = pt.quadratic_frontier(T, S, [0.5])
for scale in (1.0, 0.9):
    q = Cert(a * scale, 0.5, pt.QUADRATIC)
    chk = pt.certify_bound(T, S, q)
    print(f"quadratic (a={q.a:.4f}, b=0.5): holds={chk.holds} via {chk.path}")

# Linear certificates: the quadratic bound with the same constants proves them.
lin = pt.to_linear(Cert(a, 0.5, pt.QUADRATIC))
print("linear from frontier:", pt.certify_bound(T, S, lin).as_dict())

# Every linear bound forces a quadratic one for each eps. If one of those
# fails, its top eigenvector is an exact counterexample.
bad = Cert(0.2 * relation_norm(S), 0.05)
chk = pt.certify_bound(T, S, bad)
print(f"\nlinear (a={bad.a:.4f}, b=0.05): holds={chk.holds} via {chk.path} (eps={chk.eps})")
print("witness x =", np.round(chk.witness, 4))

# The linear bound implies all converted quadratic bounds on the grid.
ok = all(pt.certify_bound(T, S, pt.to_quadratic(lin, e)).holds for e in pt.EPS_GRID)
print("\nall", len(pt.EPS_GRID), "eps conversions of the frontier certificate hold:", ok)

# A bound with b < 1 moves to T + tS with constants (a/(1-b), b/(1-b)).
cert = Cert(a, 0.5, pt.LINEAR, T, S)
for t in (0.0, 0.5, 1.0):
    new = pt.lemma32_shift(cert, t)
    chk = pt.certify_bound(new.base, S, new)
    print(f"t = {t}: (a, b) = ({new.a:.4f}, {new.b:.4f}) against T + tS holds={chk.holds} via {chk.path}")
