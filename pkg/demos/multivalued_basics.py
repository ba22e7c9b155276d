"""A tour of linear relations that are not operators.

Run with ``python demos/multivalued_basics.py``. Every number printed is
recomputed from scratch; nothing is hard-coded except the inputs.
"""

import numpy as np

import relcalc as rc
from relcalc import corpus
from relcalc import relation as rel
from relcalc.quotient import norm_at, operator_part

np.set_printoptions(precision=4, suppress=True)
e1, e2 = np.eye(2)


def show(label, T):
    p = rc.parts(T)
    c = rc.classify(T)
    print(f"{label}: dim {T.dim}, D(T) {p.domain.rank}, R(T) {p.range.rank}, "
          f"N(T) {p.null.rank}, T(0) {p.mv.rank}; "
          f"operator={c.is_operator} hermitian={c.is_hermitian} selfadjoint={c.is_selfadjoint}")


# A relation is any subspace of C^n x C^n. Here (e1, e1 + e2) is in the graph
# and so is (0, e2): the value at e1 is the whole line e1 + span{e2}.
T = rc.from_generators([np.r_[e1, e1 + e2], np.r_[0, 0, e2]], n=2)
show("T", T)

# The operator part picks the representative orthogonal to T(0).
op = operator_part(T)
print("operator part at e1:", op(e1))
print("||T(e1)|| =", norm_at(T, e1), "(distance from e1 + e2 to span{e2})")

# Inverting swaps the two blocks, so T(0) becomes the kernel.
show("T^-1", rc.inverse(T))

# T T^-1 is the identity on R(T), up to the multivalued part.
show("T T^-1", rc.compose(T, rc.inverse(T)))

# Sums only live on the common domain.
A = rc.from_generators([np.r_[e1, e1]])
B = rc.from_generators([np.r_[e2, e2]])
print("dim (A + B) with disjoint domains:", rc.op_sum(A, B).dim)

# The adjoint of a relation is always defined, even when T is not densely
# defined. span{(e1, 0)} is Hermitian but its adjoint is three-dimensional.
H = rc.from_generators([np.r_[e1, 0, 0]])
show("H", H)
show("H*", rc.adjoint(H))

# A Cayley-type relation: self-adjoint with a one-dimensional T(0).
S = corpus.cayley_selfadjoint(3, seed=4, mv_dim=1)
show("Cayley", S)
print("||S|| =", round(rc.relation_norm(S), 6),
      " ||2i S|| =", round(rc.relation_norm(rc.scalar_mul(2j, S)), 6))
print("S* == S:", rel.equal(rc.adjoint(S), S))
