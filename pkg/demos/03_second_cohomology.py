# coding: utf-8

# # Diagonal 2-cocycles of the Witt algebra
#
# Within the ansatz omega(L_m, L_n) = f(m) delta_{m+n,0} the cocycle
# condition is a linear system on f(1), ..., f(M).

# In[1]:

from virasoro import (Cochain, DiagonalCocycle, build_central_extension, coboundary,
                      diagonal_cocycle_solve, is_coboundary, is_cocycle, virasoro_cocycle)
from virasoro.cohomology import basis_one_cochain


# In[2]:

for M in (4, 6, 10):
    r = diagonal_cocycle_solve(M)
    print(M, r.solution_dimension, r.coboundary_dimension, r.quotient_dimension)

rep = diagonal_cocycle_solve(10).normalized_representative
print(rep)
print(rep == virasoro_cocycle(10))


# f(m) = m is a coboundary; f(m) = m^3 is a cocycle that is not.

# In[3]:

M = 8
f1 = DiagonalCocycle.from_function(lambda m: m, M)
f3 = DiagonalCocycle.from_function(lambda m: m ** 3, M)
print(is_coboundary(f1).value((0,)))
print(bool(is_cocycle(f3)), is_coboundary(f3))


# A non-cocycle is caught with the smallest offending triple.

# In[4]:

chk = is_cocycle(DiagonalCocycle.from_function(lambda m: m ** 5, M))
print(chk.counterexample, chk.residual)


# Changing basis L_n -> L_n + mu(L_n) c turns omega into omega + d(mu).

# In[5]:

omega = Cochain.from_diagonal(virasoro_cocycle(M), M)
mu = basis_one_cochain(0, M).scale(2)
ext = build_central_extension(omega)
shifted = build_central_extension(omega + coboundary(mu))
print(ext.table[(1, -1)], "->", shifted.table[(1, -1)])
print(all(ext.relabel(mu)[k] == shifted.table[k] for k in shifted.table))
