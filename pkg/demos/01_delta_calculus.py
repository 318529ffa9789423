# coding: utf-8

# # Formal delta functions
#
# Everything here is exact: series are stored on a window of exponents and
# any operation that would need coefficients outside the window raises.

# In[1]:

from virasoro import (BiSeries, DeltaExpansion, LaurentPoly, coefficient_formula,
                      delta_derivative, expand_izw, project_pi, realize)


# The delta function is sum_n z^(-n-1) w^n. Look at a few coefficients.

# In[2]:

M = 6
d0 = delta_derivative(0, M)
for n in range(-2, 3):
    print(f"z^{-n - 1} w^{n}:", d0.coefficient(-n - 1, n))


# The difference of the two expansions of 1/(z-w) is exactly the delta function.

# In[3]:

diff = expand_izw(0, "zw", M) - expand_izw(0, "wz", M)
print(diff.agrees(d0))


# Multiplying by (z-w) lowers the derivative order by one. Each factor costs
# one unit of window.

# In[4]:

d2 = delta_derivative(2, M)
print(d2.mul_zw(1).agrees(delta_derivative(1, M)))
print(d2.mul_zw(3).is_zero(), d2.mul_zw(3).window)


# Build a local series from a finite delta expansion, add something
# holomorphic in z, and project back.

# In[5]:

w = lambda e, v=1: LaurentPoly.monomial(e, v, "w")
d = DeltaExpansion({0: w(1), 2: w(-1, 3)})
a = realize(d, 8) + BiSeries({(0, 2): 5, (3, -1): 1}, 8)
print(project_pi(a, 3) == d)


# Coefficient of z^(-m-1) w^(-n-1), read off directly and via the closed form.

# In[6]:

for m, n in [(2, -3), (3, -1), (-1, 0)]:
    print(m, n, a.coefficient(-m - 1, -n - 1), coefficient_formula(d, m, n))
