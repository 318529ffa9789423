# coding: utf-8

# # The TT operator product expansion
#
# Start from a self-OPE of order four with the top coefficient fixed to c/2,
# let the exchange z <-> w constrain the rest, then pin the free coefficient
# with the bracket relations of L_-1 and L_0.

# In[1]:

from virasoro import C, derive_tt, solve_exchange_constraints, tt_ope
from virasoro.exchange import t_identification_report


# In[2]:

sol = solve_exchange_constraints(4, {3: C / 2})
print("\n".join(sol.lines()))


# In[3]:

d = derive_tt()
print("c^1(w) =", d.c1)
print("T(z)T(w) ~", d.ope.display())


# In[4]:

for row in t_identification_report(d.ope):
    print(row["relation"], "->", row["holds"])


# The same constraints with an even top order cannot be satisfied: swapping
# z and w flips the sign of the top coefficient.

# In[5]:

probe = solve_exchange_constraints(5, {4: 1})
print("\n".join(probe.lines()[-4:]))


# Brackets of modes from the OPE, computed two ways.

# In[6]:

from virasoro import mode_bracket_from_ope, residue_pairing_bracket

ope = tt_ope()
for m, n in [(2, -2), (3, -3), (1, -1), (3, 5)]:
    print(f"[L_{m}, L_{n}] =", residue_pairing_bracket(ope, m, n),
          "|", mode_bracket_from_ope(ope, m, n))
