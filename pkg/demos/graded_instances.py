"""
Graded data and the two sign conventions
========================================

With generators of mixed degree the sign rule of the ghost ring matters.
The standard convention uses the shifted degree; the primary one uses the
original degree with an extra overall minus.  An instance valid in one
convention is generally not valid in the other.
"""
from ghostcalc import BracketFamily, Convention, GhostRing, OddDerivation, check_cl_infinity, is_nilpotent
from ghostcalc import cochains as cc
from ghostcalc.instances import load_corpus
from ghostcalc.random_instances import adjoint_representation

inst = load_corpus("graded-standard")
fam = inst.family
print(check_cl_infinity(fam).summary(inst.basis))
print(is_nilpotent(OddDerivation(fam)).describe(inst.basis))

# the same brackets read with the primary sign rule
other = BracketFamily(GhostRing(inst.basis, Convention.PRIMARY), fam.entries)
print("under the primary rule:", check_cl_infinity(other).summary(inst.basis))

# l_3 feeds S_3, so S_3 S_3 raises arity by 4; allow for it
w = inst.cochains["theta_w"]
print("S(theta_w) by arity:", {n: c.format() for n, c in cc.total_differential(w, None, fam, 8).items()})
print("S^2(theta_w) =", cc.square(w, None, fam, 8) or 0)

# the adjoint module with degrees shifted by -vdeg
adj = adjoint_representation(fam)
print("adjoint module nilpotent:", is_nilpotent(OddDerivation(fam, adj)).nilpotent)

# generator nilpotency is not the whole story for every grading:
# H^0..H^3 are defined, but S^2 fails from degree 3 to degree 5
prim = load_corpus("graded-primary")
print(is_nilpotent(OddDerivation(prim.family)).describe(prim.basis))
try:
    print(cc.cohomology_dims(prim.family, None, 3))
    cc.cohomology_table(prim.family, None, 4)
except cc.NotNilpotentError as exc:
    print("cohomology refused:", exc)
