"""
Lie algebra cohomology of sl(2) from its ghost operator
=======================================================

Load the bundled sl(2) instance, build the odd derivation on its ghost
ring, confirm it squares to zero and read off the cohomology.
"""
from ghostcalc import OddDerivation, is_nilpotent
from ghostcalc import cochains as cc
from ghostcalc.instances import load_corpus

inst = load_corpus("sl2")
fam = inst.family
S = OddDerivation(fam)

# images of the ghost generators: S(eta^j) = -1/2 C^j_ab eta^a eta^b
for j, name in enumerate(inst.basis.names):
    print(f"S(eta^{name}) =", S.apply_to_generator(j).format())

print(is_nilpotent(S).describe(inst.basis))

# dim H^n for n = 0..3; expect 1, 0, 0, 1
for row in cc.cohomology_table(fam, None, 3):
    print(f"H^{row.degree}: {row.dim_cohomology}   (C^{row.degree} has dimension {row.dim_cochains})")

# the corrupted copy is caught with a concrete witness
bad = load_corpus("sl2-corrupted")
print(is_nilpotent(OddDerivation(bad.family)).describe(bad.basis))
