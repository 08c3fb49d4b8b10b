"""
Associative algebras and the bar differential
=============================================

For ordered (non-skew) data the ghosts live in a free algebra.  With only
a product m_2 and the algebra acting on itself by left multiplication, the
ghost differential is the one-sided bar differential.
"""

from ghostcalc import OddDerivation, check_ga_infinity, is_nilpotent
from ghostcalc import cochains as cc
from ghostcalc.instances import load_corpus

for name in ("dual-numbers", "upper-triangular-2x2", "nonassociative-m2"):
    inst = load_corpus(name)
    print(f"{name}: associativity {check_ga_infinity(inst.family).passed}, "
          f"ghost operator nilpotent {is_nilpotent(OddDerivation(inst.family)).nilpotent}")

inst = load_corpus("upper-triangular-2x2")
alg, rep = inst.family, inst.representation

# the trace functional; its differential measures a*trace(b) - trace(ab) componentwise
trace = inst.cochains["trace"]
h = cc.hochschild_differential(trace, alg)
print("d(trace) =")
print(h.format())
print("same as the ghost-built differential:", h == cc.ga_differential_component(2, trace, rep, alg))

# d o d = 0 on every basis cochain of arity <= 3
d = alg.basis.dim
ok = all(cc.hochschild_differential(cc.hochschild_differential(w, alg), alg).is_zero()
         for n in range(4) for w in cc.cochain_basis(alg.ring, n, d, skew=False))
print("d o d = 0 through arity 3:", ok)

# the left-regular module has no cohomology: the unit makes the complex contractible
print("dimensions:", cc.cohomology_dims(alg, rep, 2))
