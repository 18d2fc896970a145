"""Pruning removes literals that cannot take part in any refutation before
the pairwise decision runs."""

from nnfcalc import decide_wedge_nnf, prune, unifiable_pairs
from nnfcalc.syntax import parse, to_text

phi = parse("A x1 E y2 (~G(y2,y2) & E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1)) & G(x1,y2))")

for result in unifiable_pairs(phi):
    status = "unifiable" if result.unifiable else "fails " + ", ".join(result.failed)
    print(f"{str(result.pair):32} {status}")

pruned = prune(phi)
print("pruned:", to_text(pruned))
print("verdict before pruning:", decide_wedge_nnf(phi).verdict.value)
print("verdict after pruning: ", decide_wedge_nnf(pruned).verdict.value)
