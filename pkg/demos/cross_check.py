"""Compare the syntactic decision procedure with skolemization plus
unification, and with brute-force search for small models, on a batch of
random two-literal formulas."""

import collections
import time

from nnfcalc import decide_psi
from nnfcalc.corpus import corpus
from nnfcalc.oracle import BudgetExceeded, find_model, skolem_decide

tally = collections.Counter()
start = time.perf_counter()
for psi in corpus(2000, seed=5, max_arity=3):
    contradictory = decide_psi(psi).contradictory
    tally["contradictory" if contradictory else "satisfiable"] += 1
    tally["skolem agrees"] += contradictory == skolem_decide(psi)
    try:
        model = find_model(psi, max_size=2)
    except BudgetExceeded:
        continue
    if model is not None:
        tally["small model found"] += 1
        # a model refutes any claim of contradiction
        assert not contradictory

for key, count in sorted(tally.items()):
    print(f"{key:20} {count}")
print(f"{time.perf_counter() - start:.1f} s")
