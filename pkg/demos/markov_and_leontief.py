"""
Markov chains and Leontief models side by side
==============================================

Several two-state chains run together, then closed and open input-output
models solved per block.
"""

import numpy as np

import smla

chain = smla.MarkovSuperChain([
    [[0.19, 0.81], [0.92, 0.08]],
    [[0.31, 0.69], [0.23, 0.77]],
    [[0.73, 0.27], [0.50, 0.50]],
])
x0 = smla.DistributionSuperVector.uniform(chain.sizes)
print("after one step:", smla.step(chain, x0, 1))
print("after ten steps:", smla.step(chain, x0, 10))

lim = smla.ergodic_limit(chain)
for t, (pi, k) in enumerate(zip(lim.stationary, lim.iterations)):
    print(f"block {t}: stationary {np.round(pi, 6)} after {k} iterations")

try:
    smla.ergodic_limit(smla.MarkovSuperChain([[[0, 1], [1, 0]]]))
except smla.NotErgodic as exc:
    print("periodic chain:", exc)

closed = smla.LeontiefModel("closed", [[[0.5, 0.25], [0.5, 0.75]],
                                       [[0.2, 0.3, 0.5], [0.4, 0.4, 0.2], [0.4, 0.3, 0.3]]],
                            variant="diagonal")
sol = smla.leontief_closed_solve(closed)
for t, p in enumerate(sol.prices):
    print(f"prices {t}: {np.round(p, 6)} unique={sol.unique[t]}")

open_model = smla.LeontiefModel("open", [[[0.5, 0.0], [0.0, 0.5]], [[0.1, 0.2], [0.3, 0.1]]],
                                demand=[[1, 1], [10, 5]])
out = smla.leontief_open_solve(open_model)
for t, x in enumerate(out.production):
    print(f"production {t}: {np.round(x, 6)} productive={out.productive[t]}")
