# %% [markdown]
# # Large-sample behaviour of MDLgap
#
# In the snapshot limit the MDLgap curve tends to h(q), which is zero above
# the true count and rises above its value at the true count for smaller q.
# The second half checks that the narrowband estimate settles at the true count as snapshots grow.

# %%
import numpy as np

from sparse_enum.criteria import ensemble_eigs, h_asymptotic
from sparse_enum.harness import base_scenario
from sparse_enum.pipeline import run_nb
from sparse_enum.synth import nine_source_u, synthesize

ell = ensemble_eigs([1.0] * 9, 1.0, 14)
print([round(h_asymptotic(ell, q), 4) for q in range(1, 14)])

# %%
sc = base_scenario(nine_source_u(), 1).replace(freqs=(100.0,))
for L in (100, 1000, 10_000):
    est = [run_nb(synthesize(sc.replace(snapshots=L), s), "mdlgap").estimate for s in range(20)]
    print(L, np.bincount(est, minlength=14))
