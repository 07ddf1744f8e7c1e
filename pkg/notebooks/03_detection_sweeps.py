# %% [markdown]
# # Detection probability sweeps
#
# Reduced-trial versions of the preset sweeps. Raise `TRIALS` for smoother
# curves; the CLI equivalent is `sparse-enum sweep --preset fig4 --trials 300`.

# %%
from pathlib import Path

from sparse_enum.harness import figure_scenarios, run_sweep

TRIALS = 50
OUT = Path("results")

# %%
fig4 = figure_scenarios()["fig4"].with_(trials=TRIALS)
stats = run_sweep(fig4)
print(stats.summary())
stats.write(OUT)

# %%
fig5 = figure_scenarios()["fig5"].with_(trials=TRIALS, grid=tuple(range(-14, 11, 4)))
stats = run_sweep(fig5)
print(stats.summary())
stats.write(OUT)
