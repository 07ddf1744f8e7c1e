# %% [markdown]
# # One realization through each strategy
#
# Two sources at u = 0 and 0.3, 0 dB, three snapshots per bin over 41 bins.

# %%
import numpy as np

from sparse_enum import synthesize
from sparse_enum.harness import base_scenario
from sparse_enum.pipeline import ap_spectrum, iss_spectra, nb_spectrum, enumerate_spectrum
from sparse_enum.spectral import wideband_periodogram, narrowband_periodogram

sc = base_scenario((0.0, 0.3), 3)
x = synthesize(sc, seed=1)
print(x.data.shape)

# %% [markdown]
# The averaged periodogram keeps the source peaks while sidelobes from
# different bins fall in different places.

# %%
t_wide = wideband_periodogram(x)
t_one = narrowband_periodogram(x, 20)
peaks = t_wide.u_grid[np.argsort(t_wide.values)[-3:]]
print("largest wideband values at u =", np.sort(peaks))
print("sidelobe floor, one bin vs averaged:", np.median(t_one.values).round(2), np.median(t_wide.values).round(2))

# %%
print("AP eigenvalues :", ap_spectrum(x).magnitudes.round(2))
xn = synthesize(sc.narrowband_equivalent(), seed=1)
print("NB eigenvalues :", nb_spectrum(xn).magnitudes.round(2))

# %%
for criterion in ("mdl", "mdlgap", "sorte"):
    ap = enumerate_spectrum("ap", criterion, ap_spectrum(x))
    iss = enumerate_spectrum("iss", criterion, iss_spectra(x))
    nb = enumerate_spectrum("nb", criterion, nb_spectrum(xn))
    print(f"{criterion:>7}: AP {ap.estimate}  ISS {iss.estimate}  NB {nb.estimate}")
