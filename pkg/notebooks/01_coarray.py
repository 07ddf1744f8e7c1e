# %% [markdown]
# # Difference coarrays
#
# A sparse array measures far more distinct lags than it has sensors. This
# walks through the six-sensor minimum redundancy array and two textbook
# alternatives.

# %%
from sparse_enum import difference_coarray, mra6, nested, coprime

for geom in (mra6(), nested(2, 3), coprime(2, 3)):
    co = difference_coarray(geom)
    print(f"{geom.name:>14}  N={geom.n_sensors}  aperture={geom.aperture}  P={co.contiguous_P}  lags={len(co.lags)}")

# %% [markdown]
# Every lag of the MRA between -13 and 13 is present, so the augmented
# covariance is 14 x 14 and up to 13 sources can be enumerated with 6 sensors.

# %%
co = difference_coarray(mra6())
for k in range(0, 14):
    pairs = [(mra6().positions[a], mra6().positions[b]) for a, b in co.lag_pairs[k]]
    print(f"k={k:2d}  weight={co.weight(k)}  pairs={pairs}")

# %% [markdown]
# Lag averaging is a fixed linear map from the vectorised covariance to the
# correlation vector; each row averages the entries that share a lag.

# %%
A = co.averaging_matrix
print(A.shape, A.sum(axis=1)[:5])
