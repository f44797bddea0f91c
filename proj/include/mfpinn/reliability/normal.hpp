#pragma once

namespace mfpinn::reliability {

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision.
double normal_cdf(double x);

/// Standard normal quantile for p in (0, 1): rational starting guess refined
/// by one Newton step, |normal_cdf(result) - p| <= 1e-9.
double inverse_normal_cdf(double p);

/// beta = Phi^-1(1 - pf); +inf at pf = 0 and -inf at pf = 1.
double reliability_index(double pf);

}  // namespace mfpinn::reliability
