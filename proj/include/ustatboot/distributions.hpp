#pragma once

namespace ustatboot {

/// Standard normal quantile (Wichura's AS 241, relative error about 1e-16).
/// Returns -inf / +inf at p = 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

/// Standard normal c.d.f.
double normal_cdf(double x) noexcept;

/// Kolmogorov distribution F_K(x) = 1 - 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2),
/// the law of the supremum of a Brownian bridge. Zero for x <= 0.
double kolmogorov_cdf(double x) noexcept;

}  // namespace ustatboot
