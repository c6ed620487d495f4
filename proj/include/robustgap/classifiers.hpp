#pragma once

#include <vector>

// Closed forms of the standard and robust max-correlation classifiers given
// the empirical signed mean u = (1/n) sum y_i x_i:
//   w_std = W sign(u),   w_rob = W sign(u - eps * sign(u)),
// componentwise, with sign(0) = 0. Both the exact binomial sums and the Monte
// Carlo estimator are expectations of gap_weight, so the atom convention at
// |u| == eps is fixed in exactly one place.

namespace rgap::classifiers {

inline double sign0(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

/// Per-coordinate contribution of (w_std - w_rob)/W to the gap:
/// sign(u) - sign(u - eps*sign(u)); values in {0, +-1, +-2}.
inline double gap_weight(double u, double eps) {
    const double s = sign0(u);
    return s - sign0(u - eps * s);
}

/// w_std = W sign(u) componentwise.
std::vector<double> standard_classifier(const std::vector<double>& u, double W);

/// w_rob = W sign(u - eps sign(u)) componentwise.
std::vector<double> robust_classifier(const std::vector<double>& u, double W, double eps);

} // namespace rgap::classifiers
