#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rgap {

enum class Regime { Weak, Strong, Indeterminate };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Weak: return "Weak";
        case Regime::Strong: return "Strong";
        default: return "Indeterminate";
    }
}

/// Monotonicity report for a classification model.
///
/// In the weak regime, increasing_until is the closed-form bound below which
/// the (strip-center) gap strictly increases, and decreasing_from is the
/// numerically computed critical sample size beyond which it strictly
/// decreases. Strong regime carries no brackets: the gap increases for every
/// n. per_coordinate_critical holds the continuous-n argmax per coordinate
/// (+inf when that coordinate's term never decreases, NaN for zero-mean
/// coordinates).
struct RegimeReport {
    Regime regime = Regime::Indeterminate;
    std::optional<double> increasing_until;
    std::optional<double> decreasing_from;
    std::vector<double> per_coordinate_critical;
};

} // namespace rgap
