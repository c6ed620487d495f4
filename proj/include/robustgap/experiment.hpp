#pragma once

#include "robustgap/bernoulli.hpp"
#include "robustgap/gaussian.hpp"
#include "robustgap/regime.hpp"
#include "robustgap/regression.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// Experiment orchestration: parameter sweeps, figure-reproduction presets,
// CSV emission and optional static SVG plots. CSV output is byte-identical
// for identical configurations, independent of worker count.

namespace rgap::cli {

enum class Family { GaussianGap, BernoulliGap, RegressionGap, TestLoss };
enum class Model { Gaussian, Bernoulli, Regression };

struct ExperimentConfig {
    Family family = Family::GaussianGap;
    Model model = Model::Gaussian;

    gaussian::GaussianSpec gauss;      // eps fields come from eps_list
    bernoulli::BernoulliSpec bern;
    regression::RegressionSpec reg;

    std::int64_t n_min = 1;
    std::int64_t n_max = 1;
    std::vector<double> eps_list;      // swept budgets (empty: use tau_list)
    std::vector<double> tau_list;      // Bernoulli signal-strength sweep
    std::uint64_t trials = 100000;     // MC families only
    std::uint64_t seed = 12345;
    int workers = 0;                   // 0: hardware concurrency
    std::string output_path;           // empty: no CSV side effect
    bool plot = false;
    bool log_x = false;

    void validate() const;
};

struct GapPoint {
    std::int64_t n = 0;
    double value = 0.0;
    std::optional<double> std_err;
    bool divergent = false;  // emitted as the literal token "divergent"
};

struct GapCurve {
    std::string family;  // CSV family column
    std::string label;   // CSV param_label column
    std::vector<GapPoint> points;
};

/// Round-trip-safe value formatting (17 significant digits).
std::string format_value(double v);

/// Dispatch a sweep to the exact or Monte Carlo operations of the family,
/// write CSV (and SVG when requested), and return the curves.
std::vector<GapCurve> run(const ExperimentConfig& config);

/// Regime report printed as text; appended to the CSV when a path is given.
RegimeReport phase_report(const gaussian::GaussianSpec& spec, std::ostream& text,
                          const std::string& csv_path = {});
RegimeReport phase_report(const bernoulli::BernoulliSpec& spec, std::ostream& text,
                          const std::string& csv_path = {});

/// Named figure-reproduction presets: fig1a, fig1b, fig2-gaussian,
/// fig2-poisson, fig5a, fig5b. Overridable trials/seed/workers.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

void write_csv(std::ostream& out, const std::vector<GapCurve>& curves);
void write_csv(const std::string& path, const std::vector<GapCurve>& curves);
void write_svg(const std::string& path, const std::vector<GapCurve>& curves, bool log_x);

} // namespace rgap::cli
