#include "robustgap/experiment.hpp"

#include "robustgap/errors.hpp"
#include "robustgap/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rgap::cli {

namespace {

const char* family_name(Family f) {
    switch (f) {
        case Family::GaussianGap: return "gaussian-gap";
        case Family::BernoulliGap: return "bernoulli-gap";
        case Family::RegressionGap: return "regression-gap";
        default: return "test-loss";
    }
}

std::string format_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ExperimentConfig::validate() const {
    if (n_min < 1 || n_min > n_max)
        throw std::domain_error("config: need 1 <= n_min <= n_max");
    if (eps_list.empty() && tau_list.empty())
        throw std::domain_error("config: eps or tau list must be non-empty");
    if (family == Family::RegressionGap || model == Model::Regression) {
        if (trials < 2) throw std::domain_error("config: trials must be >= 2");
        if (!tau_list.empty()) throw std::domain_error("config: tau sweep needs the Bernoulli model");
    }
    if (!eps_list.empty() && !tau_list.empty())
        throw std::domain_error("config: sweep either eps or tau, not both");
    for (double e : eps_list)
        if (!(e >= 0.0) || !std::isfinite(e)) throw std::domain_error("config: eps must be finite and >= 0");
    for (double t : tau_list)
        if (!(t > 0.0 && t < 1.0)) throw std::domain_error("config: tau must be in (0,1)");
}

namespace {

std::vector<GapCurve> run_gaussian_gap(const ExperimentConfig& c) {
    std::vector<GapCurve> curves;
    for (double eps : c.eps_list) {
        gaussian::GaussianSpec spec = c.gauss;
        spec.eps = eps;
        GapCurve curve{family_name(c.family), "eps=" + format_short(eps), {}};
        for (std::int64_t n = c.n_min; n <= c.n_max; ++n)
            curve.points.push_back({n, gaussian::exact_gap(spec, n), std::nullopt, false});
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<GapCurve> run_bernoulli_gap(const ExperimentConfig& c) {
    std::vector<GapCurve> curves;
    auto sweep = [&](const bernoulli::BernoulliSpec& spec, const std::string& tag) {
        GapCurve gn{family_name(c.family), tag + ",gn", {}};
        GapCurve sn{family_name(c.family), tag + ",sn", {}};
        for (std::int64_t n = c.n_min; n <= c.n_max; ++n) {
            gn.points.push_back({n, bernoulli::exact_gap(spec, n), std::nullopt, false});
            sn.points.push_back({n, bernoulli::strip_center(spec, n), std::nullopt, false});
        }
        curves.push_back(std::move(gn));
        curves.push_back(std::move(sn));
    };
    if (!c.tau_list.empty()) {
        for (double tau : c.tau_list) {
            bernoulli::BernoulliSpec spec = c.bern;
            spec.tau = tau;
            sweep(spec, "tau=" + format_short(tau));
        }
    } else {
        for (double eps : c.eps_list) {
            bernoulli::BernoulliSpec spec = c.bern;
            spec.eps = eps;
            sweep(spec, "eps=" + format_short(eps));
        }
    }
    return curves;
}

std::vector<GapCurve> run_regression_gap(const ExperimentConfig& c) {
    std::vector<GapCurve> curves;
    for (double eps : c.eps_list) {
        regression::RegressionSpec spec = c.reg;
        spec.eps = eps;
        GapCurve curve{family_name(c.family), "eps=" + format_short(eps), {}};
        for (std::int64_t n = c.n_min; n <= c.n_max; ++n) {
            if (spec.input_dist == regression::InputDist::StandardNormal && n == 1) {
                // E[(w_std_1 - w*)^2] is infinite; no finite estimate exists
                curve.points.push_back({n, 0.0, std::nullopt, true});
                continue;
            }
            const sampler::McEstimate e =
                regression::mc_scaled_gap(spec, n, c.trials, c.seed, c.workers);
            curve.points.push_back({n, e.mean, e.std_err, false});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<GapCurve> run_test_loss(const ExperimentConfig& c) {
    std::vector<GapCurve> curves;
    const char* fam = family_name(c.family);
    if (c.model == Model::Gaussian) {
        GapCurve std_curve{fam, "std", {}};
        for (std::int64_t n = c.n_min; n <= c.n_max; ++n)
            std_curve.points.push_back({n, gaussian::test_loss_standard(c.gauss, n), std::nullopt, false});
        curves.push_back(std::move(std_curve));
        for (double eps : c.eps_list) {
            gaussian::GaussianSpec spec = c.gauss;
            spec.eps = eps;
            GapCurve rob{fam, "rob,eps=" + format_short(eps), {}};
            for (std::int64_t n = c.n_min; n <= c.n_max; ++n)
                rob.points.push_back({n, gaussian::test_loss_robust(spec, n), std::nullopt, false});
            curves.push_back(std::move(rob));
        }
    } else if (c.model == Model::Bernoulli) {
        auto sweep = [&](const bernoulli::BernoulliSpec& spec, const std::string& tag) {
            GapCurve std_curve{fam, tag + ",std", {}};
            GapCurve rob{fam, tag + ",rob", {}};
            for (std::int64_t n = c.n_min; n <= c.n_max; ++n) {
                std_curve.points.push_back({n, bernoulli::test_loss_standard(spec, n), std::nullopt, false});
                rob.points.push_back({n, bernoulli::test_loss_robust(spec, n), std::nullopt, false});
            }
            curves.push_back(std::move(std_curve));
            curves.push_back(std::move(rob));
        };
        if (!c.tau_list.empty()) {
            for (double tau : c.tau_list) {
                bernoulli::BernoulliSpec spec = c.bern;
                spec.tau = tau;
                sweep(spec, "tau=" + format_short(tau));
            }
        } else {
            for (double eps : c.eps_list) {
                bernoulli::BernoulliSpec spec = c.bern;
                spec.eps = eps;
                sweep(spec, "eps=" + format_short(eps));
            }
        }
    } else {
        // scaled test losses of both fits over the same trial streams
        bool std_done = false;
        GapCurve std_curve{fam, "std", {}};
        for (double eps : c.eps_list) {
            regression::RegressionSpec spec = c.reg;
            spec.eps = eps;
            GapCurve rob{fam, "rob,eps=" + format_short(eps), {}};
            for (std::int64_t n = c.n_min; n <= c.n_max; ++n) {
                const bool divergent_std =
                    spec.input_dist == regression::InputDist::StandardNormal && n == 1;
                if (divergent_std && !std_done) {
                    std_curve.points.push_back({n, 0.0, std::nullopt, true});
                }
                if (divergent_std) {
                    // robust loss stays finite; estimate it alone
                    const auto [s, r] =
                        regression::mc_scaled_losses(spec, n, c.trials, c.seed, c.workers);
                    (void)s;
                    rob.points.push_back({n, r.mean, r.std_err, false});
                    continue;
                }
                const auto [s, r] =
                    regression::mc_scaled_losses(spec, n, c.trials, c.seed, c.workers);
                if (!std_done) std_curve.points.push_back({n, s.mean, s.std_err, false});
                rob.points.push_back({n, r.mean, r.std_err, false});
            }
            std_done = true;
            curves.push_back(std::move(rob));
        }
        curves.insert(curves.begin(), std::move(std_curve));
    }
    return curves;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<GapCurve>& curves) {
    out << "family,param_label,n,value,stderr\n";
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            out << curve.family << ',' << curve.label << ',' << pt.n << ',';
            if (pt.divergent)
                out << "divergent";
            else
                out << format_value(pt.value);
            out << ',';
            if (pt.std_err) out << format_value(*pt.std_err);
            out << '\n';
        }
    }
}

void write_csv(const std::string& path, const std::vector<GapCurve>& curves) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    write_csv(out, curves);
    if (!out.flush()) throw io_error("write failed: " + path);
}

std::vector<GapCurve> run(const ExperimentConfig& config) {
    config.validate();
    std::vector<GapCurve> curves;
    switch (config.family) {
        case Family::GaussianGap: curves = run_gaussian_gap(config); break;
        case Family::BernoulliGap: curves = run_bernoulli_gap(config); break;
        case Family::RegressionGap: curves = run_regression_gap(config); break;
        case Family::TestLoss: curves = run_test_loss(config); break;
    }
    if (!config.output_path.empty()) {
        write_csv(config.output_path, curves);
        if (config.plot) {
            std::string svg = config.output_path;
            const auto dot = svg.find_last_of('.');
            svg = (dot == std::string::npos ? svg : svg.substr(0, dot)) + ".svg";
            write_svg(svg, curves, config.log_x);
        }
    }
    return curves;
}

namespace {

void phase_csv(const std::string& path, const std::string& model,
               const RegimeReport& rep) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << "family,param_label,n,value,stderr\n";
    out << "phase," << model << ":regime,," << to_string(rep.regime) << ",\n";
    if (rep.increasing_until)
        out << "phase," << model << ":increasing_until,," << format_value(*rep.increasing_until) << ",\n";
    if (rep.decreasing_from)
        out << "phase," << model << ":decreasing_from,," << format_value(*rep.decreasing_from) << ",\n";
    for (std::size_t j = 0; j < rep.per_coordinate_critical.size(); ++j)
        out << "phase," << model << ":critical_n[" << j << "],,"
            << format_value(rep.per_coordinate_critical[j]) << ",\n";
    if (!out.flush()) throw io_error("write failed: " + path);
}

void print_report(std::ostream& os, const char* model, const RegimeReport& rep) {
    os << "model: " << model << "\n";
    os << "regime: " << to_string(rep.regime) << "\n";
    if (rep.increasing_until)
        os << "strictly increasing for n < " << format_value(*rep.increasing_until) << "\n";
    if (rep.decreasing_from)
        os << "strictly decreasing for n > " << format_value(*rep.decreasing_from) << "\n";
    os << "per-coordinate critical n:";
    for (double v : rep.per_coordinate_critical) os << ' ' << format_value(v);
    os << "\n";
}

} // namespace

RegimeReport phase_report(const gaussian::GaussianSpec& spec, std::ostream& text,
                          const std::string& csv_path) {
    const RegimeReport rep = gaussian::regime(spec);
    print_report(text, "gaussian", rep);
    phase_csv(csv_path, "gaussian", rep);
    return rep;
}

RegimeReport phase_report(const bernoulli::BernoulliSpec& spec, std::ostream& text,
                          const std::string& csv_path) {
    const RegimeReport rep = bernoulli::regime(spec);
    print_report(text, "bernoulli", rep);
    phase_csv(csv_path, "bernoulli", rep);
    return rep;
}

std::vector<std::string> preset_names() {
    return {"fig1a", "fig1b", "fig2-gaussian", "fig2-poisson", "fig5a", "fig5b"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.n_min = 1;
    if (name == "fig1a") {
        c.family = Family::GaussianGap;
        c.model = Model::Gaussian;
        c.gauss = {1.0, {1.0}, {2.0}, 0.0};
        c.n_max = 200;
        c.eps_list = {0.2, 0.5, 0.7, 0.9, 0.95, 1.0};
    } else if (name == "fig1b") {
        c.family = Family::BernoulliGap;
        c.model = Model::Bernoulli;
        c.bern = {1.0, {1.0}, 0.5, 0.2};
        c.n_max = 200;
        c.tau_list = {0.1, 0.2, 0.5, 0.7};
    } else if (name == "fig2-gaussian") {
        c.family = Family::RegressionGap;
        c.model = Model::Regression;
        c.reg = {{1.0}, 1.0, regression::InputDist::StandardNormal, 5.0, 0.0};
        c.n_max = 20;
        c.eps_list = {0.05, 0.25, 0.5, 0.75, 1.0};
    } else if (name == "fig2-poisson") {
        c.family = Family::RegressionGap;
        c.model = Model::Regression;
        c.reg = {{1.0}, 1.0, regression::InputDist::ShiftedPoisson, 5.0, 0.0};
        c.n_max = 20;
        c.eps_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    } else if (name == "fig5a") {
        c.family = Family::TestLoss;
        c.model = Model::Gaussian;
        c.gauss = {1.0, {1.0}, {2.0}, 0.0};
        c.n_max = 200;
        c.eps_list = {0.2, 0.5, 0.7, 0.9, 0.95, 1.0};
    } else if (name == "fig5b") {
        c.family = Family::TestLoss;
        c.model = Model::Bernoulli;
        c.bern = {1.0, {1.0}, 0.5, 0.2};
        c.n_max = 200;
        c.tau_list = {0.1, 0.2, 0.5, 0.7};
    } else {
        throw std::domain_error("unknown preset: " + name);
    }
    return c;
}

void write_svg(const std::string& path, const std::vector<GapCurve>& curves, bool log_x) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);

    const double width = 820, height = 520, ml = 70, mr = 180, mt = 20, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto xval = [&](double n) { return log_x ? std::log10(n) : n; };
    for (const auto& c : curves)
        for (const auto& p : c.points) {
            if (p.divergent || !std::isfinite(p.value)) continue;
            xmin = std::min(xmin, xval(static_cast<double>(p.n)));
            xmax = std::max(xmax, xval(static_cast<double>(p.n)));
            ymin = std::min(ymin, p.value);
            ymax = std::max(ymax, p.value);
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto X = [&](double n) { return ml + (xval(n) - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double v) { return mt + (ymax - v) / (ymax - ymin) * ph; };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                                    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"" << height - 12 << "\" font-size=\"12\">"
        << (log_x ? "log10 n" : "n") << " from " << format_short(log_x ? std::pow(10, xmin) : xmin)
        << " to " << format_short(log_x ? std::pow(10, xmax) : xmax) << "</text>\n";
    out << "<text x=\"8\" y=\"" << mt + 12 << "\" font-size=\"12\">" << format_short(ymax)
        << "</text>\n<text x=\"8\" y=\"" << mt + ph << "\" font-size=\"12\">"
        << format_short(ymin) << "</text>\n";

    std::size_t ci = 0;
    for (const auto& c : curves) {
        const char* color = palette[ci % (sizeof(palette) / sizeof(palette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : c.points) {
            if (p.divergent || !std::isfinite(p.value)) continue;
            out << X(static_cast<double>(p.n)) << ',' << Y(p.value) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << ml + pw + 10 << "\" y=\"" << mt + 16 + 16 * ci
            << "\" font-size=\"12\" fill=\"" << color << "\">" << c.label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    if (!out.flush()) throw io_error("write failed: " + path);
}

} // namespace rgap::cli
