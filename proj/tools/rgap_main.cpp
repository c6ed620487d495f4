#include "robustgap/errors.hpp"
#include "robustgap/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

// rgap: generalization-gap curves, phase reports and figure reproduction for
// adversarially trained linear models. Exit codes: 0 success, 2 usage error,
// 3 I/O error, 4 numeric failure.

namespace {

using namespace rgap;

struct CommonFlags {
    std::int64_t n_min = 1;
    std::int64_t n_max = 200;
    std::vector<double> eps;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 12345;
    int workers = 0;
    std::string out;
    bool plot = false;
    bool log_x = false;
};

void add_sweep_flags(CLI::App* cmd, CommonFlags& f, bool mc) {
    cmd->add_option("--n-min", f.n_min, "smallest training-set size");
    cmd->add_option("--n-max", f.n_max, "largest training-set size");
    cmd->add_option("--eps", f.eps, "perturbation budget (repeatable)");
    if (mc) {
        cmd->add_option("--trials", f.trials, "Monte Carlo trials per point");
        cmd->add_option("--seed", f.seed, "stream seed");
        cmd->add_option("--workers", f.workers, "worker threads (0: all cores)");
    }
    cmd->add_option("--out", f.out, "CSV output path (default: stdout)");
    cmd->add_flag("--plot", f.plot, "also write an SVG next to the CSV");
    cmd->add_flag("--log-x", f.log_x, "log-scale x axis in the SVG");
}

void finish(const cli::ExperimentConfig& cfg) {
    auto curves = cli::run(cfg);
    if (cfg.output_path.empty()) cli::write_csv(std::cout, curves);
}

int dispatch(int argc, char** argv) {
    CLI::App app{"generalization gap between robust and standard linear models"};
    app.require_subcommand(1);

    // gaussian-gap ---------------------------------------------------------
    CommonFlags gf;
    double g_w = 1.0;
    std::vector<double> g_mu{1.0}, g_sigma{2.0};
    auto* gcmd = app.add_subcommand("gaussian-gap", "exact Gaussian-model gap curves");
    gcmd->add_option("--w", g_w, "weight-ball radius W");
    gcmd->add_option("--mu", g_mu, "class-mean coordinates (repeatable)");
    gcmd->add_option("--sigma", g_sigma, "per-coordinate standard deviations");
    add_sweep_flags(gcmd, gf, false);

    // bernoulli-gap --------------------------------------------------------
    CommonFlags bf;
    double b_w = 1.0;
    std::vector<double> b_theta{1.0}, b_tau;
    auto* bcmd = app.add_subcommand("bernoulli-gap", "exact Bernoulli-model gap and strip-center curves");
    bcmd->add_option("--w", b_w, "weight-ball radius W");
    bcmd->add_option("--theta", b_theta, "coordinate magnitudes (repeatable)");
    bcmd->add_option("--tau", b_tau, "signal strength (repeatable: sweeps tau)");
    add_sweep_flags(bcmd, bf, false);

    // regression-gap -------------------------------------------------------
    CommonFlags rf;
    rf.n_max = 20;
    std::string r_dist = "poisson";
    double r_lambda = 5.0, r_wstar = 1.0, r_noise = 1.0;
    auto* rcmd = app.add_subcommand("regression-gap", "Monte Carlo scaled regression gap");
    rcmd->add_option("--dist", r_dist, "input distribution: normal | poisson")
        ->check(CLI::IsMember({"normal", "poisson"}));
    rcmd->add_option("--lambda", r_lambda, "shifted-Poisson rate");
    rcmd->add_option("--w-star", r_wstar, "true model weight");
    rcmd->add_option("--noise-var", r_noise, "label noise variance");
    add_sweep_flags(rcmd, rf, true);

    // test-loss ------------------------------------------------------------
    CommonFlags tf;
    double t_w = 1.0, t_lambda = 5.0, t_wstar = 1.0, t_noise = 1.0;
    std::vector<double> t_mu, t_sigma, t_theta, t_tau;
    std::string t_dist;
    auto* tcmd = app.add_subcommand("test-loss", "test-loss curves of standard and robust models");
    tcmd->add_option("--w", t_w, "weight-ball radius W");
    tcmd->add_option("--mu", t_mu, "Gaussian model: class means");
    tcmd->add_option("--sigma", t_sigma, "Gaussian model: standard deviations");
    tcmd->add_option("--theta", t_theta, "Bernoulli model: coordinate magnitudes");
    tcmd->add_option("--tau", t_tau, "Bernoulli model: signal strength (repeatable)");
    tcmd->add_option("--dist", t_dist, "regression model: normal | poisson")
        ->check(CLI::IsMember({"normal", "poisson"}));
    tcmd->add_option("--lambda", t_lambda, "shifted-Poisson rate");
    tcmd->add_option("--w-star", t_wstar, "true model weight");
    tcmd->add_option("--noise-var", t_noise, "label noise variance");
    add_sweep_flags(tcmd, tf, true);

    // phase ------------------------------------------------------------
    double p_w = 1.0, p_tau = 0.5;
    std::vector<double> p_mu, p_sigma, p_theta, p_eps;
    std::string p_out;
    auto* pcmd = app.add_subcommand("phase", "regime classification and critical sample sizes");
    pcmd->add_option("--w", p_w, "weight-ball radius W");
    pcmd->add_option("--mu", p_mu, "Gaussian model: class means");
    pcmd->add_option("--sigma", p_sigma, "Gaussian model: standard deviations");
    pcmd->add_option("--theta", p_theta, "Bernoulli model: coordinate magnitudes");
    pcmd->add_option("--tau", p_tau, "Bernoulli model: signal strength");
    pcmd->add_option("--eps", p_eps, "perturbation budget");
    pcmd->add_option("--out", p_out, "CSV output path");

    // reproduce ------------------------------------------------------------
    CommonFlags ff;
    std::string preset_name;
    auto* fcmd = app.add_subcommand("reproduce", "reproduce a named figure preset");
    fcmd->add_option("preset", preset_name, "one of: fig1a fig1b fig2-gaussian fig2-poisson fig5a fig5b")
        ->required();
    fcmd->add_option("--trials", ff.trials, "Monte Carlo trials per point");
    fcmd->add_option("--seed", ff.seed, "stream seed");
    fcmd->add_option("--workers", ff.workers, "worker threads (0: all cores)");
    fcmd->add_option("--out", ff.out, "CSV output path (default: <preset>.csv)");
    fcmd->add_flag("--plot", ff.plot, "also write an SVG next to the CSV");
    fcmd->add_flag("--log-x", ff.log_x, "log-scale x axis in the SVG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gcmd->parsed()) {
        cli::ExperimentConfig cfg;
        cfg.family = cli::Family::GaussianGap;
        cfg.model = cli::Model::Gaussian;
        cfg.gauss = {g_w, g_mu, g_sigma, 0.0};
        cfg.n_min = gf.n_min; cfg.n_max = gf.n_max;
        cfg.eps_list = gf.eps.empty() ? std::vector<double>{0.5} : gf.eps;
        cfg.output_path = gf.out; cfg.plot = gf.plot; cfg.log_x = gf.log_x;
        finish(cfg);
    } else if (bcmd->parsed()) {
        cli::ExperimentConfig cfg;
        cfg.family = cli::Family::BernoulliGap;
        cfg.model = cli::Model::Bernoulli;
        cfg.bern = {b_w, b_theta, 0.5, 0.2};
        if (b_tau.size() > 1 && bf.eps.size() > 1)
            throw std::domain_error("sweep either --tau or --eps, not both");
        if (b_tau.size() > 1) {
            cfg.tau_list = b_tau;
            cfg.bern.eps = bf.eps.empty() ? 0.2 : bf.eps.front();
        } else {
            if (!b_tau.empty()) cfg.bern.tau = b_tau.front();
            cfg.eps_list = bf.eps.empty() ? std::vector<double>{0.2} : bf.eps;
        }
        cfg.n_min = bf.n_min; cfg.n_max = bf.n_max;
        cfg.output_path = bf.out; cfg.plot = bf.plot; cfg.log_x = bf.log_x;
        finish(cfg);
    } else if (rcmd->parsed()) {
        cli::ExperimentConfig cfg;
        cfg.family = cli::Family::RegressionGap;
        cfg.model = cli::Model::Regression;
        cfg.reg = {{r_wstar}, r_noise,
                   r_dist == "normal" ? regression::InputDist::StandardNormal
                                      : regression::InputDist::ShiftedPoisson,
                   r_lambda, 0.0};
        cfg.n_min = rf.n_min; cfg.n_max = rf.n_max;
        cfg.eps_list = rf.eps.empty() ? std::vector<double>{1.0} : rf.eps;
        cfg.trials = rf.trials; cfg.seed = rf.seed; cfg.workers = rf.workers;
        cfg.output_path = rf.out; cfg.plot = rf.plot; cfg.log_x = rf.log_x;
        finish(cfg);
    } else if (tcmd->parsed()) {
        cli::ExperimentConfig cfg;
        cfg.family = cli::Family::TestLoss;
        const bool has_g = !t_mu.empty() || !t_sigma.empty();
        const bool has_b = !t_theta.empty() || !t_tau.empty();
        const bool has_r = !t_dist.empty();
        if (has_g + has_b + has_r != 1)
            throw std::domain_error("test-loss: give exactly one model "
                                    "(--mu/--sigma, --theta/--tau, or --dist)");
        if (has_g) {
            cfg.model = cli::Model::Gaussian;
            cfg.gauss = {t_w, t_mu.empty() ? std::vector<double>{1.0} : t_mu,
                         t_sigma.empty() ? std::vector<double>{2.0} : t_sigma, 0.0};
            cfg.eps_list = tf.eps.empty() ? std::vector<double>{0.5} : tf.eps;
        } else if (has_b) {
            cfg.model = cli::Model::Bernoulli;
            cfg.bern = {t_w, t_theta.empty() ? std::vector<double>{1.0} : t_theta, 0.5, 0.2};
            if (t_tau.size() > 1) {
                cfg.tau_list = t_tau;
                cfg.bern.eps = tf.eps.empty() ? 0.2 : tf.eps.front();
            } else {
                if (!t_tau.empty()) cfg.bern.tau = t_tau.front();
                cfg.eps_list = tf.eps.empty() ? std::vector<double>{0.2} : tf.eps;
            }
        } else {
            cfg.model = cli::Model::Regression;
            cfg.reg = {{t_wstar}, t_noise,
                       t_dist == "normal" ? regression::InputDist::StandardNormal
                                          : regression::InputDist::ShiftedPoisson,
                       t_lambda, 0.0};
            cfg.eps_list = tf.eps.empty() ? std::vector<double>{1.0} : tf.eps;
        }
        cfg.n_min = tf.n_min;
        cfg.n_max = tf.n_max;
        if (cfg.model == cli::Model::Regression && tcmd->count("--n-max") == 0) cfg.n_max = 20;
        cfg.trials = tf.trials; cfg.seed = tf.seed; cfg.workers = tf.workers;
        cfg.output_path = tf.out; cfg.plot = tf.plot; cfg.log_x = tf.log_x;
        finish(cfg);
    } else if (pcmd->parsed()) {
        const bool has_g = !p_mu.empty() || !p_sigma.empty();
        const bool has_b = !p_theta.empty();
        if (has_g == has_b)
            throw std::domain_error("phase: give exactly one model (--mu/--sigma or --theta)");
        if (p_eps.size() > 1) throw std::domain_error("phase: a single --eps is required");
        const double eps = p_eps.empty() ? 0.5 : p_eps.front();
        if (has_g) {
            gaussian::GaussianSpec spec{p_w, p_mu.empty() ? std::vector<double>{1.0} : p_mu,
                                        p_sigma.empty() ? std::vector<double>{2.0} : p_sigma, eps};
            cli::phase_report(spec, std::cout, p_out);
        } else {
            bernoulli::BernoulliSpec spec{p_w, p_theta, p_tau, eps};
            cli::phase_report(spec, std::cout, p_out);
        }
    } else if (fcmd->parsed()) {
        cli::ExperimentConfig cfg = cli::preset(preset_name);
        if (fcmd->count("--trials")) cfg.trials = ff.trials;
        if (fcmd->count("--seed")) cfg.seed = ff.seed;
        cfg.workers = ff.workers;
        cfg.output_path = ff.out.empty() ? preset_name + ".csv" : ff.out;
        cfg.plot = ff.plot;
        cfg.log_x = ff.log_x;
        cli::run(cfg);
        std::cout << "wrote " << cfg.output_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError&) {
        return 2;  // CLI11_PARSE already handled printing; unreachable in practice
    } catch (const rgap::io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const rgap::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
