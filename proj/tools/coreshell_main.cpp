// Command-line front end for the core-shell DN-map library: single
// evaluations, forward FD solves, Tikhonov inversion experiments, camouflage
// root finding, parameter sweeps, and regeneration of the reference tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coreshell/camouflage.hpp"
#include "coreshell/dnmap.hpp"
#include "coreshell/errors.hpp"
#include "coreshell/fdsolver.hpp"
#include "coreshell/inverse.hpp"
#include "coreshell/specfun.hpp"

namespace {

using coreshell::Error;
using coreshell::dnmap::PotentialProfile;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInversionFailure = 3;
constexpr int kExitNoRoot = 4;

int exit_code_for(const std::string& code) {
    if (code == "domain" || code == "range" || code == "grid-alignment" ||
        code == "degenerate-configuration") {
        return kExitBadInput;
    }
    if (code == "no-root") return kExitNoRoot;
    return kExitInversionFailure;  // convergence, discrepancy, solver
}

std::string fmt6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt_sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(4) << v;
    return os.str();
}

std::string fmt_full(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// All output goes through a sink so --out redirects everything uniformly.
struct Sink {
    std::ofstream file;
    bool to_file = false;
    std::ostream& stream() { return to_file ? file : std::cout; }
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw coreshell::DomainError("cannot open output file: " + path);
        to_file = true;
    }
};

struct CommonOpts {
    std::string format = "table";
    std::string out_path;
    void add_to(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: table|json|csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        cmd->add_flag_callback("--json", [this] { format = "json"; },
                               "shorthand for --format json");
        cmd->add_flag_callback("--csv", [this] { format = "csv"; },
                               "shorthand for --format csv");
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    }
};

std::vector<double> median_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    v = median_sorted(std::move(v));
    const size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------- dn ----

struct DnArgs {
    double r1 = 0.5;
    double sigma1 = 1.0;
    double f = 1.0;
    CommonOpts common;
};

void run_dn(const DnArgs& a, Sink& sink) {
    const PotentialProfile profile(a.r1, a.sigma1);
    const auto mult = coreshell::dnmap::dn_multiplier(profile);
    const auto coeff = coreshell::dnmap::shell_coefficients(a.f, profile);
    auto& os = sink.stream();
    if (a.common.format == "json") {
        ordered_json j;
        j["r1"] = a.r1;
        j["sigma1"] = a.sigma1;
        j["f"] = a.f;
        j["lambda"] = mult.lambda;
        j["g"] = mult.apply(a.f);
        j["rho"] = coeff.rho;
        j["a0"] = coeff.a0;
        j["a1"] = coeff.a1;
        j["b1"] = coeff.b1;
        os << j.dump() << '\n';
        return;
    }
    os << "lambda " << fmt6(mult.lambda) << '\n'
       << "g      " << fmt6(mult.apply(a.f)) << '\n'
       << "rho    " << fmt6(coeff.rho) << '\n'
       << "a0     " << fmt6(coeff.a0) << '\n'
       << "a1     " << fmt6(coeff.a1) << '\n'
       << "b1     " << fmt6(coeff.b1) << '\n';
}

// -------------------------------------------------------- forward-fd ----

struct ForwardArgs {
    double r1 = 0.5;
    double sigma1 = 1.0;
    double f = 1.0;
    int n = 100;
    std::optional<double> pin_center;
    CommonOpts common;
};

void run_forward(const ForwardArgs& a, Sink& sink) {
    const PotentialProfile profile(a.r1, a.sigma1);
    const auto sol = coreshell::fdsolver::solve_fd(a.f, profile, a.n, a.pin_center);
    auto& os = sink.stream();
    if (a.common.format == "csv") {
        coreshell::fdsolver::write_csv(sol, os);
        return;
    }
    if (a.common.format == "json") {
        ordered_json j;
        j["r1"] = a.r1;
        j["sigma1"] = a.sigma1;
        j["f"] = a.f;
        j["n"] = a.n;
        j["g"] = sol.neumann;
        j["psi0"] = sol.values.front();
        os << j.dump() << '\n';
        return;
    }
    os << "n    " << a.n << '\n'
       << "g    " << fmt6(sol.neumann) << '\n'
       << "psi0 " << fmt6(sol.values.front()) << '\n';
}

// ------------------------------------------------------------- invert ----

struct InvertArgs {
    double r1 = 0.7;
    double sigma1 = 0.9;
    double f = 1.0;
    double delta = 0.01;
    double dr = 1e-4;
    double tau = coreshell::inverse::kTau;
    std::uint64_t seed = 42;
    int seeds = 1;
    std::optional<double> alpha;
    bool analytic_data = false;
    std::optional<double> pin_center;
    CommonOpts common;
};

coreshell::inverse::ReconstructOptions invert_options(const InvertArgs& a) {
    coreshell::inverse::ReconstructOptions opts;
    opts.f = a.f;
    opts.dr = a.dr;
    opts.tau = a.tau;
    opts.analytic_data = a.analytic_data;
    opts.pin_center = a.pin_center;
    opts.alpha_override = a.alpha;
    return opts;
}

void run_invert(const InvertArgs& a, Sink& sink) {
    const PotentialProfile truth(a.r1, a.sigma1);
    const auto opts = invert_options(a);
    auto& os = sink.stream();
    if (a.seeds <= 1) {
        const auto r = coreshell::inverse::reconstruct(truth, a.delta, a.seed, opts);
        if (a.common.format == "json") {
            os << coreshell::inverse::to_json_record(r, truth, a.delta, a.seed) << '\n';
            return;
        }
        os << "delta      alpha      sigma_est  eps_abs     iterations\n"
           << fmt6(a.delta) << "  " << fmt_sci(r.alpha) << "  " << fmt6(r.sigma_est)
           << "   " << fmt_sci(r.eps_abs) << "  " << r.iterations << '\n';
        return;
    }

    const auto rows =
        coreshell::inverse::reconstruct_ensemble(truth, a.delta, a.seed, a.seeds, opts);
    if (a.common.format == "json") {
        ordered_json out = ordered_json::array();
        for (const auto& row : rows) {
            if (row.result) {
                out.push_back(ordered_json::parse(coreshell::inverse::to_json_record(
                    *row.result, truth, a.delta, row.seed)));
            } else {
                ordered_json j;
                j["seed"] = row.seed;
                j["error"] = row.error;
                out.push_back(j);
            }
        }
        os << out.dump() << '\n';
        return;
    }
    os << "seed  alpha       sigma_est  eps_abs\n";
    std::vector<double> eps_ok;
    int fails = 0;
    for (const auto& row : rows) {
        if (row.result) {
            os << row.seed << "  " << fmt_sci(row.result->alpha) << "  "
               << fmt6(row.result->sigma_est) << "   " << fmt_sci(row.result->eps_abs)
               << '\n';
            eps_ok.push_back(row.result->eps_abs);
        } else {
            os << row.seed << "  failed: " << row.error << '\n';
            ++fails;
        }
    }
    os << "median_eps_abs " << fmt_sci(coreshell::inverse::median_eps_abs(rows)) << '\n'
       << "failed_seeds   " << fails << "/" << rows.size() << '\n';
    if (!eps_ok.empty()) {
        os << "median_eps_abs_successful " << fmt_sci(median_of(eps_ok)) << '\n';
    }
}

// --------------------------------------------------------- camouflage ----

struct CamouflageArgs {
    double r1 = 0.3;
    double sigma1 = 2.0;
    double r2 = 0.7;
    double f = 1.0;
    std::vector<int> fd_check;
    CommonOpts common;
};

void run_camouflage(const CamouflageArgs& a, Sink& sink) {
    const auto roots = coreshell::camouflage::find_all_sigma2(a.r1, a.sigma1, a.r2);
    auto& os = sink.stream();
    ordered_json jroots = ordered_json::array();
    std::ostringstream table;
    table << "sigma2      scaled_det   dn_residual\n";
    for (const double sigma2 : roots) {
        const PotentialProfile p(a.r1, a.sigma1);
        const PotentialProfile q(a.r2, sigma2);
        const coreshell::camouflage::CamouflagePair pair{
            p, q, coreshell::camouflage::det_d(a.r1, a.sigma1, a.r2, sigma2),
            coreshell::dnmap::dn_distance(p, q)};
        const auto v = coreshell::camouflage::verify_pair(pair, a.f, a.fd_check);
        if (a.common.format == "json") {
            ordered_json j;
            j["r1"] = a.r1;
            j["sigma1"] = a.sigma1;
            j["r2"] = a.r2;
            j["sigma2"] = sigma2;
            j["det_residual"] = pair.det_residual;
            j["dn_residual"] = v.dn_residual;
            ordered_json fd = ordered_json::object();
            for (size_t i = 0; i < a.fd_check.size(); ++i) {
                fd[std::to_string(a.fd_check[i])] = v.fd_residuals[i];
            }
            j["fd_residuals_by_N"] = fd;
            jroots.push_back(j);
        } else {
            table << fmt6(sigma2) << "     " << fmt_sci(pair.det_residual) << "  "
                  << fmt_sci(v.dn_residual) << '\n';
            if (!a.fd_check.empty()) {
                table << "  N     eps_abs_fd\n";
                for (size_t i = 0; i < a.fd_check.size(); ++i) {
                    table << "  " << a.fd_check[i] << "   " << fmt_sci(v.fd_residuals[i])
                          << '\n';
                }
            }
        }
    }
    if (a.common.format == "json") {
        os << jroots.dump() << '\n';
    } else {
        os << table.str();
    }
}

// -------------------------------------------------------------- sweep ----

struct SweepArgs {
    double r1_min = 0.05, r1_max = 0.95;
    int r1_count = 10;
    double sigma1_min = 0.05, sigma1_max = 20.0;
    int sigma1_count = 10;
    bool log_sigma = false;
    CommonOpts common;
};

void run_sweep(const SweepArgs& a, Sink& sink) {
    if (a.r1_count < 1 || a.sigma1_count < 1) {
        throw coreshell::DomainError("grid counts must be >= 1");
    }
    const double total = static_cast<double>(a.r1_count) * a.sigma1_count;
    if (total > 1e7) {
        throw coreshell::DomainError("grid too large: " + std::to_string(total) +
                                     " points exceeds 1e7");
    }
    std::vector<double> r1s(a.r1_count), sigmas(a.sigma1_count);
    for (int i = 0; i < a.r1_count; ++i) {
        r1s[i] = (a.r1_count == 1)
                     ? a.r1_min
                     : a.r1_min + (a.r1_max - a.r1_min) * i / (a.r1_count - 1.0);
    }
    for (int j = 0; j < a.sigma1_count; ++j) {
        if (a.sigma1_count == 1) {
            sigmas[j] = a.sigma1_min;
        } else if (a.log_sigma) {
            sigmas[j] = a.sigma1_min *
                        std::pow(a.sigma1_max / a.sigma1_min, j / (a.sigma1_count - 1.0));
        } else {
            sigmas[j] = a.sigma1_min + (a.sigma1_max - a.sigma1_min) * j /
                                           (a.sigma1_count - 1.0);
        }
    }
    // grid rows computed in parallel, emitted in index order
    std::vector<double> lambdas(r1s.size() * sigmas.size());
    std::atomic<size_t> next{0};
    const auto work = [&] {
        for (size_t k = next.fetch_add(1); k < lambdas.size(); k = next.fetch_add(1)) {
            const double r1 = r1s[k / sigmas.size()];
            const double sig = sigmas[k % sigmas.size()];
            lambdas[k] = coreshell::dnmap::dn_multiplier(PotentialProfile(r1, sig)).lambda;
        }
    };
    const unsigned n_threads = std::min<size_t>(
        std::max(1u, std::thread::hardware_concurrency()), lambdas.size());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    auto& os = sink.stream();
    os << "r1,sigma1,lambda\n";
    for (size_t k = 0; k < lambdas.size(); ++k) {
        os << fmt_full(r1s[k / sigmas.size()]) << ',' << fmt_full(sigmas[k % sigmas.size()])
           << ',' << fmt_full(lambdas[k]) << '\n';
    }
}

// ---------------------------------------------------------- reproduce ----

struct ReferenceDeterministicTable {
    double r1, sigma1, r2;
    double ref_lambda_p[4];
    double ref_lambda_q[4];
    double ref_eps[4];
};

// Published reference results regenerated by `reproduce 3` and `reproduce 4`.
const ReferenceDeterministicTable kTable3 = {
    0.3, 2.0, 0.7, {0.4431, 0.4448, 0.4457, 0.4461}, {0.4409, 0.4438, 0.4452, 0.4459},
    {2.2122e-03, 1.0481e-03, 5.1991e-04, 2.5845e-04}};
const ReferenceDeterministicTable kTable4 = {
    0.8, 0.5, 0.4, {0.4234, 0.4267, 0.4284, 0.4293}, {0.4254, 0.4278, 0.4289, 0.4295},
    {2.0125e-03, 1.0036e-03, 5.0138e-04, 2.5071e-04}};

struct ReferenceStochasticTable {
    double r1, sigma1;
    double ref_alpha[3];
    double ref_sigma[3];
    double ref_eps[3];
};

const ReferenceStochasticTable kTable1 = {
    0.7, 0.9, {1.36e-03, 1.29e-04, 5.4e-06}, {0.9007, 0.9003, 0.9002},
    {7.4295e-04, 3.3653e-04, 2.4817e-04}};
const ReferenceStochasticTable kTable2 = {
    0.8, 1.5, {5.56e-04, 5.19e-05, 2.1e-06}, {1.4999, 1.5003, 1.5000},
    {1.3517e-04, 2.9780e-04, 4.6362e-05}};

constexpr int kTableNs[4] = {100, 200, 400, 800};
constexpr double kTableDeltas[3] = {0.1, 0.01, 0.001};

void run_reproduce_deterministic(const ReferenceDeterministicTable& t, Sink& sink) {
    const double sigma2 = coreshell::camouflage::find_sigma2(t.r1, t.sigma1, t.r2, {0, 0});
    const PotentialProfile p(t.r1, t.sigma1);
    const PotentialProfile q(t.r2, sigma2);
    auto& os = sink.stream();
    os << "p = (r1=" << fmt6(t.r1) << ", sigma1=" << fmt6(t.sigma1) << ")  q = (r2="
       << fmt6(t.r2) << ", sigma2=" << fmt6(sigma2) << ")\n";
    os << "analytic lambda_p = " << fmt6(coreshell::dnmap::dn_multiplier(p).lambda)
       << ", |lambda_p - lambda_q| = " << fmt_sci(coreshell::dnmap::dn_distance(p, q))
       << "\n\n";
    os << "N     lambda_p  ref_p   lambda_q  ref_q   eps_abs     ref_eps\n";
    for (int i = 0; i < 4; ++i) {
        const int n = kTableNs[i];
        const double gp = coreshell::fdsolver::solve_fd(1.0, p, n).neumann;
        const double gq = coreshell::fdsolver::solve_fd(1.0, q, n).neumann;
        os << n << (n < 1000 ? "   " : "  ") << std::setw(8) << fmt6(gp) << "  "
           << fmt6(t.ref_lambda_p[i]) << "  " << std::setw(8) << fmt6(gq) << "  "
           << fmt6(t.ref_lambda_q[i]) << "  " << fmt_sci(std::abs(gp - gq)) << "  "
           << fmt_sci(t.ref_eps[i]) << '\n';
    }
}

void run_reproduce_stochastic(const ReferenceStochasticTable& t, int seeds,
                              std::uint64_t seed0, Sink& sink) {
    const PotentialProfile truth(t.r1, t.sigma1);
    auto& os = sink.stream();
    os << "truth: r1=" << fmt6(t.r1) << ", sigma1=" << fmt6(t.sigma1) << "; " << seeds
       << " seeds starting at " << seed0 << " (ref columns: single unseeded realization)\n\n";
    os << "delta   ref_alpha   ref_sigma  ref_eps     med_alpha   med_sigma  med_eps     "
          "fails\n";
    for (int i = 0; i < 3; ++i) {
        const double delta = kTableDeltas[i];
        coreshell::inverse::ReconstructOptions opts;
        const auto rows =
            coreshell::inverse::reconstruct_ensemble(truth, delta, seed0, seeds, opts);
        std::vector<double> alphas, sigmas_est;
        int fails = 0;
        for (const auto& row : rows) {
            if (row.result) {
                alphas.push_back(row.result->alpha);
                sigmas_est.push_back(row.result->sigma_est);
            } else {
                ++fails;
            }
        }
        os << fmt6(delta) << "   " << fmt_sci(t.ref_alpha[i]) << "  " << fmt6(t.ref_sigma[i])
           << "     " << fmt_sci(t.ref_eps[i]) << "  "
           << (alphas.empty() ? "n/a       " : fmt_sci(median_of(alphas))) << "  "
           << (sigmas_est.empty() ? "n/a     " : fmt6(median_of(sigmas_est))) << "    "
           << fmt_sci(coreshell::inverse::median_eps_abs(rows)) << "  " << fails << "/"
           << seeds << '\n';
    }
}

// ------------------------------------------------------- specfun eval ----

void run_specfun_eval(const std::string& fn, double x, Sink& sink) {
    coreshell::specfun::BesselEval e{};
    if (fn == "i0") {
        e = coreshell::specfun::bessel_i0_eval(x);
    } else if (fn == "i1") {
        e = coreshell::specfun::bessel_i1_eval(x);
    } else if (fn == "k0") {
        e = coreshell::specfun::bessel_k0_eval(x);
    } else {
        e = coreshell::specfun::bessel_k1_eval(x);
    }
    sink.stream() << fmt_full(e.value) << " +- " << fmt_sci(e.estimated_abs_error) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"core-shell DN maps, Tikhonov potential recovery, camouflage pairs"};
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);
    app.set_config("--config", "", "flat key=value config file ([section] per subcommand)");

    DnArgs dn_args;
    auto* dn = app.add_subcommand("dn", "analytic DN multiplier and shell coefficients");
    dn->configurable(true)->fallthrough(true);
    dn->add_option("--r1", dn_args.r1, "core radius in (0,1)")->required();
    dn->add_option("--sigma1", dn_args.sigma1, "core coefficient > 0")->required();
    dn->add_option("--f", dn_args.f, "boundary datum (default 1)");
    dn_args.common.add_to(dn);

    ForwardArgs fw_args;
    auto* fw = app.add_subcommand("forward-fd", "finite-difference forward solve");
    fw->configurable(true)->fallthrough(true);
    fw->add_option("--r1", fw_args.r1, "core radius in (0,1)")->required();
    fw->add_option("--sigma1", fw_args.sigma1, "core coefficient > 0")->required();
    fw->add_option("--n", fw_args.n, "number of grid intervals (r1*n must be integral)")
        ->required();
    fw->add_option("--f", fw_args.f, "boundary datum (default 1)");
    fw->add_option("--pin-center", fw_args.pin_center,
                   "pin psi(0) to this value instead of the regularity closure");
    fw_args.common.add_to(fw);

    InvertArgs inv_args;
    auto* inv = app.add_subcommand("invert", "Tikhonov recovery of sigma1 from noisy data");
    inv->configurable(true)->fallthrough(true);
    inv->add_option("--r1", inv_args.r1, "core radius in (0,1)")->required();
    inv->add_option("--sigma1", inv_args.sigma1, "true core coefficient")->required();
    inv->add_option("--delta", inv_args.delta, "noise level >= 0")->required();
    inv->add_option("--f", inv_args.f, "boundary datum (default 1)");
    inv->add_option("--dr", inv_args.dr, "forward-solve step (default 1e-4)");
    inv->add_option("--seed", inv_args.seed, "noise seed (default 42)");
    inv->add_option("--seeds", inv_args.seeds, "ensemble size (default 1)");
    inv->add_option("--alpha", inv_args.alpha, "fixed regularization parameter");
    inv->add_option("--tau", inv_args.tau, "discrepancy band factor (default 1.1)");
    inv->add_flag("--analytic-data", inv_args.analytic_data,
                  "use the analytic DN value as data (no FD bias)");
    inv->add_option("--pin-center", inv_args.pin_center, "pin psi(0) in the data solve");
    inv_args.common.add_to(inv);

    CamouflageArgs cam_args;
    auto* cam = app.add_subcommand("camouflage", "solve for sigma2 with matching DN map");
    cam->configurable(true)->fallthrough(true);
    cam->add_option("--r1", cam_args.r1, "first core radius")->required();
    cam->add_option("--sigma1", cam_args.sigma1, "first core coefficient")->required();
    cam->add_option("--r2", cam_args.r2, "second core radius")->required();
    cam->add_option("--f", cam_args.f, "boundary datum (default 1)");
    cam->add_option("--fd-check", cam_args.fd_check,
                    "comma-separated N values for FD cross-checks")
        ->delimiter(',');
    cam_args.common.add_to(cam);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "lambda over an (r1, sigma1) grid as CSV");
    sweep->configurable(true)->fallthrough(true);
    sweep->add_option("--r1-min", sweep_args.r1_min, "default 0.05");
    sweep->add_option("--r1-max", sweep_args.r1_max, "default 0.95");
    sweep->add_option("--r1-count", sweep_args.r1_count, "default 10");
    sweep->add_option("--sigma1-min", sweep_args.sigma1_min, "default 0.05");
    sweep->add_option("--sigma1-max", sweep_args.sigma1_max, "default 20");
    sweep->add_option("--sigma1-count", sweep_args.sigma1_count, "default 10");
    sweep->add_flag("--log-sigma", sweep_args.log_sigma, "log-spaced sigma grid");
    sweep_args.common.add_to(sweep);

    int table_id = 0;
    int rep_seeds = 100;
    std::uint64_t rep_seed0 = 42;
    CommonOpts rep_common;
    auto* rep = app.add_subcommand("reproduce", "regenerate a reference table (1-4)");
    rep->configurable(true)->fallthrough(true);
    rep->add_option("table", table_id, "table id")->required()->check(CLI::Range(1, 4));
    rep->add_option("--seeds", rep_seeds, "ensemble size for tables 1-2 (default 100)");
    rep->add_option("--seed", rep_seed0, "first seed for tables 1-2 (default 42)");
    rep_common.add_to(rep);

    std::string sf_fn = "i0";
    double sf_x = 1.0;
    auto* sf = app.add_subcommand("specfun");
    sf->group("");  // hidden: point evaluation for debugging
    auto* sf_eval = sf->add_subcommand("eval", "evaluate a Bessel kernel function");
    sf_eval->add_option("--fn", sf_fn, "i0|i1|k0|k1")
        ->check(CLI::IsMember({"i0", "i1", "k0", "k1"}));
    sf_eval->add_option("--x", sf_x, "argument")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[cli]: " << e.what() << '\n';
        return kExitBadInput;
    }

    Sink sink;
    try {
        if (dn->parsed()) {
            sink.open(dn_args.common.out_path);
            run_dn(dn_args, sink);
        } else if (fw->parsed()) {
            sink.open(fw_args.common.out_path);
            run_forward(fw_args, sink);
        } else if (inv->parsed()) {
            sink.open(inv_args.common.out_path);
            run_invert(inv_args, sink);
        } else if (cam->parsed()) {
            sink.open(cam_args.common.out_path);
            run_camouflage(cam_args, sink);
        } else if (sweep->parsed()) {
            sink.open(sweep_args.common.out_path);
            run_sweep(sweep_args, sink);
        } else if (rep->parsed()) {
            sink.open(rep_common.out_path);
            if (table_id == 1) {
                run_reproduce_stochastic(kTable1, rep_seeds, rep_seed0, sink);
            } else if (table_id == 2) {
                run_reproduce_stochastic(kTable2, rep_seeds, rep_seed0, sink);
            } else if (table_id == 3) {
                run_reproduce_deterministic(kTable3, sink);
            } else {
                run_reproduce_deterministic(kTable4, sink);
            }
        } else if (sf->parsed()) {
            run_specfun_eval(sf_fn, sf_x, sink);
        }
    } catch (const Error& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
