// Command-line front end: simulate the reference cases, fit the annual-max
// and difference models, compose the mixture, and emit return-period curves
// with confidence bands plus the diagnostic battery as JSON/CSV.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mev/diagnostics.hpp"
#include "mev/errors.hpp"
#include "mev/fitting.hpp"
#include "mev/hetreg.hpp"
#include "mev/io.hpp"
#include "mev/mixed.hpp"
#include "mev/simulate.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace mev;
namespace fs = std::filesystem;

namespace {

constexpr int kExitParse = 2;    // malformed input / validation
constexpr int kExitFit = 3;      // fit non-convergence
constexpr int kExitNumeric = 4;  // quadrature/solver/covariance failures
constexpr const char* kSchemaVersion = "1";

struct CommonOpts {
    std::string x_path;
    std::string z_path;
    std::string ev = "gev";
    double threshold = 0.0;
    bool threshold_set = false;
    std::string family = "linear";
    double alpha = 0.05;
    std::vector<double> T = {2, 5, 10, 20, 50, 100, 200, 500};
    double coverage_floor = 0.8;
    int years_override = 0;
    std::string out_dir = ".";
};

RegFamily parse_family(const std::string& s) {
    if (s == "linear") return RegFamily::linear;
    if (s == "power") return RegFamily::power;
    throw ParseError("unknown regression family: " + s);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

ordered_json jnum(double v) { return round_sig10(v); }

ordered_json fit_json(const FitResult& fit, double alpha) {
    ordered_json j;
    ordered_json params, se;
    for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
        params[fit.names[i]] = jnum(fit.estimates[i]);
        se[fit.names[i]] = jnum(fit.se[i]);
    }
    // Scale is estimated as log(psi); surface psi itself as well.
    for (std::size_t i = 0; i < fit.names.size(); ++i)
        if (fit.names[i] == "logpsi") params["psi"] = jnum(std::exp(fit.estimates[i]));
    j["parameters"] = params;
    j["se"] = se;
    if (fit.covariance_valid) {
        const int dof = fit.n_obs - static_cast<int>(fit.estimates.size()) - 1;
        if (dof > 0) {
            const auto cis = param_ci(fit, alpha, fit.n_obs);
            ordered_json jci;
            for (std::size_t i = 0; i < cis.size(); ++i)
                jci[fit.names[i]] = ordered_json::array({jnum(cis[i].lower), jnum(cis[i].upper)});
            j["ci"] = jci;
            j["ci_level"] = jnum(1.0 - alpha);
        }
        ordered_json cov = ordered_json::array();
        for (std::size_t r = 0; r < fit.covariance.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < fit.covariance.cols(); ++c)
                row.push_back(jnum(fit.covariance(r, c)));
            cov.push_back(row);
        }
        j["covariance"] = cov;
    }
    j["loglik"] = jnum(fit.loglik);
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["n_obs"] = fit.n_obs;
    return j;
}

ordered_json gev_choice_json(const GevModelChoice& choice, double alpha) {
    ordered_json j;
    j["model"] = "gev";
    j["selected"] = choice.gumbel_preferred ? "gumbel" : "gev";
    j["lr_statistic"] = jnum(choice.lr_statistic);
    j["lr_p_value"] = jnum(choice.lr_p_value);
    j["gev"] = fit_json(choice.gev, alpha);
    j["gumbel"] = fit_json(choice.gumbel, alpha);
    return j;
}

ordered_json diagnostics_json(const DiagnosticReport& rep) {
    ordered_json j;
    j["target"] = rep.target;
    j["ks"] = {{"statistic", jnum(rep.ks.statistic)},
               {"p_value", jnum(rep.ks.p_value)},
               {"reject", rep.ks.reject},
               {"alpha", jnum(rep.ks.alpha)}};
    ordered_json lb = ordered_json::array();
    for (const TestReport& t : rep.ljung_box)
        lb.push_back({{"lag", t.lag},
                      {"statistic", jnum(t.statistic)},
                      {"p_value", jnum(t.p_value)},
                      {"reject", t.reject}});
    j["ljung_box"] = lb;
    ordered_json acf;
    acf["lags"] = rep.acf.lags;
    ordered_json av = ordered_json::array(), pv = ordered_json::array();
    for (double v : rep.acf.acf) av.push_back(jnum(v));
    for (double v : rep.acf.pacf) pv.push_back(jnum(v));
    acf["acf"] = av;
    acf["pacf"] = pv;
    acf["conf_bound"] = jnum(rep.acf.conf_bound);
    j["acf"] = acf;
    j["note"] = rep.note;
    return j;
}

void write_json(const fs::path& path, const ordered_json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_ppqq_csv(const fs::path& path, const PpQqTable& t) {
    std::ostringstream out;
    out << "p_plot,p_model,x_sorted,x_model\n";
    for (std::size_t i = 0; i < t.p_plot.size(); ++i)
        out << fmt(t.p_plot[i]) << ',' << fmt(t.p_model[i]) << ',' << fmt(t.x_sorted[i]) << ','
            << fmt(t.x_model[i]) << "\n";
    write_text_atomic(path, out.str());
}

void append_curve_rows(std::ostringstream& out, const std::string& model,
                       const ReturnPeriodCurve& curve) {
    for (const auto& e : curve.entries)
        out << fmt(e.T) << ',' << fmt(e.q) << ',' << model << ',' << fmt(e.z) << ',' << fmt(e.lo)
            << ',' << fmt(e.hi) << "\n";
}

// --- pipeline pieces shared by the analysis subcommands ---

struct EvFitOutcome {
    EvModel model;            // the model used downstream
    Matrix cov;               // covariance of its free parameters
    FitResult fit;            // primary fit (3-parameter or pareto-poisson)
    std::optional<GevModelChoice> choice;  // gev path only
    int n_obs = 0;
    ordered_json to_json(double alpha) const {
        if (choice) return gev_choice_json(*choice, alpha);
        ordered_json j;
        j["model"] = "pareto_poisson";
        j["threshold"] = jnum(std::get<ParetoPoissonParams>(model).u);
        ordered_json body = fit_json(fit, alpha);
        for (auto& [k, v] : body.items()) j[k] = v;
        return j;
    }
};

void require_converged(const FitResult& fit, const std::string& what) {
    if (!fit.converged) {
        std::ostringstream msg;
        msg << what << " did not converge (scaled gradient / covariance check failed; "
            << "iterations=" << fit.iterations << ")";
        throw std::runtime_error(msg.str());  // mapped to kExitFit by the caller
    }
}

EvFitOutcome fit_ev_on_maxima(const std::vector<double>& x_max, const CommonOpts& opt,
                              const std::vector<double>& exceedances, int years) {
    EvFitOutcome out;
    if (opt.ev == "gev") {
        GevModelChoice choice = fit_gev_with_selection(x_max, opt.alpha);
        require_converged(choice.gev, "GEV fit");
        out.n_obs = choice.gev.n_obs;
        if (choice.gumbel_preferred) {
            out.model = GevParams{choice.gumbel.estimates[0], choice.gumbel.estimates[1], 0.0};
            out.cov = choice.gumbel.covariance;
            out.fit = choice.gumbel;
        } else {
            out.model = GevParams{choice.gev.estimates[0], choice.gev.estimates[1],
                                  choice.gev.estimates[2]};
            out.cov = choice.gev.covariance;
            out.fit = choice.gev;
        }
        out.choice = std::move(choice);
        return out;
    }
    if (opt.ev != "pp") throw ParseError("unknown EV model: " + opt.ev);
    if (!opt.threshold_set) throw ParseError("--threshold is required for --ev pp");
    if (exceedances.empty())
        throw ParseError("no exceedances above the threshold in the input series");
    FitResult fit = fit_pareto_poisson(exceedances, years, opt.threshold);
    require_converged(fit, "Pareto-Poisson fit");
    out.model = ParetoPoissonParams{fit.estimates[0], fit.estimates[1], fit.estimates[2],
                                    opt.threshold};
    out.cov = fit.covariance;
    out.n_obs = years;
    out.fit = std::move(fit);
    return out;
}

struct LoadedInputs {
    AnnualMaximaSeries x_max;
    AnnualMaximaSeries z_max;
    PairingResult pairing;
    std::vector<double> exceedances;  // values above threshold (pp only)
    int years = 0;                    // calendar-year span of the x series
};

LoadedInputs load_inputs(const CommonOpts& opt, bool need_z) {
    LoadedInputs in;
    const TimeSeriesFile xs = read_series(opt.x_path);
    in.x_max = annual_maxima(xs, opt.coverage_floor);
    if (in.x_max.entries.empty()) throw ParseError("no usable years in " + opt.x_path);
    for (int y : in.x_max.dropped_years)
        std::cerr << "warning: year " << y << " dropped from " << opt.x_path
                  << " (coverage below floor)\n";
    if (opt.ev == "pp") {
        for (const SeriesRecord& r : xs.records)
            if (!std::isnan(r.value) && r.value > opt.threshold)
                in.exceedances.push_back(r.value);
        in.years = opt.years_override > 0
                       ? opt.years_override
                       : xs.records.back().year - xs.records.front().year + 1;
    }
    if (need_z) {
        const TimeSeriesFile zs = read_series(opt.z_path);
        in.z_max = annual_maxima(zs, opt.coverage_floor);
        in.pairing = pair_differences(in.x_max, in.z_max);
        if (in.pairing.pairs.x.empty())
            throw ParseError("x and z series share no years after pairing");
        if (!in.pairing.unpaired_z.empty())
            std::cerr << "warning: " << in.pairing.unpaired_z.size()
                      << " instrumental years have no reanalysis counterpart\n";
    }
    return in;
}

std::vector<double> maxima_values(const AnnualMaximaSeries& s) {
    std::vector<double> v;
    v.reserve(s.entries.size());
    for (const auto& e : s.entries) v.push_back(e.max);
    return v;
}

// --- subcommand drivers ---

int run_simulate(int sim_case, int years, int paired_years, int start_year, std::uint64_t seed,
                 bool poisson_counts, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    ordered_json truth;
    truth["schema_version"] = kSchemaVersion;
    truth["seed"] = seed;
    truth["years"] = years;
    truth["start_year"] = start_year;

    std::vector<double> x_max, z_max;
    if (sim_case == 1) {
        SimulationConfig cfg = SimulationConfig::case1_defaults();
        cfg.years = years;
        cfg.seed = seed;
        const Case1Data d = simulate_case1(cfg);
        x_max = d.x_max;
        z_max = d.z_max;
        truth["case"] = "gev_case1";
        truth["gev"] = {{"mu", jnum(cfg.gev.mu)}, {"logpsi", jnum(cfg.gev.logpsi)},
                        {"xi", jnum(cfg.gev.xi)}};
        truth["beta"] = {jnum(cfg.reg.beta[0]), jnum(cfg.reg.beta[1]), jnum(cfg.reg.beta[2]),
                         jnum(cfg.reg.beta[3])};
    } else {
        SimulationConfig cfg = SimulationConfig::case2_defaults();
        cfg.years = years;
        cfg.seed = seed;
        cfg.poisson_counts = poisson_counts;
        const Case2Data d = simulate_case2(cfg);
        x_max = d.x_max;
        z_max = d.z_max;
        truth["case"] = "pareto_poisson_case2";
        truth["pp"] = {{"lambda", jnum(cfg.pp.lambda)}, {"logpsi", jnum(cfg.pp.logpsi)},
                       {"xi", jnum(cfg.pp.xi)}, {"u", jnum(cfg.pp.u)}};
        truth["beta"] = {jnum(cfg.reg.beta[0]), jnum(cfg.reg.beta[1]), jnum(cfg.reg.beta[2]),
                         jnum(cfg.reg.beta[3])};
        write_series(dir / "exceedances.csv",
                     make_exceedance_series("hs_exceedance", "m", start_year, d.exceedances,
                                            d.counts_per_year));
    }

    write_series(dir / "x_max.csv", make_annual_series("hs_annual_max", "m", start_year, x_max));
    // Instrumental record: the last paired_years of the simulated span.
    const int skip = years - paired_years;
    const std::vector<double> z_tail(z_max.begin() + skip, z_max.end());
    write_series(dir / "z_max.csv",
                 make_annual_series("hs_annual_max_instrumental", "m", start_year + skip, z_tail));
    write_json(dir / "truth.json", truth);
    std::cout << "wrote " << (dir / "x_max.csv").string() << ", "
              << (dir / "z_max.csv").string() << "\n";
    return 0;
}

int run_fit_ev(const CommonOpts& opt) {
    const LoadedInputs in = load_inputs(opt, false);
    const EvFitOutcome ev =
        fit_ev_on_maxima(maxima_values(in.x_max), opt, in.exceedances, in.years);
    fs::create_directories(opt.out_dir);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["ev_fit"] = ev.to_json(opt.alpha);
    write_json(fs::path(opt.out_dir) / "ev_fit.json", j);
    std::cout << "wrote " << (fs::path(opt.out_dir) / "ev_fit.json").string() << "\n";
    return 0;
}

int run_fit_reg(const CommonOpts& opt) {
    const LoadedInputs in = load_inputs(opt, true);
    const HetRegFit reg = fit_hetreg(in.pairing.pairs, parse_family(opt.family));
    require_converged(reg.fit, "regression fit");
    fs::create_directories(opt.out_dir);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    ordered_json rj = fit_json(reg.fit, opt.alpha);
    rj["family"] = opt.family;
    rj["n_pairs"] = static_cast<int>(in.pairing.pairs.x.size());
    j["reg_fit"] = rj;
    write_json(fs::path(opt.out_dir) / "reg_fit.json", j);
    std::cout << "wrote " << (fs::path(opt.out_dir) / "reg_fit.json").string() << "\n";
    return 0;
}

int run_mixed_curve(const CommonOpts& opt) {
    const LoadedInputs in = load_inputs(opt, true);
    const EvFitOutcome ev =
        fit_ev_on_maxima(maxima_values(in.x_max), opt, in.exceedances, in.years);
    const HetRegFit reg = fit_hetreg(in.pairing.pairs, parse_family(opt.family));
    require_converged(reg.fit, "regression fit");

    const MixedModel mixed{ev.model, ev.cov, reg.model, reg.fit.covariance};
    if (sigma_clamped_in_domain(mixed))
        std::cerr << "warning: conditional sd nonpositive inside the integration domain; "
                     "clamped to " << mixed_sigma_floor(mixed) << "\n";
    const int n_y = static_cast<int>(in.pairing.pairs.x.size());
    const ReturnPeriodCurve curve = return_period_curve(mixed, opt.T, opt.alpha, n_y);

    fs::create_directories(opt.out_dir);
    std::ostringstream csv;
    csv << "T,q,model,quantile,lo,hi\n";
    append_curve_rows(csv, "mixed_z", curve);
    write_text_atomic(fs::path(opt.out_dir) / "curves.csv", csv.str());
    std::cout << "wrote " << (fs::path(opt.out_dir) / "curves.csv").string() << "\n";
    return 0;
}

int run_diagnose(const CommonOpts& opt) {
    const LoadedInputs in = load_inputs(opt, true);
    const EvFitOutcome ev =
        fit_ev_on_maxima(maxima_values(in.x_max), opt, in.exceedances, in.years);
    const HetRegFit reg = fit_hetreg(in.pairing.pairs, parse_family(opt.family));
    require_converged(reg.fit, "regression fit");

    const DiagnosticReport ev_diag =
        diagnose_ev_fit(maxima_values(in.x_max), ev.model, opt.alpha);
    const DiagnosticReport reg_diag =
        diagnose_regression(in.pairing.pairs, reg.model, opt.alpha);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["diagnostics"] = {{"ev_fit", diagnostics_json(ev_diag)},
                        {"regression", diagnostics_json(reg_diag)}};
    write_json(dir / "diagnostics.json", j);
    write_ppqq_csv(dir / "ev_ppqq.csv", ev_diag.ppqq);
    write_ppqq_csv(dir / "reg_ppqq.csv", reg_diag.ppqq);
    std::cout << "wrote " << (dir / "diagnostics.json").string() << "\n";
    return 0;
}

int run_full(const CommonOpts& opt) {
    const LoadedInputs in = load_inputs(opt, true);
    const std::vector<double> x_vals = maxima_values(in.x_max);
    const std::vector<double> z_vals = maxima_values(in.z_max);
    const int n_y = static_cast<int>(in.pairing.pairs.x.size());

    // Step 1: annual-maximum model on the reanalysis years.
    const EvFitOutcome ev = fit_ev_on_maxima(x_vals, opt, in.exceedances, in.years);

    // Step 2: conditional difference regression on the paired years.
    const HetRegFit reg = fit_hetreg(in.pairing.pairs, parse_family(opt.family));
    require_converged(reg.fit, "regression fit");

    // Step 3: comparison GEV directly on the instrumental maxima.
    GevModelChoice z_choice = fit_gev_with_selection(z_vals, opt.alpha);
    require_converged(z_choice.gev, "GEV fit on z");
    EvModel z_model;
    Matrix z_cov;
    if (z_choice.gumbel_preferred) {
        z_model = GevParams{z_choice.gumbel.estimates[0], z_choice.gumbel.estimates[1], 0.0};
        z_cov = z_choice.gumbel.covariance;
    } else {
        z_model = GevParams{z_choice.gev.estimates[0], z_choice.gev.estimates[1],
                            z_choice.gev.estimates[2]};
        z_cov = z_choice.gev.covariance;
    }

    // Step 4: return-period curves for all three models.
    const MixedModel mixed{ev.model, ev.cov, reg.model, reg.fit.covariance};
    std::vector<std::string> warnings;
    if (sigma_clamped_in_domain(mixed)) {
        std::ostringstream w;
        w << "conditional sd nonpositive inside the integration domain; clamped to "
          << mixed_sigma_floor(mixed);
        warnings.push_back(w.str());
        std::cerr << "warning: " << warnings.back() << "\n";
    }
    const ReturnPeriodCurve ev_curve =
        ev_return_period_curve(ev.model, ev.cov, opt.T, opt.alpha, ev.n_obs);
    const ReturnPeriodCurve mixed_curve = return_period_curve(mixed, opt.T, opt.alpha, n_y);
    const ReturnPeriodCurve z_curve = ev_return_period_curve(
        z_model, z_cov, opt.T, opt.alpha, static_cast<int>(z_vals.size()));

    const DiagnosticReport ev_diag = diagnose_ev_fit(x_vals, ev.model, opt.alpha);
    const DiagnosticReport reg_diag =
        diagnose_regression(in.pairing.pairs, reg.model, opt.alpha);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);

    std::ostringstream csv;
    csv << "T,q,model,quantile,lo,hi\n";
    append_curve_rows(csv, "ev_x", ev_curve);
    append_curve_rows(csv, "mixed_z", mixed_curve);
    append_curve_rows(csv, "gev_z", z_curve);
    write_text_atomic(dir / "curves.csv", csv.str());

    // Paired-years table for the scatter/difference plots.
    std::ostringstream pairs_csv;
    pairs_csv << "year,x_max,z_max,y\n";
    for (std::size_t i = 0; i < in.pairing.pairs.x.size(); ++i) {
        const int year = in.pairing.pairs.years.empty() ? 0 : in.pairing.pairs.years[i];
        pairs_csv << year << ',' << fmt(in.pairing.pairs.x[i]) << ','
                  << fmt(in.pairing.pairs.x[i] + in.pairing.pairs.y[i]) << ','
                  << fmt(in.pairing.pairs.y[i]) << "\n";
    }
    write_text_atomic(dir / "pairs.csv", pairs_csv.str());
    write_ppqq_csv(dir / "ev_ppqq.csv", ev_diag.ppqq);
    write_ppqq_csv(dir / "reg_ppqq.csv", reg_diag.ppqq);

    ordered_json report;
    report["schema_version"] = kSchemaVersion;
    report["ev_fit"] = ev.to_json(opt.alpha);
    ordered_json rj = fit_json(reg.fit, opt.alpha);
    rj["family"] = opt.family;
    rj["n_pairs"] = n_y;
    rj["unpaired_x_years"] = in.pairing.unpaired_x;
    rj["unpaired_z_years"] = in.pairing.unpaired_z;
    report["reg_fit"] = rj;
    report["gev_z_fit"] = gev_choice_json(z_choice, opt.alpha);
    report["diagnostics"] = {{"ev_fit", diagnostics_json(ev_diag)},
                             {"regression", diagnostics_json(reg_diag)},
                             {"warnings", warnings}};
    ordered_json meta;
    meta["file"] = "curves.csv";
    ordered_json jt = ordered_json::array();
    for (double t : opt.T) jt.push_back(jnum(t));
    meta["T"] = jt;
    meta["alpha"] = jnum(opt.alpha);
    meta["models"] = {"ev_x", "mixed_z", "gev_z"};
    meta["n_obs"] = {{"x", static_cast<int>(x_vals.size())},
                     {"z", static_cast<int>(z_vals.size())},
                     {"pairs", n_y}};
    report["curves_meta"] = meta;
    write_json(dir / "report.json", report);

    std::cout << "wrote " << (dir / "report.json").string() << " and "
              << (dir / "curves.csv").string() << "\n";
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opt, bool need_z) {
    cmd->add_option("--x", opt.x_path, "reanalysis series file")->required();
    if (need_z)
        cmd->add_option("--z", opt.z_path, "instrumental series file")->required();
    cmd->add_option("--ev", opt.ev, "annual-max model: gev | pp")
        ->check(CLI::IsMember({"gev", "pp"}));
    cmd->add_option("--threshold", opt.threshold, "POT threshold u (required for --ev pp)")
        ->each([&opt](const std::string&) { opt.threshold_set = true; });
    cmd->add_option("--family", opt.family, "regression family: linear | power")
        ->check(CLI::IsMember({"linear", "power"}));
    cmd->add_option("--alpha", opt.alpha, "significance level (default 0.05)");
    cmd->add_option("--T", opt.T, "return periods in years")->delimiter(',');
    cmd->add_option("--coverage-floor", opt.coverage_floor,
                    "minimum yearly coverage fraction (default 0.8)");
    cmd->add_option("--years", opt.years_override,
                    "observation years for the Poisson rate (default: span of the x series)");
    cmd->add_option("--out-dir", opt.out_dir, "output directory (default .)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed extreme value analysis combining reanalysis and instrumental maxima"};
    app.require_subcommand(1);

    // simulate
    int sim_case = 1, sim_years = 1000, sim_paired = -1, sim_start = 1001;
    std::uint64_t sim_seed = 1;
    bool sim_poisson = false;
    std::string sim_out = ".";
    CLI::App* sim = app.add_subcommand("simulate", "generate the reference synthetic cases");
    sim->add_option("--case", sim_case, "1 = GEV, 2 = Pareto-Poisson")
        ->check(CLI::IsMember({1, 2}));
    sim->add_option("--years", sim_years, "simulated years (default 1000)");
    sim->add_option("--paired-years", sim_paired,
                    "years with instrumental data, taken from the end (default: all)");
    sim->add_option("--start-year", sim_start, "first calendar year (default 1001)");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_flag("--poisson-counts", sim_poisson,
                  "case 2: Poisson-distributed annual exceedance counts");
    sim->add_option("--out-dir", sim_out, "output directory");

    CommonOpts fit_ev_opt, fit_reg_opt, curve_opt, diag_opt, full_opt;
    CLI::App* fev = app.add_subcommand("fit-ev", "fit the annual-maximum model on x");
    add_common(fev, fit_ev_opt, false);
    CLI::App* freg = app.add_subcommand("fit-reg", "fit the difference regression on (x, z)");
    add_common(freg, fit_reg_opt, true);
    CLI::App* curve = app.add_subcommand("mixed-curve", "mixed-model return-period curve");
    add_common(curve, curve_opt, true);
    CLI::App* diag = app.add_subcommand("diagnose", "hypothesis-test battery for both fits");
    add_common(diag, diag_opt, true);
    CLI::App* full = app.add_subcommand("full-run", "complete workflow: fits, diagnostics, curves");
    add_common(full, full_opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitParse;
    }

    try {
        if (sim->parsed()) {
            if (sim_paired < 0) sim_paired = sim_years;
            if (sim_paired > sim_years)
                throw ParseError("--paired-years cannot exceed --years");
            return run_simulate(sim_case, sim_years, sim_paired, sim_start, sim_seed,
                                sim_poisson, sim_out);
        }
        if (fev->parsed()) return run_fit_ev(fit_ev_opt);
        if (freg->parsed()) return run_fit_reg(fit_reg_opt);
        if (curve->parsed()) return run_mixed_curve(curve_opt);
        if (diag->parsed()) return run_diagnose(diag_opt);
        if (full->parsed()) return run_full(full_opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::runtime_error& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kExitFit;
    }
    return 1;
}
