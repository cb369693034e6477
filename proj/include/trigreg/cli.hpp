#pragma once

#include "trigreg/basis.hpp"
#include "trigreg/bayes.hpp"
#include "trigreg/bounds.hpp"
#include "trigreg/estimator.hpp"
#include "trigreg/experiments.hpp"
#include "trigreg/io.hpp"
#include "trigreg/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace trigreg::cli {

// exit codes: 0 ok, 1 usage, 2 data/config, 3 numeric
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

namespace detail {

inline std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace detail

// All diagnostics go to err; data goes to files or out.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"regularized trigonometric regression toolkit"};
    app.require_subcommand(1);

    // --- fit ---------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "fit the regularized estimate from a dataset");
    std::string fit_data, fit_space, fit_out;
    double fit_gamma = 0.0;
    bool fit_kernel_route = false;
    fit_cmd->add_option("--data", fit_data, "dataset CSV (header x,y)")->required();
    fit_cmd->add_option("--space", fit_space, "hypothesis space JSON")->required();
    fit_cmd->add_option("--gamma", fit_gamma, "regularization parameter (0 = minimum-norm)")
        ->required();
    fit_cmd->add_option("--out", fit_out, "output JSON path (default: stdout)");
    fit_cmd->add_flag("--kernel-oracle", fit_kernel_route,
                      "solve through the N x N representer system instead");

    // --- bound -------------------------------------------------------------
    auto* bound_cmd = app.add_subcommand("bound", "evaluate a bound at a given gamma");
    std::string bound_kind, bound_ctx_path;
    double bound_gamma = 1.0;
    std::optional<double> bound_m, bound_eps, bound_binf, bound_approx, bound_sigma_norm;
    bound_cmd->add_option("kind", bound_kind,
                          "one of: theorem1 approx_a approx_b combined_a combined_b sz "
                          "sz_min_gamma sz_crossover_M lgz wz effective_dimension report")
        ->required();
    bound_cmd->add_option("--ctx", bound_ctx_path, "bound context JSON")->required();
    bound_cmd->add_option("--gamma", bound_gamma, "gamma value");
    bound_cmd->add_option("--M", bound_m, "output bound M (sz)");
    bound_cmd->add_option("--eps", bound_eps, "eps in (0,1) (wz)");
    bound_cmd->add_option("--binf", bound_binf, "sup-norm bound on f_rho (wz)");
    bound_cmd->add_option("--approx-error", bound_approx,
                          "approximation error (lgz; default approx_a at gamma)");
    bound_cmd->add_option("--sigma-norm", bound_sigma_norm,
                          "||sigma_rho||_p with p=2 (lgz; default B_sigma^2)");

    // --- select-gamma --------------------------------------------------------
    auto* sel_cmd = app.add_subcommand("select-gamma", "closed-form gamma selection");
    std::string sel_ctx_path, sel_variant = "both";
    sel_cmd->add_option("--ctx", sel_ctx_path, "bound context JSON")->required();
    sel_cmd->add_option("--variant", sel_variant, "a, b or both (default both)");

    // --- gibbs -----------------------------------------------------------------
    auto* gibbs_cmd = app.add_subcommand("gibbs", "run the (alpha, gamma) Gibbs sampler");
    std::string gibbs_data, gibbs_space, gibbs_out;
    double gibbs_sigma2 = 0.0, gibbs_init = 1.0;
    int gibbs_total = 1500, gibbs_keep = 1000;
    std::uint64_t gibbs_seed = 0;
    bool gibbs_alpha = false;
    gibbs_cmd->add_option("--data", gibbs_data, "dataset CSV")->required();
    gibbs_cmd->add_option("--space", gibbs_space, "hypothesis space JSON")->required();
    gibbs_cmd->add_option("--sigma2", gibbs_sigma2, "noise variance of the model")->required();
    gibbs_cmd->add_option("--samples", gibbs_total, "total Gibbs samples N_G (default 1500)");
    gibbs_cmd->add_option("--keep", gibbs_keep, "kept tail N_g (default 1000)");
    gibbs_cmd->add_option("--init-gamma", gibbs_init, "chain start (default 1)");
    gibbs_cmd->add_option("--seed", gibbs_seed, "chain seed");
    gibbs_cmd->add_option("--out", gibbs_out, "trace CSV path (default: stdout)");
    gibbs_cmd->add_flag("--include-alpha", gibbs_alpha, "append alpha columns to the trace");

    // --- experiment ---------------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "run a Monte Carlo experiment");
    std::string exp_name, exp_config, exp_out_dir = ".";
    std::optional<std::uint64_t> exp_seed;
    std::optional<int> exp_runs;
    exp_cmd->add_option("name", exp_name,
                        "sz_compare | lgz_compare | tradeoff | wz_compare | reg_benefit")
        ->required();
    exp_cmd->add_option("--config", exp_config, "experiment config JSON (default: built-in)");
    exp_cmd->add_option("--out-dir", exp_out_dir, "output directory (default .)");
    exp_cmd->add_option("--seed", exp_seed, "override the master seed");
    exp_cmd->add_option("--runs", exp_runs, "override the run count");

    // --- plot ------------------------------------------------------------------------
    auto* plot_cmd = app.add_subcommand("plot", "render a records CSV to a static SVG");
    std::string plot_records, plot_kind, plot_columns, plot_group, plot_out;
    bool plot_log = false;
    plot_cmd->add_option("--records", plot_records, "records CSV")->required();
    plot_cmd->add_option("--kind", plot_kind, "boxplot | line")->required();
    plot_cmd->add_option("--columns", plot_columns, "comma-separated column names")->required();
    plot_cmd->add_option("--group", plot_group, "grouping column (line plots)");
    plot_cmd->add_flag("--log", plot_log, "plot log10 of the values");
    plot_cmd->add_option("--out", plot_out, "output SVG path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*fit_cmd) {
            const HypothesisSpace hs = load_hypothesis_space(fit_space);
            const Dataset d = load_dataset(fit_data);
            FitResult fit = fit_gamma > 0.0
                                ? (fit_kernel_route ? fit_kernel_oracle(hs, d, fit_gamma)
                                                    : fit_ridge(hs, d, fit_gamma))
                                : fit_unregularized(hs, d);
            const std::string text = to_json(fit).dump(2) + "\n";
            if (fit_out.empty())
                out << text;
            else
                atomic_write_file(fit_out, text);
            return kExitOk;
        }
        if (*bound_cmd) {
            const BoundContext ctx = load_bound_context(bound_ctx_path);
            const auto need = [&](const std::optional<double>& v, const char* flag) {
                if (!v) throw io_error(std::string("bound ") + bound_kind + " requires " + flag);
                return *v;
            };
            if (bound_kind == "report") {
                BoundReportInputs inputs;
                inputs.gamma = bound_gamma;
                inputs.sz_M = bound_m;
                inputs.wz_eps = bound_eps;
                inputs.wz_b_inf = bound_binf;
                inputs.lgz_approx = bound_approx;
                inputs.lgz_sigma = bound_sigma_norm;
                json j = json::object();
                for (const auto& [k, v] : bound_report(ctx, inputs)) j[k] = v;
                out << j.dump(2) << "\n";
                return kExitOk;
            }
            double value = 0.0;
            if (bound_kind == "theorem1") value = sample_bound_theorem1(ctx, bound_gamma);
            else if (bound_kind == "approx_a") value = approx_bound_a(ctx, bound_gamma);
            else if (bound_kind == "approx_b") value = approx_bound_b(ctx, bound_gamma);
            else if (bound_kind == "combined_a")
                value = combined_bound(ctx, bound_gamma, ApproxVariant::a);
            else if (bound_kind == "combined_b")
                value = combined_bound(ctx, bound_gamma, ApproxVariant::b);
            else if (bound_kind == "sz") value = sz_bound(ctx, need(bound_m, "--M"), bound_gamma);
            else if (bound_kind == "sz_min_gamma") value = sz_min_gamma(ctx);
            else if (bound_kind == "sz_crossover_M") value = sz_crossover_M(ctx, bound_gamma);
            else if (bound_kind == "lgz")
                value = lgz_bound(ctx, bound_gamma,
                                  bound_approx.value_or(approx_bound_a(ctx, bound_gamma)),
                                  bound_sigma_norm.value_or(ctx.B_sigma * ctx.B_sigma))
                            .probability_bound;
            else if (bound_kind == "wz")
                value = wz_bound(
                    wz_constants(ctx, need(bound_binf, "--binf"), need(bound_eps, "--eps")),
                    ctx.N, ctx.delta);
            else if (bound_kind == "effective_dimension")
                value = effective_dimension(ctx.lambdas, bound_gamma);
            else
                throw io_error("unknown bound kind: " + bound_kind);
            if (!std::isfinite(value) && bound_kind != "wz")
                throw std::runtime_error("bound " + bound_kind + " is not finite");
            out << format_double(value) << "\n";
            return kExitOk;
        }
        if (*sel_cmd) {
            const BoundContext ctx = load_bound_context(sel_ctx_path);
            json j = json::object();
            if (sel_variant == "a" || sel_variant == "both") {
                const GammaHatA ga = gamma_hat_a(ctx);
                j["condition_a_met"] = ga.condition_met;
                if (ga.condition_met) j["gamma_hat_a"] = ga.gamma;
            }
            if (sel_variant == "b" || sel_variant == "both") j["gamma_hat_b"] = gamma_hat_b(ctx);
            if (sel_variant != "a" && sel_variant != "b" && sel_variant != "both")
                throw io_error("select-gamma: variant must be a, b or both");
            out << j.dump(2) << "\n";
            return kExitOk;
        }
        if (*gibbs_cmd) {
            const HypothesisSpace hs = load_hypothesis_space(gibbs_space);
            const Dataset d = load_dataset(gibbs_data);
            GibbsConfig cfg;
            cfg.total_samples = gibbs_total;
            cfg.keep_last = gibbs_keep;
            cfg.init_gamma = gibbs_init;
            cfg.seed = gibbs_seed;
            const GibbsTrace trace = gibbs_run(hs, d, cfg, gibbs_sigma2);
            const double ghat = gamma_hat_gibbs(trace, cfg);
            err << "gamma_hat = " << format_double(ghat) << "\n";
            const std::string text = gibbs_trace_to_csv(trace, gibbs_alpha);
            if (gibbs_out.empty())
                out << text;
            else
                atomic_write_file(gibbs_out, text);
            return kExitOk;
        }
        if (*exp_cmd) {
            ExperimentConfig cfg = exp_config.empty()
                                       ? default_config(experiment_from_string(exp_name))
                                       : load_experiment_config(exp_config);
            if (cfg.name != experiment_from_string(exp_name))
                throw io_error("experiment: config name does not match the requested experiment");
            if (exp_seed) cfg.seed = *exp_seed;
            if (exp_runs) cfg.runs = *exp_runs;
            const ExperimentResult res = run_experiment(cfg);
            write_experiment_outputs(res, cfg, exp_out_dir);
            err << to_string(cfg.name) << ": " << res.records.rows.size() << " records -> "
                << exp_out_dir << "\n";
            return kExitOk;
        }
        if (*plot_cmd) {
            const RecordTable table = load_records(plot_records);
            PlotOptions opt;
            opt.log10_values = plot_log;
            opt.group_column = plot_group;
            const std::vector<std::string> cols = detail::split_csv_list(plot_columns);
            std::string svg;
            if (plot_kind == "boxplot")
                svg = svg_boxplot(table, cols, opt);
            else if (plot_kind == "line")
                svg = svg_line_plot(table, cols, opt);
            else
                throw io_error("plot: kind must be boxplot or line");
            atomic_write_file(plot_out, svg);
            return kExitOk;
        }
    } catch (const io_error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitData;
    } catch (const std::exception& ex) {
        err << "numeric error: " << ex.what() << "\n";
        return kExitNumeric;
    }
    err << "no subcommand selected\n";
    return kExitUsage;
}

inline int dispatch_argv(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, out, err);
}

}  // namespace trigreg::cli
