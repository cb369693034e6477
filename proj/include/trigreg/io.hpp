#pragma once

#include "trigreg/basis.hpp"
#include "trigreg/bounds.hpp"
#include "trigreg/estimator.hpp"
#include "trigreg/experiments.hpp"
#include "trigreg/spectral.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace trigreg {

using json = nlohmann::json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shortest round-trip decimal form (nan/inf spelled out)
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    double v = 0.0;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw io_error("cannot parse real number: '" + s + "'");
    return v;
}

// results land under their final name only after a complete write
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.good()) throw io_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("rename failed for " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline json parse_json_file(const std::filesystem::path& path) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw io_error("malformed JSON in " + path.string());
    return j;
}

// strict schemas: unknown keys are rejected, missing keys named
inline void check_keys(const json& j, const std::set<std::string>& required,
                       const std::set<std::string>& optional, const std::string& what) {
    if (!j.is_object()) throw io_error(what + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (!required.count(item.key()) && !optional.count(item.key()))
            throw io_error(what + ": unknown key '" + item.key() + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key)) throw io_error(what + ": missing key '" + key + "'");
}

inline double get_real(const json& j, const std::string& key, const std::string& what) {
    if (!j.at(key).is_number()) throw io_error(what + ": key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::int64_t get_int(const json& j, const std::string& key, const std::string& what) {
    if (!j.at(key).is_number_integer())
        throw io_error(what + ": key '" + key + "' must be an integer");
    return j.at(key).get<std::int64_t>();
}

}  // namespace detail

// --- hypothesis space: {X, Q, lambdas} ----------------------------------

inline json to_json(const HypothesisSpace& hs) {
    return json{{"X", hs.domain_width()}, {"Q", hs.frequencies()}, {"lambdas", hs.lambdas()}};
}

inline HypothesisSpace hypothesis_space_from_json(const json& j) {
    detail::check_keys(j, {"X", "Q", "lambdas"}, {}, "hypothesis space");
    const double X = detail::get_real(j, "X", "hypothesis space");
    if (!j.at("Q").is_array() || !j.at("lambdas").is_array())
        throw io_error("hypothesis space: Q and lambdas must be arrays");
    std::vector<int> q;
    for (const auto& v : j.at("Q")) {
        if (!v.is_number_integer()) throw io_error("hypothesis space: Q entries must be integers");
        q.push_back(v.get<int>());
    }
    std::vector<double> lambdas;
    for (const auto& v : j.at("lambdas")) {
        if (!v.is_number()) throw io_error("hypothesis space: lambda entries must be numbers");
        lambdas.push_back(v.get<double>());
    }
    try {
        return HypothesisSpace(X, std::move(q), std::move(lambdas));
    } catch (const std::invalid_argument& ex) {
        throw io_error(std::string("hypothesis space: ") + ex.what());
    }
}

inline HypothesisSpace load_hypothesis_space(const std::filesystem::path& path) {
    return hypothesis_space_from_json(detail::parse_json_file(path));
}

// --- spectral function: {X, terms: [{q, parity, coeff}]} -----------------

inline json to_json(const SpectralFunction& f) {
    json terms = json::array();
    for (const auto& [freq, c] : f.coefficients()) {
        terms.push_back(json{{"q", freq.q},
                             {"parity", freq.parity == Parity::sin ? "sin" : "cos"},
                             {"coeff", c}});
    }
    return json{{"X", f.domain_width()}, {"terms", terms}};
}

inline SpectralFunction spectral_function_from_json(const json& j) {
    detail::check_keys(j, {"X", "terms"}, {}, "spectral function");
    SpectralFunction f(detail::get_real(j, "X", "spectral function"));
    if (!j.at("terms").is_array()) throw io_error("spectral function: terms must be an array");
    for (const auto& t : j.at("terms")) {
        detail::check_keys(t, {"q", "parity", "coeff"}, {}, "spectral function term");
        const int q = static_cast<int>(detail::get_int(t, "q", "term"));
        const std::string parity = t.at("parity").get<std::string>();
        if (parity != "sin" && parity != "cos")
            throw io_error("spectral function: parity must be 'sin' or 'cos'");
        f.add({q, parity == "sin" ? Parity::sin : Parity::cos},
              detail::get_real(t, "coeff", "term"));
    }
    return f;
}

inline SpectralFunction load_spectral_function(const std::filesystem::path& path) {
    return spectral_function_from_json(detail::parse_json_file(path));
}

// --- bound context --------------------------------------------------------

inline json to_json(const BoundContext& ctx) {
    return json{{"B_f", ctx.B_f},
                {"B_sigma", ctx.B_sigma},
                {"N", ctx.N},
                {"delta", ctx.delta},
                {"C_K", ctx.C_K},
                {"lambda_min", ctx.lambda_min},
                {"lambdas", std::vector<double>(ctx.lambdas.begin(), ctx.lambdas.end())},
                {"alpha_pi", std::vector<double>(ctx.alpha_pi.begin(), ctx.alpha_pi.end())},
                {"tail_energy", ctx.tail_energy}};
}

inline BoundContext bound_context_from_json(const json& j) {
    detail::check_keys(j,
                       {"B_f", "B_sigma", "N", "delta", "C_K", "lambda_min", "lambdas",
                        "alpha_pi", "tail_energy"},
                       {}, "bound context");
    BoundContext ctx;
    ctx.B_f = detail::get_real(j, "B_f", "bound context");
    ctx.B_sigma = detail::get_real(j, "B_sigma", "bound context");
    ctx.N = static_cast<int>(detail::get_int(j, "N", "bound context"));
    ctx.delta = detail::get_real(j, "delta", "bound context");
    ctx.C_K = detail::get_real(j, "C_K", "bound context");
    ctx.lambda_min = detail::get_real(j, "lambda_min", "bound context");
    const auto lam = j.at("lambdas").get<std::vector<double>>();
    const auto api = j.at("alpha_pi").get<std::vector<double>>();
    ctx.lambdas = Eigen::Map<const Eigen::VectorXd>(lam.data(), lam.size());
    ctx.alpha_pi = Eigen::Map<const Eigen::VectorXd>(api.data(), api.size());
    ctx.tail_energy = detail::get_real(j, "tail_energy", "bound context");
    try {
        ctx.validate();
    } catch (const std::invalid_argument& ex) {
        throw io_error(std::string("bound context: ") + ex.what());
    }
    return ctx;
}

inline BoundContext load_bound_context(const std::filesystem::path& path) {
    return bound_context_from_json(detail::parse_json_file(path));
}

// --- fit result: {gamma, alpha_hat} ---------------------------------------

inline json to_json(const FitResult& fit) {
    return json{{"gamma", fit.gamma},
                {"alpha_hat", std::vector<double>(fit.alpha_hat.begin(), fit.alpha_hat.end())}};
}

// --- dataset: two-column delimited text, header "x,y" ---------------------

inline std::string dataset_to_csv(const Dataset& d) {
    std::string out = "x,y\n";
    for (int t = 0; t < d.size(); ++t)
        out += format_double(d.xs[t]) + "," + format_double(d.ys[t]) + "\n";
    return out;
}

inline Dataset dataset_from_csv(const std::string& text) {
    Dataset d;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw io_error("dataset: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y") throw io_error("dataset: expected header 'x,y', got '" + line + "'");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw io_error("dataset: line " + std::to_string(lineno) + " has no comma");
        try {
            d.xs.push_back(parse_double(line.substr(0, comma)));
            d.ys.push_back(parse_double(line.substr(comma + 1)));
        } catch (const io_error& ex) {
            throw io_error("dataset: line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    d.validate();
    return d;
}

inline Dataset load_dataset(const std::filesystem::path& path) {
    return dataset_from_csv(read_file(path));
}

// --- record tables ---------------------------------------------------------

inline std::string records_to_csv(const RecordTable& table, const std::string& name) {
    std::string out = "# " + name + " records; one row per record, columns in fixed order\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += table.columns[i];
        out += (i + 1 < table.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_double(row[i]);
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

inline RecordTable records_from_csv(const std::string& text) {
    RecordTable table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!header_seen) {
            table.columns = cells;
            header_seen = true;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw io_error("records: line " + std::to_string(lineno) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(table.columns.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            if (c == "nan") row.push_back(std::numeric_limits<double>::quiet_NaN());
            else if (c == "inf") row.push_back(std::numeric_limits<double>::infinity());
            else if (c == "-inf") row.push_back(-std::numeric_limits<double>::infinity());
            else row.push_back(parse_double(c));
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw io_error("records: no header row");
    return table;
}

inline RecordTable load_records(const std::filesystem::path& path) {
    return records_from_csv(read_file(path));
}

// --- summaries --------------------------------------------------------------

inline json to_json(const SummaryStats& s) {
    return json{{"mean", s.mean}, {"std", s.stddev},   {"median", s.median},
                {"q25", s.q25},   {"q75", s.q75},       {"min", s.min},
                {"max", s.max},   {"count", s.count},   {"nonfinite_count", s.nonfinite_count}};
}

// --- experiment config -------------------------------------------------------

inline json to_json(const ExperimentConfig& cfg) {
    json j{{"name", to_string(cfg.name)},
           {"runs", cfg.runs},
           {"seed", cfg.seed},
           {"X", cfg.X},
           {"pool", json{{"lo", cfg.pool_lo}, {"hi", cfg.pool_hi}}},
           {"n_pairs", cfg.n_pairs},
           {"E", cfg.E},
           {"snr", cfg.snr},
           {"noise", cfg.noise == NoiseKind::uniform ? "uniform" : "gaussian"},
           {"delta", cfg.delta},
           {"gamma_grid", json{{"lo", cfg.gamma_grid.lo},
                               {"hi", cfg.gamma_grid.hi},
                               {"points", cfg.gamma_grid.points},
                               {"log", cfg.gamma_grid.log_spaced}}}};
    if (cfg.lambda_spec.kind == LambdaSpec::Kind::fixed)
        j["lambda"] = json{{"kind", "fixed"}, {"value", cfg.lambda_spec.value}};
    else
        j["lambda"] = json{{"kind", "uniform"}, {"lo", cfg.lambda_spec.lo}, {"hi", cfg.lambda_spec.hi}};
    if (cfg.N_spec.kind == NSpec::Kind::fixed)
        j["N"] = json{{"kind", "fixed"}, {"n", cfg.N_spec.n}};
    else
        j["N"] = json{{"kind", "sampled"},
                      {"lo", cfg.N_spec.lo},
                      {"hi", cfg.N_spec.hi},
                      {"stride", cfg.N_spec.stride}};
    if (!cfg.eps_grid.empty()) j["eps_grid"] = cfg.eps_grid;
    return j;
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
    detail::check_keys(j,
                       {"name", "runs", "seed", "X", "pool", "n_pairs", "E", "lambda", "snr",
                        "noise", "N", "delta"},
                       {"gamma_grid", "eps_grid"}, "experiment config");
    ExperimentConfig cfg;
    cfg.name = experiment_from_string(j.at("name").get<std::string>());
    cfg.runs = static_cast<int>(detail::get_int(j, "runs", "experiment config"));
    cfg.seed = static_cast<std::uint64_t>(detail::get_int(j, "seed", "experiment config"));
    cfg.X = detail::get_real(j, "X", "experiment config");
    detail::check_keys(j.at("pool"), {"lo", "hi"}, {}, "pool");
    cfg.pool_lo = static_cast<int>(detail::get_int(j.at("pool"), "lo", "pool"));
    cfg.pool_hi = static_cast<int>(detail::get_int(j.at("pool"), "hi", "pool"));
    cfg.n_pairs = static_cast<int>(detail::get_int(j, "n_pairs", "experiment config"));
    cfg.E = static_cast<int>(detail::get_int(j, "E", "experiment config"));
    const json& lam = j.at("lambda");
    const std::string lam_kind = lam.at("kind").get<std::string>();
    if (lam_kind == "fixed") {
        detail::check_keys(lam, {"kind", "value"}, {}, "lambda");
        cfg.lambda_spec = {LambdaSpec::Kind::fixed, detail::get_real(lam, "value", "lambda"), 0, 0};
    } else if (lam_kind == "uniform") {
        detail::check_keys(lam, {"kind", "lo", "hi"}, {}, "lambda");
        cfg.lambda_spec = {LambdaSpec::Kind::uniform, 0, detail::get_real(lam, "lo", "lambda"),
                           detail::get_real(lam, "hi", "lambda")};
    } else {
        throw io_error("experiment config: lambda kind must be 'fixed' or 'uniform'");
    }
    cfg.snr = detail::get_real(j, "snr", "experiment config");
    const std::string noise = j.at("noise").get<std::string>();
    if (noise == "uniform") cfg.noise = NoiseKind::uniform;
    else if (noise == "gaussian") cfg.noise = NoiseKind::gaussian;
    else throw io_error("experiment config: noise must be 'uniform' or 'gaussian'");
    const json& nspec = j.at("N");
    const std::string n_kind = nspec.at("kind").get<std::string>();
    if (n_kind == "fixed") {
        detail::check_keys(nspec, {"kind", "n"}, {}, "N");
        cfg.N_spec = {NSpec::Kind::fixed, static_cast<int>(detail::get_int(nspec, "n", "N")), 0, 0, 1};
    } else if (n_kind == "sampled") {
        detail::check_keys(nspec, {"kind", "lo", "hi"}, {"stride"}, "N");
        cfg.N_spec = {NSpec::Kind::sampled, 0, static_cast<int>(detail::get_int(nspec, "lo", "N")),
                      static_cast<int>(detail::get_int(nspec, "hi", "N")),
                      nspec.contains("stride") ? static_cast<int>(detail::get_int(nspec, "stride", "N")) : 1};
    } else {
        throw io_error("experiment config: N kind must be 'fixed' or 'sampled'");
    }
    cfg.delta = detail::get_real(j, "delta", "experiment config");
    if (j.contains("gamma_grid")) {
        const json& g = j.at("gamma_grid");
        detail::check_keys(g, {"lo", "hi", "points", "log"}, {}, "gamma_grid");
        cfg.gamma_grid = {detail::get_real(g, "lo", "gamma_grid"),
                          detail::get_real(g, "hi", "gamma_grid"),
                          static_cast<int>(detail::get_int(g, "points", "gamma_grid")),
                          g.at("log").get<bool>()};
    }
    if (j.contains("eps_grid")) cfg.eps_grid = j.at("eps_grid").get<std::vector<double>>();
    try {
        cfg.validate();
    } catch (const std::invalid_argument& ex) {
        throw io_error(std::string("experiment config: ") + ex.what());
    }
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    return experiment_config_from_json(detail::parse_json_file(path));
}

// --- experiment outputs -------------------------------------------------------

inline std::string summary_to_json_text(const ExperimentResult& res, const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = to_string(res.name);
    j["master_seed"] = res.master_seed;
    j["config"] = to_json(cfg);
    json cols = json::object();
    for (const auto& [name, stats] : res.summary) cols[name] = to_json(stats);
    j["columns"] = cols;
    return j.dump(2) + "\n";
}

// writes <name>_records.csv and <name>_summary.json under out_dir
inline void write_experiment_outputs(const ExperimentResult& res, const ExperimentConfig& cfg,
                                     const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string name = to_string(res.name);
    atomic_write_file(out_dir / (name + "_records.csv"), records_to_csv(res.records, name));
    atomic_write_file(out_dir / (name + "_summary.json"), summary_to_json_text(res, cfg));
}

// --- trace file -----------------------------------------------------------------

inline std::string gibbs_trace_to_csv(const GibbsTrace& trace, bool include_alpha = false) {
    std::string out = "sample_index,gamma,neg_log_evidence";
    if (include_alpha && !trace.alpha_samples.empty()) {
        for (int i = 0; i < trace.alpha_samples.front().size(); ++i)
            out += ",alpha_" + std::to_string(i);
    }
    out += "\n";
    for (std::size_t k = 0; k < trace.gamma_samples.size(); ++k) {
        out += std::to_string(k) + "," + format_double(trace.gamma_samples[k]) + "," +
               format_double(trace.neg_log_evidence[k]);
        if (include_alpha && !trace.alpha_samples.empty())
            for (int i = 0; i < trace.alpha_samples[k].size(); ++i)
                out += "," + format_double(trace.alpha_samples[k][i]);
        out += "\n";
    }
    return out;
}

}  // namespace trigreg
