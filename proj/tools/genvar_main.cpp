// genvar: generalized-variation functionals, multiple Fourier series partial
// sums and Cesaro means, hypothesis-series probes, and experiment presets.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "genvar/experiment.hpp"
#include "genvar/report.hpp"
#include "genvar/series_probe.hpp"
#include "genvar/summability.hpp"
#include "genvar/variation_multi.hpp"
#include "genvar/version.hpp"

namespace {

using namespace genvar;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

double parse_coord(const std::string& tok) {
    if (tok == "pi") return kPi;
    if (tok == "2pi") return kTwoPi;
    auto slash = tok.find("pi/");
    if (slash == 0) return kPi / std::strtod(tok.c_str() + 3, nullptr);
    if (tok.size() > 2 && tok.substr(tok.size() - 2) == "pi")
        return kPi * std::strtod(tok.substr(0, tok.size() - 2).c_str(), nullptr);
    return std::strtod(tok.c_str(), nullptr);
}

std::vector<double> parse_point(const std::string& s) {
    std::vector<double> p;
    for (const auto& tok : split(s, ',')) p.push_back(parse_coord(tok));
    return p;
}

std::vector<int> parse_grid(const std::string& s) {
    std::vector<int> g;
    for (const auto& tok : split(s, 'x')) g.push_back(std::stoi(tok));
    return g;
}

// "16:512:dyadic" doubles from start to stop; "16,32,64" is a plain list.
std::vector<int> parse_degrees(const std::string& s) {
    if (s.find(':') != std::string::npos) {
        auto parts = split(s, ':');
        if (parts.size() != 3 || parts[2] != "dyadic")
            throw std::invalid_argument("degree schedule must be start:stop:dyadic or a comma list");
        std::vector<int> out;
        for (int n = std::stoi(parts[0]); n <= std::stoi(parts[1]); n *= 2) out.push_back(n);
        return out;
    }
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_orders(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(std::strtod(tok.c_str(), nullptr));
    return out;
}

// "csv:<path>" loads a sample table (its own grid); anything else is a
// catalog spec evaluated on the requested uniform grid.
GridFunction load_fn(const std::string& fn_spec, const std::string& grid_spec) {
    if (fn_spec.rfind("csv:", 0) == 0) return load_csv(fn_spec.substr(4));
    auto grid = parse_grid(grid_spec);
    return make_catalog(fn_spec, uniform_axes(std::span<const int>(grid.data(), grid.size())));
}

nlohmann::json certificate_json(const Certificate& c) {
    nlohmann::json j;
    j["kind"] = c.kind;
    if (c.axis >= 0) j["axis"] = c.axis;
    if (c.sharp) j["sharp"] = true;
    if (c.tail_start != 1) j["tail_start"] = c.tail_start;
    if (!c.axes.empty()) j["axes"] = c.axes;
    if (!c.intervals.empty()) {
        nlohmann::json lists = nlohmann::json::array();
        for (const auto& ivs : c.intervals) {
            nlohmann::json l = nlohmann::json::array();
            for (const auto& iv : ivs) l.push_back({iv.a, iv.b});
            lists.push_back(std::move(l));
        }
        j["intervals"] = std::move(lists);
    }
    if (!c.interval_points.empty()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : c.interval_points) {
            nlohmann::json q = nlohmann::json::array();
            for (double v : p) q.push_back(round_12sig(v));
            pts.push_back(std::move(q));
        }
        j["points"] = std::move(pts);
    }
    if (!c.fixed_coords.empty()) {
        nlohmann::json fc = nlohmann::json::array();
        for (double v : c.fixed_coords) fc.push_back(round_12sig(v));
        j["fixed_coords"] = std::move(fc);
    }
    if (!c.rects.empty()) {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : c.rects) rs.push_back({r.x.a, r.x.b, r.y.a, r.y.b});
        j["rects"] = std::move(rs);
    }
    if (!c.children.empty()) {
        nlohmann::json ch = nlohmann::json::array();
        for (std::size_t i = 0; i < c.children.size(); ++i) {
            nlohmann::json e = certificate_json(c.children[i]);
            if (i < c.child_labels.size()) e["label"] = c.child_labels[i];
            ch.push_back(std::move(e));
        }
        j["children"] = std::move(ch);
    }
    return j;
}

void write_result_json(const VariationResult& r, const std::string& path) {
    nlohmann::json j;
    j["functional"] = to_string(r.id);
    j["value"] = round_12sig(r.value);
    j["method"] = to_string(r.method);
    j["bound_kind"] = to_string(r.bound);
    j["certificate"] = certificate_json(r.cert);
    write_file(path, j.dump(2) + "\n");
}

int run_variation(const std::string& fn_spec, const std::string& grid_spec,
                  std::vector<std::string> lambda_specs, const std::string& functional,
                  const std::string& method_name, const std::string& phi_spec, int nmax,
                  const std::string& n_list_spec, const std::string& out) {
    auto f = load_fn(fn_spec, grid_spec);
    Method method = method_name == "greedy" ? Method::Greedy : Method::Exhaustive;

    if (lambda_specs.empty()) lambda_specs = {"harmonic"};
    std::vector<LambdaSeq> seqs;
    while (static_cast<int>(lambda_specs.size()) < f.dim())
        lambda_specs.push_back(lambda_specs.back());
    for (const auto& spec : lambda_specs) seqs.push_back(parse_lambda(spec));
    std::vector<const LambdaSeq*> seq_ptrs;
    for (const auto& s : seqs) seq_ptrs.push_back(&s);

    auto axis_of = [&](char c) { return c - '1'; };
    VariationResult result;
    if (functional.rfind("v", 0) == 0 && functional.size() == 2) {
        result = axis_lambda_variation(f, axis_of(functional[1]), seqs[0], Mode::Fixed, method);
    } else if (functional.rfind("sharp", 0) == 0 && functional.size() == 6) {
        result = axis_lambda_variation(f, axis_of(functional[5]), seqs[0], Mode::Sharp, method);
    } else if (functional == "mixed") {
        result = mixed_lambda_variation(
            f, std::span<const LambdaSeq* const>(seq_ptrs.data(), seq_ptrs.size()), method);
    } else if (functional == "partial" || functional == "total") {
        result = composite_variation(
            f, std::span<const LambdaSeq* const>(seq_ptrs.data(), seq_ptrs.size()),
            functional == "partial" ? CompositeKind::Partial : CompositeKind::Total, {}, method);
    } else if (functional.rfind("index-set:", 0) == 0) {
        std::vector<int> alpha;
        for (const auto& tok : split(functional.substr(10), ','))
            alpha.push_back(std::stoi(tok) - 1);  // 1-based axes on the CLI
        result = composite_variation(
            f, std::span<const LambdaSeq* const>(seq_ptrs.data(), seq_ptrs.size()),
            CompositeKind::IndexSet, std::span<const int>(alpha.data(), alpha.size()), method);
    } else if (functional == "star") {
        result = star_variation(f, seqs[0], method);
    } else if (functional.rfind("phi", 0) == 0 && functional.size() == 4) {
        auto phi = parse_phi(phi_spec.empty() ? "power:p=2" : phi_spec);
        result = phi_variation(f, phi, axis_of(functional[3]), Mode::Fixed, method);
    } else if (functional.rfind("modulus", 0) == 0 && functional.size() == 8) {
        int axis = axis_of(functional[7]);
        int n = nmax > 0 ? nmax : f.axis_size(axis) / 2;
        auto table = modulus_of_variation(f, axis, n, false, method);
        nlohmann::json j;
        j["functional"] = "modulus";
        j["axis"] = axis;
        nlohmann::json vals = nlohmann::json::array();
        for (double v : table.values) vals.push_back(round_12sig(v));
        j["values"] = std::move(vals);
        write_file(out, j.dump(2) + "\n");
        std::printf("modulus v(1..%d) written to %s\n", n, out.c_str());
        return 0;
    } else if (functional.rfind("tail", 0) == 0 && functional.size() == 5) {
        int axis = axis_of(functional[4]);
        std::vector<std::uint64_t> ns;
        for (const auto& tok : split(n_list_spec.empty() ? "1,2,4,8" : n_list_spec, ','))
            ns.push_back(std::stoull(tok));
        auto probe = tail_continuity_probe(f, seqs[0], axis,
                                           std::span<const std::uint64_t>(ns.data(), ns.size()),
                                           method);
        nlohmann::json j;
        j["functional"] = "tail_sharp";
        j["axis"] = axis;
        j["doubling_ratio"] = round_12sig(probe.doubling_ratio);
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& [n, r] : probe.values)
            vals.push_back({{"n", n}, {"value", round_12sig(r.value)}});
        j["values"] = std::move(vals);
        write_file(out, j.dump(2) + "\n");
        std::printf("tail probe written to %s\n", out.c_str());
        return 0;
    } else {
        throw std::invalid_argument("unknown functional: " + functional);
    }

    double recheck = reevaluate_certificate(
        f, result.cert, std::span<const LambdaSeq* const>(seq_ptrs.data(), seq_ptrs.size()));
    write_result_json(result, out);
    std::printf("%s = %s (%s, %s; certificate re-sum %s)\n", functional.c_str(),
                format_value(result.value).c_str(), to_string(result.method),
                to_string(result.bound), format_value(recheck).c_str());
    return 0;
}

int run_fourier(const std::string& fn_spec, const std::string& grid_spec,
                const std::string& degrees_spec, const std::string& source,
                const std::string& out) {
    auto f = load_fn(fn_spec, grid_spec);
    std::vector<int> degrees;
    for (const auto& tok : split(degrees_spec, ',')) degrees.push_back(std::stoi(tok));
    SourcePreference pref = SourcePreference::PreferAnalytic;
    if (source == "analytic") pref = SourcePreference::RequireAnalytic;
    if (source == "quadrature") pref = SourcePreference::RequireQuadrature;
    auto table = fourier_coefficients(f, std::span<const int>(degrees.data(), degrees.size()), pref);

    std::string csv;
    for (int k = 0; k < table.dim; ++k) csv += "n" + std::to_string(k + 1) + ",";
    csv += "re,im\n";
    std::array<int, 3> n{0, 0, 0};
    auto rec = [&](auto&& self, int k) -> void {
        if (k == table.dim) {
            auto c = table.at(std::span<const int>(n.data(), table.dim));
            for (int kk = 0; kk < table.dim; ++kk) csv += std::to_string(n[kk]) + ",";
            csv += format_value(c.real()) + "," + format_value(c.imag()) + "\n";
            return;
        }
        for (n[k] = -table.degree[k]; n[k] <= table.degree[k]; ++n[k]) self(self, k + 1);
    };
    rec(rec, 0);
    write_file(out, csv);
    std::printf("%s coefficients (%s%s) written to %s\n", fn_spec.c_str(),
                table.source == CoeffSource::Analytic ? "analytic" : "quadrature",
                table.warn_discontinuous ? ", WARN: jump function under quadrature" : "",
                out.c_str());
    return 0;
}

int run_cesaro(const std::string& fn_spec, const std::string& grid_spec,
               const std::string& orders_spec, const std::string& point_spec,
               const std::string& degrees_spec, bool partial_sum, bool lattice,
               const std::string& out) {
    auto f = load_fn(fn_spec, grid_spec);
    auto point = parse_point(point_spec);
    auto degrees = parse_degrees(degrees_spec);
    std::vector<double> orders =
        orders_spec.empty() ? std::vector<double>(f.dim(), 0.0) : parse_orders(orders_spec);
    TraceConfig cfg;
    cfg.pringsheim_lattice = lattice;
    auto tr = pringsheim_diagnostic(f, std::span<const double>(point.data(), point.size()),
                                    partial_sum ? TraceMethod::PartialSum : TraceMethod::Cesaro,
                                    std::span<const double>(orders.data(), orders.size()),
                                    std::span<const int>(degrees.data(), degrees.size()), cfg);
    std::string csv = "N,value,abs_error,verdict\n";
    for (std::size_t i = 0; i < tr.degrees.size(); ++i)
        csv += std::to_string(tr.degrees[i]) + "," + format_value(tr.values[i]) + "," +
               format_value(tr.abs_errors[i]) + "," + to_string(tr.verdict) + "\n";
    write_file(out, csv);
    std::printf("%s at target %s: %s (final error %s) -> %s\n", fn_spec.c_str(),
                format_value(tr.target).c_str(), to_string(tr.verdict),
                format_value(tr.abs_errors.back()).c_str(), out.c_str());
    return 0;
}

int run_probe(const std::string& condition, const std::string& lambda_spec,
              const std::string& young_spec, const std::string& modulus_model, double alpha_sum,
              int dim, int depth, const std::string& out) {
    ProbeInput in;
    LambdaSeq seq = make_lambda(LambdaKind::Harmonic);
    if (!lambda_spec.empty()) seq = parse_lambda(lambda_spec);
    in.lambda = &seq;
    if (!modulus_model.empty()) {
        // "c=1,gamma=0.5" models v(n) = c * n^gamma.
        double cc = 1.0, gamma = 0.5;
        auto cpos = modulus_model.find("c=");
        if (cpos != std::string::npos) cc = std::strtod(modulus_model.c_str() + cpos + 2, nullptr);
        auto gpos = modulus_model.find("gamma=");
        if (gpos != std::string::npos)
            gamma = std::strtod(modulus_model.c_str() + gpos + 6, nullptr);
        in.modulus = [cc, gamma](std::uint64_t n) {
            return cc * std::pow(static_cast<double>(n), gamma);
        };
    }
    YoungPair young = young_power_pair(2.0);
    if (!young_spec.empty()) {
        if (young_spec == "llog")
            young = young_llog_pair();
        else if (young_spec.rfind("power", 0) == 0) {
            auto pos = young_spec.find("p=");
            young = young_power_pair(pos == std::string::npos
                                         ? 2.0
                                         : std::strtod(young_spec.c_str() + pos + 2, nullptr));
        }
    }
    in.young = &young;
    in.alpha_sum = alpha_sum;
    in.dim = dim;

    SeriesCondition cond;
    if (condition == "t1") cond = SeriesCondition::T1GammaOverN;
    else if (condition == "young-inv") cond = SeriesCondition::YoungPsiInverse;
    else if (condition == "sqrt-modulus") cond = SeriesCondition::SqrtModulus;
    else if (condition == "tt") cond = SeriesCondition::LambdaLogOverN;
    else if (condition == "young-log") cond = SeriesCondition::YoungPsiLog;
    else if (condition == "modulus-log") cond = SeriesCondition::ModulusLog;
    else if (condition == "lambda-log-d") cond = SeriesCondition::LambdaLogD;
    else if (condition == "t3") cond = SeriesCondition::LambdaAlpha;
    else throw std::invalid_argument("unknown condition: " + condition);

    ProbeConfig cfg;
    if (depth > 0) cfg.k_max = depth;
    auto v = series_condition_probe(cond, in, cfg);

    nlohmann::json j;
    j["condition"] = to_string(v.condition);
    j["classification"] = to_string(v.classification);
    j["model"] = to_string(v.model);
    j["model_residual"] = round_12sig(v.model_residual);
    j["note"] = v.note;
    nlohmann::json sums = nlohmann::json::array();
    for (std::size_t i = 0; i < v.cutoffs.size(); ++i)
        sums.push_back({{"N", v.cutoffs[i]}, {"sum", round_12sig(v.partial_sums[i])}});
    j["partial_sums"] = std::move(sums);
    write_file(out, j.dump(2) + "\n");
    std::printf("%s: %s (%s) -> %s\n", to_string(v.condition), to_string(v.classification),
                v.note.c_str(), out.c_str());
    return 0;
}

int run_experiment_cmd(const std::string& preset, const std::string& config_path, int cases,
                       std::uint64_t seed, int threads, const std::string& out_dir) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read " + config_path);
        nlohmann::json j;
        in >> j;
        cfg = ExperimentConfig::from_json(j);
    } else {
        cfg = ExperimentConfig::preset(experiment_from_string(preset));
    }
    if (cases >= 0) cfg.cases = cases;
    cfg.seed = seed;
    cfg.threads = threads;
    auto rep = run_experiment(cfg);
    std::string stem = rep.experiment;
    for (auto& c : stem) c = static_cast<char>(std::tolower(c));
    write_report_files(rep, out_dir, stem);
    std::printf("%s: %s\n", rep.experiment.c_str(), rep.summary.c_str());
    std::printf("report written to %s/%s.{json,csv%s}\n", out_dir.c_str(), stem.c_str(),
                plotdata_block_count(rep) > 0 ? ",dat" : "");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-variation functionals and Fourier summability experiments"};
    app.set_version_flag("--version", genvar::kVersion);
    app.fallthrough();

    std::uint64_t seed = 42;
    int threads = 1;
    std::string out_dir = ".";
    app.add_option("--seed", seed, "random seed for seeded experiments");
    app.add_option("--threads", threads, "worker threads for experiment cases");
    app.add_option("--out-dir", out_dir, "output directory for experiment reports");

    // variation
    auto* var = app.add_subcommand("variation", "evaluate a variation functional");
    std::string fn = "sign_diag", grid = "8x8", functional = "v1", method = "exhaustive";
    std::vector<std::string> lambdas;
    std::string phi_spec, n_list, var_out = "result.json";
    int nmax = 0;
    var->add_option("--fn", fn, "catalog function spec");
    var->add_option("--grid", grid, "grid sizes, e.g. 8x8");
    var->add_option("--lambda", lambdas, "lambda spec (repeat per axis)");
    var->add_option("--functional", functional,
                    "v1|v2|v3|sharp1|sharp2|sharp3|mixed|partial|total|index-set:1,2|star|"
                    "phi1|phi2|modulus1|modulus2|tail1|tail2");
    var->add_option("--method", method, "exhaustive|greedy");
    var->add_option("--phi", phi_spec, "phi spec for phi functionals, e.g. power:p=2");
    var->add_option("--nmax", nmax, "modulus table length");
    var->add_option("--n-list", n_list, "tail probe n values, e.g. 1,2,4,8");
    var->add_option("--out", var_out, "output JSON path");

    // fourier
    auto* fou = app.add_subcommand("fourier", "emit Fourier coefficients");
    std::string f_fn = "square_wave_1d", f_grid = "64", f_deg = "8",
                f_source = "prefer-analytic", f_out = "coeffs.csv";
    fou->add_option("--fn", f_fn, "catalog function spec");
    fou->add_option("--grid", f_grid, "grid sizes");
    fou->add_option("--degrees", f_deg, "per-axis degrees, e.g. 8,8");
    fou->add_option("--source", f_source, "analytic|quadrature|prefer-analytic");
    fou->add_option("--out", f_out, "output CSV path");

    // cesaro
    auto* ces = app.add_subcommand("cesaro", "partial-sum / Cesaro convergence trace");
    std::string c_fn = "step_product", c_grid = "8x8", c_orders = "-0.3,-0.3",
                c_point = "pi,pi", c_deg = "16:512:dyadic", c_out = "trace.csv";
    bool c_partial = false, c_lattice = false;
    ces->add_option("--fn", c_fn, "catalog function spec");
    ces->add_option("--grid", c_grid, "grid sizes");
    ces->add_option("--orders", c_orders, "per-axis Cesaro orders");
    ces->add_option("--point", c_point, "evaluation point, e.g. pi,pi");
    ces->add_option("--degrees", c_deg, "degree schedule, e.g. 16:512:dyadic");
    ces->add_flag("--partial-sum", c_partial, "trace rectangular partial sums instead");
    ces->add_flag("--lattice", c_lattice, "record sup of errors over degree pairs >= N");
    ces->add_option("--out", c_out, "output CSV path");

    // probe-series
    auto* prb = app.add_subcommand("probe-series", "classify a hypothesis series");
    std::string p_cond = "t1", p_lambda = "harmonic", p_young, p_modulus,
                p_out = "verdict.json";
    double p_alpha = 0.5;
    int p_dim = 2, p_depth = 0;
    prb->add_option("--condition", p_cond,
                    "t1|young-inv|sqrt-modulus|tt|young-log|modulus-log|lambda-log-d|t3");
    prb->add_option("--lambda", p_lambda, "lambda spec");
    prb->add_option("--young", p_young, "Young pair: power:p=2 or llog");
    prb->add_option("--modulus-model", p_modulus,
                    "modulus model v(n) = c*n^gamma, e.g. c=1,gamma=0.5");
    prb->add_option("--alpha-sum", p_alpha, "alpha_1+...+alpha_d for t3");
    prb->add_option("--dim", p_dim, "dimension d for log-power conditions");
    prb->add_option("--depth", p_depth, "dyadic probe depth K (N up to 2^K)");
    prb->add_option("--out", p_out, "output JSON path");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a preset experiment");
    std::string e_preset = "ORACLE_EQUIVALENCE", e_config;
    int e_cases = -1;
    exp->add_option("--preset", e_preset,
                    "THEOREM_S_DESK|ZHIZHIASHVILI_DESK|WATERMAN_W2_1D|GOGINAVA_PBV_REGIME|"
                    "INCLUSION_SUITE|ORACLE_EQUIVALENCE|SERIES_PROBE_SUITE");
    exp->add_option("--config", e_config, "JSON config file (overrides --preset)");
    exp->add_option("--cases", e_cases, "case count for seeded suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (var->parsed())
            return run_variation(fn, grid, lambdas, functional, method, phi_spec, nmax, n_list,
                                 var_out);
        if (fou->parsed()) return run_fourier(f_fn, f_grid, f_deg, f_source, f_out);
        if (ces->parsed())
            return run_cesaro(c_fn, c_grid, c_orders, c_point, c_deg, c_partial, c_lattice, c_out);
        if (prb->parsed())
            return run_probe(p_cond, p_lambda, p_young, p_modulus, p_alpha, p_dim, p_depth,
                             p_out);
        if (exp->parsed())
            return run_experiment_cmd(e_preset, e_config, e_cases, seed, threads, out_dir);
        std::cout << app.help() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
