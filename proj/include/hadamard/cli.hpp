#pragma once

/**
 * @file cli.hpp
 * @brief The `hadamard` command line: argument handling, report assembly
 *        and text / JSON / CSV rendering.
 *
 * Exit codes: 0 every requested check passed, 1 a checked inequality or
 * identity failed, 2 usage or parse error, 3 evaluation error at runtime.
 */

#include "hadamard/bounds.hpp"
#include "hadamard/convexity.hpp"
#include "hadamard/core.hpp"
#include "hadamard/cubature.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/expr.hpp"
#include "hadamard/quadrature.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hadamard::cli {

inline constexpr const char* version = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int runtime = 3;
} // namespace exit_code

enum class Format { text, json, csv };

struct RunConfig {
    std::string subcommand;
    std::string function_text;
    std::array<double, 4> rect{0.0, 1.0, 0.0, 1.0};
    QuadratureSpec quadrature;
    std::vector<double> p_list;
    std::vector<double> q_list;
    std::size_t tiles_x = 4;
    std::size_t tiles_y = 4;
    std::size_t levels = 0;
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    std::string output_path;
    Format format = Format::text;
    bool strict = false;
};

struct Verdict {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    // whether a failure changes the exit status; hypothesis checks bind only under --strict
    bool binding = true;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string command;
    nlohmann::ordered_json config;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<Verdict> verdicts;
    std::optional<Table> table; // replaces the verdict rows in CSV output
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ----------------------------------------------------------------------------
// Argument helpers
// ----------------------------------------------------------------------------

namespace detail {

inline std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char* first = item.data();
        const char* last = first + item.size();
        while (first < last && *first == ' ') ++first;
        auto [end, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || end != last || !std::isfinite(v)) {
            throw UsageError(std::string("invalid number '") + item + "' in " + what);
        }
        out.push_back(v);
    }
    return out;
}

inline std::string num(double v) { return hadamard::detail::format_number(v); }

inline nlohmann::ordered_json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline nlohmann::ordered_json witness_json(const ConvexityVerdict& v) {
    if (!v.counterexample) return nullptr;
    return std::visit(
        [](const auto& w) -> nlohmann::ordered_json {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, CoordinatedWitness>) {
                return {{"kind", "coordinated"}, {"t", w.t}, {"s", w.s}, {"x", w.x}, {"y", w.y},
                        {"u", w.u},              {"v", w.v}, {"lhs", w.lhs}, {"rhs", w.rhs}};
            } else {
                return {{"kind", "secant"},
                        {"axis", w.axis == Axis::x ? "x" : "y"},
                        {"line", w.line},
                        {"points", {w.points[0], w.points[1], w.points[2]}},
                        {"lhs", w.lhs},
                        {"rhs", w.rhs}};
            }
        },
        *v.counterexample);
}

inline nlohmann::ordered_json verdict_json(const ConvexityVerdict& v) {
    return {{"passed", v.passed},
            {"samples_tested", v.samples_tested},
            {"worst_violation", number_or_null(v.worst_violation)},
            {"counterexample", witness_json(v)}};
}

inline Verdict convexity_verdict(std::string name, const ConvexityVerdict& v, bool binding) {
    return {std::move(name), v.passed, v.worst_violation, convexity_tolerance, 0.0, binding};
}

inline std::string tag(const char* key, double v) { return std::string("[") + key + "=" + num(v) + "]"; }

} // namespace detail

// ----------------------------------------------------------------------------
// Subcommands
// ----------------------------------------------------------------------------

inline SamplingOptions sampling_of(const RunConfig& cfg) {
    SamplingOptions s;
    s.n_samples = cfg.samples;
    s.seed = cfg.seed;
    return s;
}

inline Report run_chain(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    const ChainReport c = chain(f, rect, cfg.quadrature);
    const ConvexityVerdict hyp = check_coordinated_convexity(f, rect, sampling_of(cfg));
    const auto values = c.values();
    static constexpr const char* names[] = {"center", "midline_mean", "integral_mean", "edge_mean", "corner_mean"};
    for (std::size_t i = 0; i < 5; ++i) r.results[names[i]] = values[i];
    r.results["hypothesis"] = detail::verdict_json(hyp);
    r.verdicts.push_back(detail::convexity_verdict("hypothesis: co-ordinated convexity", hyp, cfg.strict));
    for (std::size_t i = 0; i < 4; ++i) {
        const LinkVerdict& l = c.links[i];
        r.verdicts.push_back({"L" + std::to_string(i + 1) + " <= L" + std::to_string(i + 2), l.holds, l.lhs, l.rhs,
                              l.slack, hyp.passed});
    }
    return r;
}

inline Report run_identity(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    const double lhs = identity_lhs(f, rect, cfg.quadrature);
    const double rhs = identity_rhs(f, rect, cfg.quadrature);
    const double slack = 1e-8 * (1.0 + std::fabs(lhs));
    r.results["lhs"] = lhs;
    r.results["rhs"] = rhs;
    r.results["abs_difference"] = std::fabs(lhs - rhs);
    r.verdicts.push_back({"identity", std::fabs(lhs - rhs) <= slack, lhs, rhs, slack, true});
    return r;
}

inline Report run_bounds(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    const std::vector<double> p_list = cfg.p_list.empty() ? std::vector<double>{2.0} : cfg.p_list;
    const SamplingOptions sampling = sampling_of(cfg);
    const BoundReport b = verify_bounds(f, rect, cfg.quadrature, p_list, sampling);

    r.results["lhs"] = b.lhs;
    r.results["lhs_abs"] = b.lhs_abs;
    r.results["corner_derivatives"] = b.corner_derivatives;
    r.results["bound21"] = b.bound21;
    r.results["hypothesis_q1"] = b.hypothesis21_passed;
    r.verdicts.push_back({"hypothesis" + detail::tag("q", 1.0), b.hypothesis21_passed, 0.0, 0.0, 0.0, cfg.strict});
    r.verdicts.push_back({"bound21", b.bound21_holds, b.lhs_abs, b.bound21, bound_slack, b.hypothesis21_passed});

    auto holder = nlohmann::ordered_json::array();
    for (const HolderBound& h : b.holder) {
        holder.push_back({{"p", h.p},
                          {"q", h.q},
                          {"bound22", h.bound22},
                          {"bound23", h.bound23},
                          {"hypothesis", h.hypothesis_passed}});
        r.verdicts.push_back({"hypothesis" + detail::tag("q", h.q), h.hypothesis_passed, 0.0, 0.0, 0.0, cfg.strict});
        r.verdicts.push_back(
            {"bound22" + detail::tag("p", h.p), h.bound22_holds, b.lhs_abs, h.bound22, bound_slack, h.hypothesis_passed});
        r.verdicts.push_back(
            {"bound23" + detail::tag("q", h.q), h.bound23_holds, b.lhs_abs, h.bound23, bound_slack, h.hypothesis_passed});
        r.verdicts.push_back({"ordering" + detail::tag("p", h.p), h.ordering_holds, h.bound23, h.bound22, 0.0, true});
    }
    r.results["holder"] = std::move(holder);

    auto extra = nlohmann::ordered_json::array();
    for (double q : cfg.q_list) {
        const double bound = bound_thm23(b.corner_derivatives, rect.area(), q);
        const bool hyp = check_hypothesis(f, rect, q, sampling).passed;
        const bool holds = b.lhs_abs <= bound + bound_slack;
        extra.push_back({{"q", q}, {"bound23", bound}, {"hypothesis", hyp}});
        r.verdicts.push_back({"hypothesis" + detail::tag("q", q), hyp, 0.0, 0.0, 0.0, cfg.strict});
        r.verdicts.push_back({"bound23" + detail::tag("q", q), holds, b.lhs_abs, bound, bound_slack, hyp});
    }
    if (!cfg.q_list.empty()) r.results["power_mean"] = std::move(extra);
    return r;
}

inline Report run_convexity(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    const SamplingOptions sampling = sampling_of(cfg);
    const ConvexityVerdict coordinated = check_coordinated_convexity(f, rect, sampling);
    const ConvexityVerdict partial = check_partial_convexity(f, rect, 17, sampling);
    r.results["coordinated"] = detail::verdict_json(coordinated);
    r.results["partial"] = detail::verdict_json(partial);
    r.verdicts.push_back(detail::convexity_verdict("coordinated", coordinated, true));
    r.verdicts.push_back(detail::convexity_verdict("partial", partial, true));
    for (double q : cfg.q_list) {
        const ConvexityVerdict h = check_hypothesis(f, rect, q, sampling);
        r.results["hypothesis" + detail::tag("q", q)] = detail::verdict_json(h);
        r.verdicts.push_back(detail::convexity_verdict("hypothesis" + detail::tag("q", q), h, true));
    }
    return r;
}

inline Report run_integrate(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    CubatureOptions opt;
    opt.global_samples = cfg.samples;
    opt.seed = cfg.seed;
    const CertifiedIntegral ci = composite_integrate(f, rect, cfg.tiles_x, cfg.tiles_y, cfg.quadrature, opt);
    const double reference = reference_integral(f, rect, cfg.quadrature);
    const double err = std::fabs(ci.estimate - reference);
    constexpr double slack = 1e-9;
    r.results["estimate"] = ci.estimate;
    r.results["error_bound"] = ci.error_bound;
    r.results["reference"] = reference;
    r.results["true_error"] = err;
    r.results["tiles"] = {ci.tiles_x, ci.tiles_y};
    r.results["hypothesis_checked"] = ci.hypothesis_checked;
    r.verdicts.push_back({"hypothesis" + detail::tag("q", 1.0), ci.hypothesis_checked, 0.0, 0.0, 0.0, cfg.strict});
    r.verdicts.push_back({"certificate", err <= ci.error_bound + slack, err, ci.error_bound, slack,
                          ci.hypothesis_checked});

    if (cfg.levels > 0) {
        auto rows = nlohmann::ordered_json::array();
        for (const ConvergenceRow& row : convergence_table(f, rect, cfg.levels, cfg.quadrature, reference, opt)) {
            rows.push_back({{"m", row.m},
                            {"n", row.n},
                            {"estimate", row.estimate},
                            {"error_bound", row.error_bound},
                            {"true_error", *row.true_error}});
            r.verdicts.push_back({"certificate" + detail::tag("m", static_cast<double>(row.m)),
                                  *row.true_error <= row.error_bound + slack, *row.true_error, row.error_bound, slack,
                                  row.hypothesis_checked});
        }
        r.results["convergence"] = std::move(rows);
    }
    return r;
}

inline std::vector<double> default_p_grid() { return {1.01, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0}; }

/// (p, q, 1/(p+1)^(2/p), bound22, bound23, bound23/bound22) over a p grid.
inline Table sweep_p(const Expression& f, const Rectangle& rect, const std::vector<double>& p_grid,
                     std::vector<Verdict>* verdicts = nullptr) {
    Table t;
    t.header = {"p", "q", "coefficient", "bound22", "bound23", "ratio"};
    const auto corners = corner_derivatives(f, rect);
    for (double p : p_grid) {
        const double q = conjugate_exponent(p);
        const double coefficient = holder_coefficient(p);
        const double b22 = bound_thm22(corners, rect.area(), p);
        const double b23 = bound_thm23(corners, rect.area(), q);
        const double ratio = b22 > 0.0 ? b23 / b22 : std::nan("");
        t.rows.push_back({p, q, coefficient, b22, b23, ratio});
        if (verdicts) {
            verdicts->push_back({"coefficient" + detail::tag("p", p), 0.25 < coefficient && coefficient < 1.0,
                                 coefficient, 1.0, 0.0, true});
            verdicts->push_back({"ordering" + detail::tag("p", p), b23 <= b22, b23, b22, 0.0, true});
        }
    }
    return t;
}

inline Report run_sweep(const RunConfig& cfg, const Expression& f, const Rectangle& rect) {
    Report r;
    const std::vector<double> grid = cfg.p_list.empty() ? default_p_grid() : cfg.p_list;
    Table t = sweep_p(f, rect, grid, &r.verdicts);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t k = 0; k < t.header.size(); ++k) obj[t.header[k]] = detail::number_or_null(row[k]);
        rows.push_back(std::move(obj));
    }
    r.results["rows"] = std::move(rows);
    r.table = std::move(t);
    return r;
}

// ----------------------------------------------------------------------------
// Rendering
// ----------------------------------------------------------------------------

inline nlohmann::ordered_json config_json(const RunConfig& cfg) {
    static constexpr const char* formats[] = {"text", "json", "csv"};
    return {{"function", cfg.function_text},
            {"rect", cfg.rect},
            {"panels_1d", cfg.quadrature.panels_1d},
            {"panels_2d_per_axis", cfg.quadrature.panels_2d_per_axis},
            {"nodes_per_panel", cfg.quadrature.nodes_per_panel},
            {"p", cfg.p_list},
            {"q", cfg.q_list},
            {"tiles", {cfg.tiles_x, cfg.tiles_y}},
            {"levels", cfg.levels},
            {"samples", cfg.samples},
            {"seed", cfg.seed},
            {"format", formats[static_cast<int>(cfg.format)]},
            {"strict", cfg.strict}};
}

inline std::string render_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["config"] = r.config;
    j["results"] = r.results;
    auto verdicts = nlohmann::ordered_json::array();
    for (const Verdict& v : r.verdicts) {
        verdicts.push_back({{"name", v.name},
                            {"pass", v.pass},
                            {"lhs", detail::number_or_null(v.lhs)},
                            {"rhs", detail::number_or_null(v.rhs)},
                            {"slack", detail::number_or_null(v.slack)}});
    }
    j["verdicts"] = std::move(verdicts);
    j["meta"] = {{"version", version}, {"timestamp", detail::utc_timestamp()}};
    return j.dump(2) + "\n";
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render_csv(const Report& r) {
    std::ostringstream os;
    if (r.table) {
        for (std::size_t k = 0; k < r.table->header.size(); ++k) os << (k ? "," : "") << r.table->header[k];
        os << "\n";
        for (const auto& row : r.table->rows) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                os << (k ? "," : "") << (std::isfinite(row[k]) ? detail::num(row[k]) : "");
            }
            os << "\n";
        }
        return os.str();
    }
    os << "name,pass,lhs,rhs,slack\n";
    for (const Verdict& v : r.verdicts) {
        os << csv_field(v.name) << "," << (v.pass ? "true" : "false") << "," << detail::num(v.lhs) << ","
           << detail::num(v.rhs) << "," << detail::num(v.slack) << "\n";
    }
    return os.str();
}

namespace detail {

inline std::string text_value(const nlohmann::ordered_json& v) {
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(10) << v.get<double>();
        return os.str();
    }
    if (v.is_null()) return "-";
    return v.dump();
}

inline void render_text_object(std::ostream& os, const nlohmann::ordered_json& obj, const std::string& indent) {
    for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) {
            os << indent << key << ":\n";
            render_text_object(os, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            os << indent << key << ":\n";
            for (const auto& row : value) {
                os << indent << " ";
                for (const auto& [k, x] : row.items()) os << " " << k << "=" << text_value(x);
                os << "\n";
            }
        } else if (value.is_array()) {
            os << indent << key << ":";
            for (const auto& x : value) os << " " << text_value(x);
            os << "\n";
        } else {
            os << indent << std::left << std::setw(20) << key << " " << text_value(value) << "\n";
        }
    }
}

} // namespace detail

inline std::string render_text(const Report& r) {
    std::ostringstream os;
    os << r.command << ": f(x,y) = " << r.config.value("function", "") << " on ["
       << detail::num(r.config["rect"][0].get<double>()) << "," << detail::num(r.config["rect"][1].get<double>())
       << "]x[" << detail::num(r.config["rect"][2].get<double>()) << ","
       << detail::num(r.config["rect"][3].get<double>()) << "]\n";
    detail::render_text_object(os, r.results, "  ");
    if (r.table) {
        os << " ";
        for (const auto& h : r.table->header) os << " " << std::setw(14) << h;
        os << "\n";
        for (const auto& row : r.table->rows) {
            os << " ";
            for (double v : row) os << " " << std::setw(14) << std::setprecision(8) << v;
            os << "\n";
        }
    }
    for (const Verdict& v : r.verdicts) {
        os << "  " << (v.pass ? "PASS" : (v.binding ? "FAIL" : "WARN")) << "  " << v.name;
        if (v.lhs != 0.0 || v.rhs != 0.0) {
            os << "  (" << std::setprecision(10) << v.lhs << " vs " << v.rhs << ")";
        }
        os << "\n";
    }
    return os.str();
}

inline std::string render(const Report& r, Format format) {
    switch (format) {
    case Format::json: return render_json(r);
    case Format::csv: return render_csv(r);
    default: return render_text(r);
    }
}

inline int exit_status(const Report& r) {
    for (const Verdict& v : r.verdicts) {
        if (v.binding && !v.pass) return exit_code::check_failed;
    }
    return exit_code::ok;
}

// ----------------------------------------------------------------------------
// Entry point
// ----------------------------------------------------------------------------

/// Runs an already-validated configuration.
inline Report execute(const RunConfig& cfg) {
    const Expression f = parse(cfg.function_text);
    const Rectangle rect(cfg.rect[0], cfg.rect[1], cfg.rect[2], cfg.rect[3]);
    Report r;
    if (cfg.subcommand == "chain") r = run_chain(cfg, f, rect);
    else if (cfg.subcommand == "identity") r = run_identity(cfg, f, rect);
    else if (cfg.subcommand == "bounds") r = run_bounds(cfg, f, rect);
    else if (cfg.subcommand == "convexity") r = run_convexity(cfg, f, rect);
    else if (cfg.subcommand == "integrate") r = run_integrate(cfg, f, rect);
    else if (cfg.subcommand == "sweep-p") r = run_sweep(cfg, f, rect);
    else throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
    r.command = cfg.subcommand;
    r.config = config_json(cfg);
    return r;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hermite-Hadamard inequalities for co-ordinated convex functions on rectangles", "hadamard"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    RunConfig cfg;
    std::string rect_text = "0,1,0,1";
    std::string tiles_text = "4,4";
    std::string p_text;
    std::string q_text;
    std::string format_text = "text";
    std::size_t panels = 0;
    std::size_t nodes = 0;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"chain", "evaluate the five-term chain from center value to corner average"},
        {"identity", "compare both sides of the corner/edge/mean identity"},
        {"bounds", "check the three corner-derivative bounds and their ordering"},
        {"convexity", "sample-check co-ordinated and partial-mapping convexity"},
        {"integrate", "corrected-trapezoid cubature with an error certificate"},
        {"sweep-p", "tabulate the Hoelder and power-mean bounds over p"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("-f,--function", cfg.function_text, "function of x and y")->required();
        sub->add_option("--rect", rect_text, "rectangle a,b,c,d")->capture_default_str();
        sub->add_option("-p", p_text, "comma-separated Hoelder exponents p > 1");
        sub->add_option("-q", q_text, "comma-separated power-mean exponents q >= 1");
        sub->add_option("--tiles", tiles_text, "cubature tiles m,n")->capture_default_str();
        sub->add_option("--levels", cfg.levels, "convergence levels m = n = 2^k, k < levels");
        sub->add_option("--panels", panels, "panels per axis for every integral");
        sub->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel");
        sub->add_option("--samples", cfg.samples, "convexity samples")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
        sub->add_option("-o", cfg.output_path, "write the report here instead of standard output");
        sub->add_option("--format", format_text, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_flag("--strict", cfg.strict, "hypothesis failures count as failed checks");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        const auto rect = detail::parse_number_list(rect_text, "--rect");
        if (rect.size() != 4) throw UsageError("--rect expects four numbers a,b,c,d");
        std::copy(rect.begin(), rect.end(), cfg.rect.begin());
        const auto tiles = detail::parse_number_list(tiles_text, "--tiles");
        if (tiles.size() != 2 || tiles[0] < 1 || tiles[1] < 1 || std::floor(tiles[0]) != tiles[0] ||
            std::floor(tiles[1]) != tiles[1]) {
            throw UsageError("--tiles expects two positive integers m,n");
        }
        cfg.tiles_x = static_cast<std::size_t>(tiles[0]);
        cfg.tiles_y = static_cast<std::size_t>(tiles[1]);
        if (!p_text.empty()) cfg.p_list = detail::parse_number_list(p_text, "-p");
        if (!q_text.empty()) cfg.q_list = detail::parse_number_list(q_text, "-q");
        for (double p : cfg.p_list) {
            if (!(p > 1.0)) throw UsageError("every p must exceed 1, got " + detail::num(p));
        }
        for (double q : cfg.q_list) {
            if (!(q >= 1.0)) throw UsageError("every q must be at least 1, got " + detail::num(q));
        }
        if (panels > 0) cfg.quadrature.panels_1d = cfg.quadrature.panels_2d_per_axis = panels;
        if (nodes > 0) cfg.quadrature.nodes_per_panel = nodes;
        if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
        cfg.format = format_text == "json" ? Format::json : format_text == "csv" ? Format::csv : Format::text;

        const Report report = execute(cfg);
        const std::string rendered = render(report, cfg.format);
        if (cfg.output_path.empty()) {
            out << rendered;
        } else {
            std::ofstream file(cfg.output_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open '" << cfg.output_path << "' for writing\n";
                return exit_code::runtime;
            }
            file << rendered;
        }
        return exit_status(report);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n  " << cfg.function_text << "\n  "
            << std::string(std::min(e.position(), cfg.function_text.size()), ' ') << "^\n";
        return exit_code::usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const EvaluationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::runtime;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hadamard");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace hadamard::cli
