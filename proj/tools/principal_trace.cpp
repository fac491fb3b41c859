// Experiment runner: every engine behind one binary with flat-config
// reports.  Exit codes: 0 success, 2 invalid config or parse failure,
// 3 resource cap exceeded, 4 output unwritable.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "principal/hardy.hpp"
#include "principal/landau.hpp"
#include "principal/qpoly.hpp"
#include "principal/switch_function.hpp"
#include "principal/trace_engine.hpp"

namespace {

using namespace principal;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm g{};
    gmtime_r(&t, &g);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &g);
    return buf;
}

struct Report {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }

    std::string csv() const {
        std::string s;
        for (const auto& [k, v] : meta) s += "# " + k + "=" + v + "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            s += (i ? "," : "") + columns[i];
        s += "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
            s += "\n";
        }
        return s;
    }

    std::string json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        j["columns"] = columns;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json r;
            for (std::size_t i = 0; i < row.size(); ++i) r[columns[i]] = row[i];
            j["rows"].push_back(std::move(r));
        }
        return j.dump(2) + "\n";
    }
};

// compute first, then write-to-temp + atomic rename: no partial reports
void write_report(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw WriteError("cannot open output file: " + tmp);
        out << body;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw WriteError("write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw WriteError("cannot move report into place: " + path);
    }
}

// ---- options -------------------------------------------------------------

struct Options {
    std::string config, out, format = "csv";
    // symbol: heaviside uses a; linear_ramp uses c,d; erf_ramp uses a
    // (center) and d (width)
    std::string symbol = "heaviside", a = "0", c = "-1", d = "1", b = "2";
    std::string M = "256", window, threads = "1", precision_bits = "0";
    std::string word_n = "1";
    bool extrapolate = false;
    std::string p, q, ordering = "left_normal";
    std::string region = "square", multiplier = "-1";
    std::string tolerance = "5e-3";
    std::string f, g;
    std::string level = "0";
    bool cumulative = false;
    std::string count = "200";
    std::string shift = "1";
};

// config-file keys mirror the long flag names; flags take precedence
struct FlagRegistry {
    struct Entry {
        std::string key;
        CLI::Option* opt;
        std::string* str_target;
        bool* bool_target;
    };
    CLI::App* cmd = nullptr;
    std::vector<Entry> entries;

    CLI::Option* add(const std::string& name, std::string& target, const std::string& desc) {
        auto* o = cmd->add_option("--" + name, target, desc);
        entries.push_back({name, o, &target, nullptr});
        return o;
    }
    CLI::Option* add_flag(const std::string& name, bool& target, const std::string& desc) {
        auto* o = cmd->add_flag("--" + name, target, desc);
        entries.push_back({name, o, nullptr, &target});
        return o;
    }
};

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, FlagRegistry& reg) {
    for (const auto& [key, value] : kv) {
        const FlagRegistry::Entry* found = nullptr;
        for (const auto& e : reg.entries)
            if (e.key == key) found = &e;
        if (!found) throw ConfigError("unknown config key: " + key);
        if (found->opt->count() > 0) continue;  // flag overrides config
        if (found->str_target) {
            *found->str_target = value;
        } else {
            if (value == "true" || value == "1" || value == "yes" || value == "on")
                *found->bool_target = true;
            else if (value == "false" || value == "0" || value == "no" || value == "off")
                *found->bool_target = false;
            else
                throw ConfigError("invalid boolean for " + key + ": " + value);
        }
    }
}

long to_long(const std::string& key, const std::string& v, long lo, long hi) {
    char* end = nullptr;
    errno = 0;
    long x = std::strtol(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw ConfigError("invalid integer for " + key + ": '" + v + "'");
    if (x < lo || x > hi)
        throw ConfigError(key + " out of range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]: " + v);
    return x;
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    errno = 0;
    double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0' || !std::isfinite(x))
        throw ConfigError("invalid number for " + key + ": '" + v + "'");
    return x;
}

const std::string& require(const std::string& v, const std::string& name) {
    if (v.empty()) throw ConfigError("missing required option --" + name);
    return v;
}

SwitchFunction make_profile(const Options& o) {
    if (o.symbol == "heaviside") return SwitchFunction::heaviside(to_double("a", o.a));
    if (o.symbol == "linear_ramp")
        return SwitchFunction::linear_ramp(to_double("c", o.c), to_double("d", o.d));
    if (o.symbol == "erf_ramp")
        return SwitchFunction::erf_ramp(to_double("a", o.a), to_double("d", o.d));
    throw ConfigError("unknown symbol kind: '" + o.symbol +
                      "' (expected heaviside|linear_ramp|erf_ramp)");
}

struct WindowPolicy {
    bool full = false;
    int fixed = 0;  // 0 = default half window
};

WindowPolicy parse_window(const Options& o) {
    if (o.window.empty()) return {};
    if (o.window == "full") return {true, 0};
    return {false, static_cast<int>(to_long("window", o.window, 1, 1L << 30))};
}

int row_window(const WindowPolicy& w, int Mi, int Mmax) {
    if (w.full) return Mi;
    if (w.fixed > 0) return std::max(1L, static_cast<long>(w.fixed) * Mi / Mmax);
    return std::max(1, Mi / 2);
}

// truncation sizes {64, 128, 256, ..., Mmax}
std::vector<int> sweep_sizes(int Mmax) {
    std::vector<int> v;
    for (int m = 64; m < Mmax; m *= 2) v.push_back(m);
    if (v.empty() || v.back() != Mmax) v.push_back(Mmax);
    return v;
}

void add_symbol_meta(Report& rep, const Options& o) {
    rep.add_meta("symbol", o.symbol);
    if (o.symbol == "heaviside") rep.add_meta("a", fmt17(to_double("a", o.a)));
    if (o.symbol == "linear_ramp") {
        rep.add_meta("c", fmt17(to_double("c", o.c)));
        rep.add_meta("d", fmt17(to_double("d", o.d)));
    }
    if (o.symbol == "erf_ramp") {
        rep.add_meta("center", fmt17(to_double("a", o.a)));
        rep.add_meta("width", fmt17(to_double("d", o.d)));
    }
}

const std::complex<double> kTwoPiI(0.0, 2.0 * M_PI);

std::string window_desc(const WindowPolicy& w) {
    if (w.full) return "full";
    if (w.fixed > 0) return std::to_string(w.fixed);
    return "half";
}

// shared convergence-table core for trace / word / landau
void sweep_table(Report& rep, const std::vector<WeightedWord>& plus,
                 const std::vector<WeightedWord>& minus, const ToeplitzMatrix& A,
                 const ToeplitzMatrix& B, int Mmax, const WindowPolicy& w, double target,
                 bool with_error, bool extrapolate) {
    std::vector<std::pair<int, std::complex<double>>> samples;
    for (int Mi : sweep_sizes(Mmax)) {
        TraceReport r = windowed_trace(plus, minus, A, B,
                                       TruncationScheme(Mi, row_window(w, Mi, Mmax)));
        std::complex<double> qv = kTwoPiI * r.value;
        std::vector<std::string> row{std::to_string(Mi), fmt17(r.value.real()),
                                     fmt17(r.value.imag()), fmt17(qv.real())};
        if (with_error) row.push_back(fmt17(std::abs(qv - target)));
        row.push_back(fmt17(r.tail_estimate));
        rep.rows.push_back(std::move(row));
        samples.emplace_back(Mi, r.value);
    }
    rep.columns = {"M", "value_re", "value_im", "2pi_i_value"};
    if (with_error) rep.columns.push_back("abs_error_vs_1");
    rep.columns.push_back("tail_estimate");
    if (extrapolate) {
        if (samples.size() < 2)
            throw ConfigError("extrapolation needs at least two truncation sizes");
        std::complex<double> ve = richardson_extrapolate(samples);
        std::complex<double> qe = kTwoPiI * ve;
        rep.add_meta("extrapolated_value_re", fmt17(ve.real()));
        rep.add_meta("extrapolated_value_im", fmt17(ve.imag()));
        rep.add_meta("extrapolated_2pi_i_value", fmt17(qe.real()));
        if (with_error) rep.add_meta("extrapolated_abs_error", fmt17(std::abs(qe - target)));
    }
}

// ---- subcommands ----------------------------------------------------------

Report run_trace(const Options& o) {
    SwitchFunction profile = make_profile(o);
    double b = to_double("b", o.b);
    int Mmax = static_cast<int>(to_long("M", o.M, 1, 1L << 30));
    int n = static_cast<int>(to_long("word-n", o.word_n, 1, 64));
    int threads = static_cast<int>(to_long("threads", o.threads, 1, 256));
    int bits = static_cast<int>(to_long("precision-bits", o.precision_bits, 0, 65536));
    WindowPolicy w = parse_window(o);

    ToeplitzMatrix A = build_toeplitz({profile, Axis::first_coordinate, b}, Mmax, bits, threads);
    ToeplitzMatrix B = build_toeplitz({profile, Axis::second_coordinate, b}, Mmax, bits, threads);

    std::string ab, ba;
    for (int i = 0; i < n; ++i) {
        ab += "AB";
        ba += "BA";
    }
    std::vector<WeightedWord> plus{{OperatorWord(ab), 1.0}}, minus{{OperatorWord(ba), 1.0}};

    Report rep;
    rep.add_meta("subcommand", "trace");
    add_symbol_meta(rep, o);
    rep.add_meta("b", fmt17(b));
    rep.add_meta("M", std::to_string(Mmax));
    rep.add_meta("window", window_desc(w));
    rep.add_meta("word_n", std::to_string(n));
    rep.add_meta("target", fmt17(1.0 / n));
    rep.add_meta("basis", A.basis_tag.str());
    if (w.full) {
        const char* msg =
            "full window (N = M) sums the whole diagonal of a finite commutator, "
            "which is exactly zero by cyclicity; use N < M for the windowed value";
        rep.add_meta("warning", msg);
        std::fprintf(stderr, "warning: %s\n", msg);
    }
    sweep_table(rep, plus, minus, A, B, Mmax, w, 1.0 / n, true, o.extrapolate);
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_word(const Options& o) {
    QPolynomial2 p = parse_qpolynomial(require(o.p, "p"));
    QPolynomial2 q = parse_qpolynomial(require(o.q, "q"));
    WordOrdering ordering = ordering_from_name(o.ordering);
    SwitchFunction profile = make_profile(o);
    double b = to_double("b", o.b);
    int Mmax = static_cast<int>(to_long("M", o.M, 1, 1L << 30));
    int threads = static_cast<int>(to_long("threads", o.threads, 1, 256));
    int bits = static_cast<int>(to_long("precision-bits", o.precision_bits, 0, 65536));
    WindowPolicy w = parse_window(o);

    ToeplitzMatrix A = build_toeplitz({profile, Axis::first_coordinate, b}, Mmax, bits, threads);
    ToeplitzMatrix B = build_toeplitz({profile, Axis::second_coordinate, b}, Mmax, bits, threads);

    Report rep;
    rep.add_meta("subcommand", "word");
    rep.add_meta("p", p.str());
    rep.add_meta("q", q.str());
    rep.add_meta("ordering", o.ordering);
    add_symbol_meta(rep, o);
    rep.add_meta("b", fmt17(b));
    rep.add_meta("M", std::to_string(Mmax));
    rep.add_meta("window", window_desc(w));

    std::vector<std::pair<int, std::complex<double>>> samples;
    for (int Mi : sweep_sizes(Mmax)) {
        TraceReport r = word_trace_for_polynomials(
            p, q, ordering, A, B, TruncationScheme(Mi, row_window(w, Mi, Mmax)));
        std::complex<double> qv = kTwoPiI * r.value;
        rep.rows.push_back({std::to_string(Mi), fmt17(r.value.real()), fmt17(r.value.imag()),
                            fmt17(qv.real()), fmt17(r.tail_estimate)});
        samples.emplace_back(Mi, r.value);
    }
    rep.columns = {"M", "value_re", "value_im", "2pi_i_value", "tail_estimate"};
    if (o.extrapolate) {
        if (samples.size() < 2)
            throw ConfigError("extrapolation needs at least two truncation sizes");
        std::complex<double> ve = richardson_extrapolate(samples);
        rep.add_meta("extrapolated_value_re", fmt17(ve.real()));
        rep.add_meta("extrapolated_value_im", fmt17(ve.imag()));
        rep.add_meta("extrapolated_2pi_i_value", fmt17((kTwoPiI * ve).real()));
    }
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Region parse_region(const std::string& r) {
    if (r == "square" || r == "unit_square") return Region::unit_square;
    if (r == "disc" || r == "unit_disc") return Region::unit_disc;
    throw ConfigError("unknown region: '" + r + "' (expected square|disc)");
}

Report run_chhp(const Options& o) {
    QPolynomial2 p = parse_qpolynomial(require(o.p, "p"));
    QPolynomial2 q = parse_qpolynomial(require(o.q, "q"));
    Region region = parse_region(o.region);
    int mult = static_cast<int>(to_long("multiplier", o.multiplier, -(1L << 20), 1L << 20));
    TracePrediction pred = chhp_prediction(PrincipalFunction{mult, region}, p, q);
    if (region == Region::unit_square && !pred.direct.is_zero())
        throw std::logic_error("square-region prediction produced pi content");

    Report rep;
    rep.add_meta("subcommand", "chhp");
    rep.add_meta("p", p.str());
    rep.add_meta("q", q.str());
    rep.add_meta("region", region == Region::unit_square ? "square" : "disc");
    rep.add_meta("multiplier", std::to_string(mult));
    if (region == Region::unit_square)
        rep.add_meta("pi_content", "none: exact rational multiple of 1/(2 pi i)");
    rep.columns = {"direct", "inv_2pi_i_coeff", "value_re", "value_im"};
    std::complex<double> v = pred.approx();
    rep.rows.push_back(
        {pred.direct.str(), pred.inv_2pi_i_coeff.str(), fmt17(v.real()), fmt17(v.imag())});
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_compare(const Options& o) {
    QPolynomial2 p = parse_qpolynomial(require(o.p, "p"));
    QPolynomial2 q = parse_qpolynomial(require(o.q, "q"));
    WordOrdering ordering = ordering_from_name(o.ordering);
    SwitchFunction profile = make_profile(o);
    double b = to_double("b", o.b);
    double tol = to_double("tolerance", o.tolerance);
    int Mmax = static_cast<int>(to_long("M", o.M, 1, 1L << 30));
    int threads = static_cast<int>(to_long("threads", o.threads, 1, 256));
    int bits = static_cast<int>(to_long("precision-bits", o.precision_bits, 0, 65536));
    WindowPolicy w = parse_window(o);
    TruncationScheme scheme(Mmax, row_window(w, Mmax, Mmax));

    ToeplitzMatrix A = build_toeplitz({profile, Axis::first_coordinate, b}, Mmax, bits, threads);
    ToeplitzMatrix B = build_toeplitz({profile, Axis::second_coordinate, b}, Mmax, bits, threads);
    TraceReport numeric = word_trace_for_polynomials(p, q, ordering, A, B, scheme);

    // exact side: the square-region principal-function prediction
    TracePrediction pred = chhp_prediction(PrincipalFunction{-1, Region::unit_square}, p, q);
    std::complex<double> qv = kTwoPiI * numeric.value;
    double diff = std::abs(qv - pred.inv_2pi_i_coeff.approx());

    Report rep;
    rep.add_meta("subcommand", "compare");
    rep.add_meta("p", p.str());
    rep.add_meta("q", q.str());
    rep.add_meta("ordering", o.ordering);
    add_symbol_meta(rep, o);
    rep.add_meta("b", fmt17(b));
    rep.add_meta("tolerance", fmt17(tol));
    rep.columns = {"M",          "N",           "numeric_re",     "numeric_im",
                   "numeric_2pi_i", "exact_coeff", "abs_difference", "verdict"};
    rep.rows.push_back({std::to_string(scheme.M), std::to_string(scheme.N),
                        fmt17(numeric.value.real()), fmt17(numeric.value.imag()),
                        fmt17(qv.real()), pred.inv_2pi_i_coeff.str(), fmt17(diff),
                        diff <= tol ? "pass" : "fail"});
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_hardy(const Options& o) {
    LaurentSymbol f = LaurentSymbol::parse(require(o.f, "f"));
    LaurentSymbol g = LaurentSymbol::parse(require(o.g, "g"));
    HeltonHoweResult res = helton_howe_check(f, g);

    Report rep;
    rep.add_meta("subcommand", "hardy");
    rep.add_meta("f", f.str());
    rep.add_meta("g", g.str());
    rep.add_meta("convention", "Tr[T_conj(z), T_z] = +1");
    rep.columns = {"lhs_trace", "rhs_disc_integral", "equal"};
    rep.rows.push_back({res.lhs.str(), res.rhs.str(), res.equal ? "true" : "false"});
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_landau(const Options& o) {
    SwitchFunction profile = make_profile(o);
    double b = to_double("b", o.b);
    int level = static_cast<int>(to_long("level", o.level, 0, 1));
    int Mmax = static_cast<int>(to_long("M", o.M, 1, 1L << 30));
    int threads = static_cast<int>(to_long("threads", o.threads, 1, 256));
    int bits = static_cast<int>(to_long("precision-bits", o.precision_bits, 0, 65536));
    WindowPolicy w = parse_window(o);

    PlanarSymbol sx{profile, Axis::first_coordinate, b};
    PlanarSymbol sy{profile, Axis::second_coordinate, b};
    ToeplitzMatrix A = o.cumulative ? cumulative_matrix(level, sx, Mmax, bits, threads)
                                    : build_level_toeplitz(level, sx, Mmax, bits, threads);
    ToeplitzMatrix B = o.cumulative ? cumulative_matrix(level, sy, Mmax, bits, threads)
                                    : build_level_toeplitz(level, sy, Mmax, bits, threads);
    double target = o.cumulative ? level + 1.0 : 1.0;

    Report rep;
    rep.add_meta("subcommand", "landau");
    rep.add_meta("level", std::to_string(level));
    rep.add_meta("cumulative", o.cumulative ? "true" : "false");
    rep.add_meta("basis", A.basis_tag.str());
    if (o.cumulative && level >= 1) {
        std::string order;
        for (int pidx = 0; pidx < std::min(Mmax, 8); ++pidx) {
            CumulativeMember m = cumulative_member(pidx);
            order += "(" + std::to_string(m.level) + " " + std::to_string(m.member) + ")";
        }
        rep.add_meta("basis_order", order + "...");
        rep.add_meta("basis_order_rule",
                     "p=0 -> (1 -1); odd p -> (0 (p-1)/2); even p -> (1 p/2-1)");
    }
    add_symbol_meta(rep, o);
    rep.add_meta("b", fmt17(b));
    rep.add_meta("M", std::to_string(Mmax));
    rep.add_meta("window", window_desc(w));
    rep.add_meta("target", fmt17(target));

    std::vector<WeightedWord> plus{{OperatorWord("AB"), 1.0}}, minus{{OperatorWord("BA"), 1.0}};
    sweep_table(rep, plus, minus, A, B, Mmax, w, target, true, o.extrapolate);
    // the error column compares against the filled-level count
    rep.columns[4] = "abs_error_vs_target";
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_shift_weights(const Options& o) {
    int count = static_cast<int>(to_long("count", o.count, 1, 10'000'000));
    std::vector<double> weights = shift_weights(count);

    Report rep;
    rep.add_meta("subcommand", "shift-weights");
    rep.add_meta("count", std::to_string(count));
    rep.add_meta("index_certificate", std::to_string(shift_index_certificate(weights)));
    rep.columns = {"n", "weight"};
    for (int n = 0; n < count; ++n)
        rep.rows.push_back({std::to_string(n), fmt17(weights[n])});
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

Report run_switch_check(const Options& o) {
    SwitchFunction profile = make_profile(o);
    double shift = to_double("shift", o.shift);
    double integral = switch_integral_check(profile, shift);

    Report rep;
    rep.add_meta("subcommand", "switch-check");
    add_symbol_meta(rep, o);
    rep.columns = {"shift", "integral", "expected", "abs_error"};
    rep.rows.push_back(
        {fmt17(shift), fmt17(integral), fmt17(shift), fmt17(std::abs(integral - shift))});
    rep.add_meta("timestamp", iso_timestamp());
    return rep;
}

// ---- wiring ----------------------------------------------------------------

struct Sub {
    CLI::App* cmd = nullptr;
    Options opt;
    FlagRegistry reg;
    Report (*run)(const Options&) = nullptr;
};

void add_io_flags(Sub& s) {
    s.reg.cmd = s.cmd;
    s.reg.add("config", s.opt.config, "flat key=value config file; flags override");
    s.reg.add("out", s.opt.out, "report path (default: stdout)");
    s.reg.add("format", s.opt.format, "csv|json (default csv)");
}

void add_symbol_flags(Sub& s) {
    s.reg.add("symbol", s.opt.symbol, "heaviside|linear_ramp|erf_ramp");
    s.reg.add("a", s.opt.a, "heaviside jump / erf_ramp center");
    s.reg.add("c", s.opt.c, "linear_ramp lower knot");
    s.reg.add("d", s.opt.d, "linear_ramp upper knot / erf_ramp width");
    s.reg.add("b", s.opt.b, "magnetic field strength (default 2)");
}

void add_scheme_flags(Sub& s) {
    s.reg.add("M", s.opt.M, "outer truncation size (default 256)");
    s.reg.add("window", s.opt.window, "trace window: integer, or 'full' (default M/2)");
    s.reg.add("threads", s.opt.threads, "worker thread cap for entry assembly");
    s.reg.add("precision-bits", s.opt.precision_bits, "extra working precision (bits)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized commutator traces of planar switch symbols: "
                 "numeric truncations vs exact principal-function predictions"};
    app.require_subcommand(1);

    Sub trace, word, chhp, compare, hardy, landau, shiftw, switchc;

    trace.cmd = app.add_subcommand("trace", "windowed commutator trace convergence table");
    add_io_flags(trace);
    add_symbol_flags(trace);
    add_scheme_flags(trace);
    trace.reg.add("word-n", trace.opt.word_n, "trace of (AB)^n - (BA)^n (default 1)");
    trace.reg.add_flag("extrapolate", trace.opt.extrapolate, "geometric-decay extrapolation");
    trace.run = run_trace;

    word.cmd = app.add_subcommand("word", "windowed trace of [p(A,B), q(A,B)]");
    add_io_flags(word);
    add_symbol_flags(word);
    add_scheme_flags(word);
    word.reg.add("p", word.opt.p, "first polynomial, e.g. 'x^2*y'");
    word.reg.add("q", word.opt.q, "second polynomial");
    word.reg.add("ordering", word.opt.ordering, "left_normal|right_normal");
    word.reg.add_flag("extrapolate", word.opt.extrapolate, "geometric-decay extrapolation");
    word.run = run_word;

    chhp.cmd = app.add_subcommand("chhp", "exact principal-function trace prediction");
    add_io_flags(chhp);
    chhp.reg.add("p", chhp.opt.p, "first polynomial");
    chhp.reg.add("q", chhp.opt.q, "second polynomial");
    chhp.reg.add("region", chhp.opt.region, "square|disc");
    chhp.reg.add("multiplier", chhp.opt.multiplier, "principal-function height (default -1)");
    chhp.run = run_chhp;

    compare.cmd = app.add_subcommand("compare", "numeric trace vs exact prediction");
    add_io_flags(compare);
    add_symbol_flags(compare);
    add_scheme_flags(compare);
    compare.reg.add("p", compare.opt.p, "first polynomial");
    compare.reg.add("q", compare.opt.q, "second polynomial");
    compare.reg.add("ordering", compare.opt.ordering, "left_normal|right_normal");
    compare.reg.add("tolerance", compare.opt.tolerance, "pass/fail threshold (default 5e-3)");
    compare.run = run_compare;

    hardy.cmd = app.add_subcommand("hardy", "exact Toeplitz commutator trace identity");
    add_io_flags(hardy);
    hardy.reg.add("f", hardy.opt.f, "Laurent symbol, e.g. '-1:1' or '1:1, 2:1/2'");
    hardy.reg.add("g", hardy.opt.g, "Laurent symbol");
    hardy.run = run_hardy;

    landau.cmd = app.add_subcommand("landau", "higher-level / cumulative trace table");
    add_io_flags(landau);
    add_symbol_flags(landau);
    add_scheme_flags(landau);
    landau.reg.add("level", landau.opt.level, "eigenspace index (0 or 1)");
    landau.reg.add_flag("cumulative", landau.opt.cumulative,
                        "interleaved direct sum of levels 0..level");
    landau.reg.add_flag("extrapolate", landau.opt.extrapolate,
                        "geometric-decay extrapolation");
    landau.run = run_landau;

    shiftw.cmd = app.add_subcommand("shift-weights", "weighted-shift matrix elements");
    add_io_flags(shiftw);
    shiftw.reg.add("count", shiftw.opt.count, "number of weights (default 200)");
    shiftw.run = run_shift_weights;

    switchc.cmd = app.add_subcommand("switch-check", "translation integral identity");
    add_io_flags(switchc);
    add_symbol_flags(switchc);
    switchc.reg.add("shift", switchc.opt.shift, "translation amount (default 1)");
    switchc.run = run_switch_check;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Sub* subs[] = {&trace, &word, &chhp, &compare, &hardy, &landau, &shiftw, &switchc};
    Sub* active = nullptr;
    for (Sub* s : subs)
        if (app.got_subcommand(s->cmd)) active = s;
    if (!active) {
        std::fprintf(stderr, "error: no subcommand selected\n");
        return 2;
    }

    try {
        if (!active->opt.config.empty())
            apply_config(read_config(active->opt.config), active->reg);
        if (active->opt.format != "csv" && active->opt.format != "json")
            throw ConfigError("unknown format: '" + active->opt.format +
                              "' (expected csv|json)");
        Report rep = active->run(active->opt);
        write_report(active->opt.out,
                     active->opt.format == "csv" ? rep.csv() : rep.json());
    } catch (const WriteError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "error: resource cap exceeded: %s\n", e.what());
        return 3;
    } catch (const principal::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
