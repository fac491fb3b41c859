#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string work_dir() {
    static std::string dir = [] {
        std::string d = "/tmp/principal_cli_test_" + std::to_string(::getpid());
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr,
            const std::string& env_prefix = "") {
    std::string so = work_dir() + "/stdout.txt", se = work_dir() + "/stderr.txt";
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + PRINCIPAL_CLI_PATH + " " +
                      args + " >" + so + " 2>" + se;
    int rc = std::system(cmd.c_str());
    if (out) *out = read_file(so);
    if (err) *err = read_file(se);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

struct Table {
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    const std::string& cell(std::size_t row, const std::string& col) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == col) return rows.at(row).at(i);
        throw std::out_of_range("no column " + col);
    }
    double num(std::size_t row, const std::string& col) const {
        return std::stod(cell(row, col));
    }
};

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Table parse_csv(const std::string& text) {
    Table t;
    bool header_seen = false;
    for (const std::string& line : split(text, '\n')) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            std::size_t eq = line.find('=');
            REQUIRE(eq != std::string::npos);
            t.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            t.columns = split(line, ',');
            header_seen = true;
        } else {
            t.rows.push_back(split(line, ','));
        }
    }
    return t;
}

Table csv_report(const std::string& args) {
    std::string path = work_dir() + "/report.csv";
    std::filesystem::remove(path);
    int code = run_cli(args + " --out " + path);
    REQUIRE(code == 0);
    return parse_csv(read_file(path));
}

std::string strip_timestamp(const std::string& text) {
    std::string out;
    for (const std::string& line : split(text, '\n'))
        if (line.rfind("# timestamp=", 0) != 0 && line.find("\"timestamp\"") == std::string::npos)
            out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("trace defaults produce a quantized convergence table") {
    Table t = csv_report("trace");
    CHECK(t.meta.at("subcommand") == "trace");
    CHECK(t.meta.at("symbol") == "heaviside");
    CHECK(t.meta.at("b") == "2");
    CHECK(t.meta.at("M") == "256");
    CHECK(t.meta.at("window") == "half");
    CHECK(t.meta.count("timestamp") == 1);
    CHECK(t.columns == std::vector<std::string>{"M", "value_re", "value_im", "2pi_i_value",
                                                "abs_error_vs_1", "tail_estimate"});
    REQUIRE(t.rows.size() == 3);  // 64, 128, 256
    CHECK(t.cell(0, "M") == "64");
    CHECK(t.cell(2, "M") == "256");
    CHECK(t.num(2, "abs_error_vs_1") <= 1e-3);
    // convergence visible across the sweep
    CHECK(t.num(0, "abs_error_vs_1") > t.num(1, "abs_error_vs_1"));
    CHECK(t.num(1, "abs_error_vs_1") > t.num(2, "abs_error_vs_1"));
}

TEST_CASE("trace word powers hit fractional values") {
    Table t = csv_report("trace --word-n 3");
    CHECK(t.meta.at("word_n") == "3");
    double q = t.num(t.rows.size() - 1, "2pi_i_value");
    CHECK(std::abs(q - 1.0 / 3.0) <= 2e-3);
    CHECK(t.num(t.rows.size() - 1, "abs_error_vs_1") <= 2e-3);
}

TEST_CASE("full window reports the cyclicity trap") {
    std::string path = work_dir() + "/full.csv";
    std::string err;
    int code = run_cli("trace --M 64 --window full --out " + path, nullptr, &err);
    CHECK(code == 0);
    CHECK(err.find("cyclicity") != std::string::npos);
    Table t = parse_csv(read_file(path));
    CHECK(t.meta.at("window") == "full");
    CHECK(t.meta.count("warning") == 1);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(std::abs(t.num(r, "value_re")) <= 1e-12);
        CHECK(std::abs(t.num(r, "value_im")) <= 1e-12);
    }
}

TEST_CASE("extrapolation summary appears on request") {
    Table t = csv_report("trace --M 256 --extrapolate");
    double last = t.num(t.rows.size() - 1, "abs_error_vs_1");
    double extrap = std::stod(t.meta.at("extrapolated_abs_error"));
    CHECK(extrap <= last);
}

TEST_CASE("chhp emits exact rational predictions") {
    Table t = csv_report("chhp --p x --q y");
    CHECK(t.meta.at("region") == "square");
    CHECK(t.meta.count("pi_content") == 1);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.cell(0, "direct") == "0");
    CHECK(t.cell(0, "inv_2pi_i_coeff") == "1");
    CHECK(t.num(0, "value_re") == 0.0);
    CHECK(std::abs(t.num(0, "value_im") - (-1.0 / (2.0 * M_PI))) <= 1e-15);

    Table t2 = csv_report("chhp --p x^5*y^4 --q y");
    CHECK(t2.cell(0, "inv_2pi_i_coeff") == "1/5");

    Table t3 = csv_report("chhp --p x --q x");
    CHECK(t3.cell(0, "inv_2pi_i_coeff") == "0");
    CHECK(t3.num(0, "value_re") == 0.0);
    CHECK(t3.num(0, "value_im") == 0.0);

    Table t4 = csv_report("chhp --p x --q y --region disc");
    CHECK(t4.cell(0, "inv_2pi_i_coeff") == "0");
    CHECK(std::abs(t4.num(0, "value_im") - (-0.5)) <= 1e-15);
}

TEST_CASE("compare runs both engines against each other") {
    Table t = csv_report("compare --p x^2*y --q y^2");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.cell(0, "verdict") == "pass");
    CHECK(t.num(0, "abs_difference") <= 5e-3);

    Table base = csv_report("compare --p x --q y --tolerance 1e-3 --M 128");
    CHECK(base.cell(0, "verdict") == "pass");

    Table zero = csv_report("compare --p x --q x --M 64");
    CHECK(zero.cell(0, "verdict") == "pass");
    CHECK(zero.num(0, "numeric_re") == 0.0);
    CHECK(zero.num(0, "numeric_im") == 0.0);
    CHECK(zero.cell(0, "exact_coeff") == "0");
}

TEST_CASE("hardy subcommand reports both exact sides") {
    Table t = csv_report("hardy --f -1:1 --g 1:1");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.cell(0, "lhs_trace") == "1");
    CHECK(t.cell(0, "rhs_disc_integral") == "1");
    CHECK(t.cell(0, "equal") == "true");

    Table t2 = csv_report("hardy --f 2:1 --g -2:1");
    CHECK(t2.cell(0, "lhs_trace") == "-2");
    CHECK(t2.cell(0, "equal") == "true");

    Table t3 = csv_report("hardy --f 1:1,-1:1/2 --g 1:1,-1:1/2");
    CHECK(t3.cell(0, "lhs_trace") == "0");
    CHECK(t3.cell(0, "rhs_disc_integral") == "0");
    CHECK(t3.cell(0, "equal") == "true");
}

TEST_CASE("landau subcommand covers level and cumulative bases") {
    Table t = csv_report("landau --level 1 --M 128");
    CHECK(t.meta.at("basis") == "landau_level(1)");
    CHECK(t.meta.at("target") == "1");
    CHECK(t.num(t.rows.size() - 1, "abs_error_vs_target") <= 1e-2);

    Table c = csv_report("landau --level 1 --cumulative --M 128");
    CHECK(c.meta.at("basis") == "landau_cumulative(1)");
    CHECK(c.meta.at("target") == "2");
    CHECK(c.meta.count("basis_order") == 1);
    CHECK(c.meta.at("basis_order").rfind("(1 -1)(0 0)(1 0)(0 1)", 0) == 0);
    CHECK(c.num(c.rows.size() - 1, "abs_error_vs_target") <= 1e-2);
}

TEST_CASE("shift-weights and switch-check report their oracles") {
    Table t = csv_report("shift-weights --count 10");
    CHECK(t.meta.at("index_certificate") == "-1");
    REQUIRE(t.rows.size() == 10);
    CHECK(std::abs(t.num(0, "weight") - 0.88622692545275794) <= 1e-14);
    for (std::size_t r = 1; r < t.rows.size(); ++r)
        CHECK(t.num(r, "weight") > t.num(r - 1, "weight"));

    Table s = csv_report("switch-check --symbol linear_ramp --c -0.5 --d 1.5 --shift 2.5");
    CHECK(std::abs(s.num(0, "integral") - 2.5) <= 1e-8);
    CHECK(s.num(0, "abs_error") <= 1e-8);
}

TEST_CASE("config file merges under explicit flags") {
    std::string cfg = work_dir() + "/exp.cfg";
    {
        std::ofstream out(cfg);
        out << "# experiment configuration\n";
        out << "M = 64\n";
        out << "word-n = 2\n";
        out << "symbol = heaviside\n";
    }
    Table t = csv_report("trace --config " + cfg);
    CHECK(t.meta.at("M") == "64");
    CHECK(t.meta.at("word_n") == "2");
    REQUIRE(t.rows.size() == 1);
    CHECK(std::abs(t.num(0, "2pi_i_value") - 0.5) <= 2e-2);

    // explicit flag wins over the config value
    Table o = csv_report("trace --config " + cfg + " --word-n 1 --M 32");
    CHECK(o.meta.at("M") == "32");
    CHECK(o.meta.at("word_n") == "1");

    std::string bad = work_dir() + "/bad.cfg";
    {
        std::ofstream out(bad);
        out << "M = 64\nwrong-key = 3\n";
    }
    std::string err;
    CHECK(run_cli("trace --config " + bad, nullptr, &err) == 2);
    CHECK(err.find("wrong-key") != std::string::npos);

    std::string noeq = work_dir() + "/noeq.cfg";
    {
        std::ofstream out(noeq);
        out << "just a line\n";
    }
    CHECK(run_cli("trace --config " + noeq) == 2);
}

TEST_CASE("exit codes follow the contract") {
    std::string err;

    // 2: malformed polynomial, position-annotated
    CHECK(run_cli("chhp --p x^ --q y", nullptr, &err) == 2);
    CHECK(err.find("position") != std::string::npos);

    // 2: malformed Laurent symbol
    CHECK(run_cli("hardy --f '1:2,3;4' --g 1:1", nullptr, &err) == 2);
    CHECK(err.find("position") != std::string::npos);

    // 2: assorted invalid configuration
    CHECK(run_cli("trace --M abc") == 2);
    CHECK(run_cli("trace --M 0") == 2);
    CHECK(run_cli("trace --symbol gauss") == 2);
    CHECK(run_cli("trace --format yaml") == 2);
    CHECK(run_cli("trace --window -3") == 2);
    CHECK(run_cli("word --q y --M 16") == 2);             // missing --p
    CHECK(run_cli("compare --p x --q y --ordering up") == 2);
    CHECK(run_cli("landau --level 2 --M 16") == 2);
    CHECK(run_cli("switch-check --symbol linear_ramp --c 2 --d 1") == 2);
    CHECK(run_cli("nonsense") == 2);

    // 3: resource cap from the environment
    CHECK(run_cli("trace --M 64", nullptr, &err, "PRINCIPAL_TRACE_MAX_M=32") == 3);
    CHECK(err.find("resource cap") != std::string::npos);

    // 4: unwritable output, and no partial file left behind
    std::string target = "/nonexistent_dir_principal/report.csv";
    CHECK(run_cli("switch-check --out " + target) == 4);
    CHECK(!std::filesystem::exists(target));

    // 0: help
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("reports are deterministic and JSON mirrors CSV") {
    std::string p1 = work_dir() + "/det1.csv", p2 = work_dir() + "/det2.csv";
    REQUIRE(run_cli("trace --M 64 --out " + p1) == 0);
    REQUIRE(run_cli("trace --M 64 --out " + p2) == 0);
    CHECK(strip_timestamp(read_file(p1)) == strip_timestamp(read_file(p2)));

    std::string pj = work_dir() + "/det1.json";
    REQUIRE(run_cli("trace --M 64 --format json --out " + pj) == 0);
    auto j = nlohmann::json::parse(read_file(pj));
    Table t = parse_csv(read_file(p1));
    REQUIRE(j.at("columns").size() == t.columns.size());
    REQUIRE(j.at("rows").size() == t.rows.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        CHECK(j.at("columns")[i].get<std::string>() == t.columns[i]);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            CHECK(j.at("rows")[r].at(t.columns[i]).get<std::string>() == t.rows[r][i]);
    CHECK(j.at("meta").at("subcommand").get<std::string>() == "trace");

    // stdout when no --out is given
    std::string out;
    REQUIRE(run_cli("chhp --p x --q y", &out) == 0);
    CHECK(out.find("inv_2pi_i_coeff") != std::string::npos);
}
