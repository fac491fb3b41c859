#include "principal/trace_engine.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace principal {

namespace {

// Compensated (Neumaier) summation keeps the windowed sums deterministic and
// immune to cancellation between the large leading diagonal entries.
struct Neumaier {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double total() const { return s + c; }
};

Eigen::MatrixXcd word_product(const OperatorWord& w, const Eigen::MatrixXcd& A,
                              const Eigen::MatrixXcd& B) {
    const Eigen::MatrixXcd& first = (w.letters[0] == 'A') ? A : B;
    Eigen::MatrixXcd P = first;
    for (std::size_t i = 1; i < w.letters.size(); ++i)
        P = P * ((w.letters[i] == 'A') ? A : B);
    return P;
}

std::vector<WeightedWord> plain(const std::vector<OperatorWord>& ws) {
    std::vector<WeightedWord> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back({w, 1.0});
    return out;
}

// x^a y^b realized as an operator word under the chosen normal ordering.
OperatorWord monomial_word(int a, int b, WordOrdering ordering) {
    std::string s;
    if (ordering == WordOrdering::left_normal) {
        s.append(a, 'A');
        s.append(b, 'B');
    } else {
        s.append(b, 'B');
        s.append(a, 'A');
    }
    return OperatorWord(std::move(s));
}

double real_rational_weight(const GaussianRational& c) {
    if (c.im != 0) throw std::invalid_argument("polynomial coefficients must be real");
    return mpq_get_d(c.re.get_mpq_t());
}

}  // namespace

TruncationScheme TruncationScheme::with_default_window(int M, bool extrapolate) {
    return TruncationScheme(M, M / 2, extrapolate);
}

void TruncationScheme::validate() const {
    if (N < 1 || N > M)
        throw std::invalid_argument("truncation window must satisfy 1 <= N <= M");
}

OperatorWord::OperatorWord(std::string s) : letters(std::move(s)) {
    if (letters.empty()) throw std::invalid_argument("operator word must be non-empty");
    for (char c : letters)
        if (c != 'A' && c != 'B')
            throw std::invalid_argument("operator word letters must be A or B");
}

std::string TraceReport::to_json() const {
    nlohmann::json j;
    j["value_re"] = value.real();
    j["value_im"] = value.imag();
    j["M"] = M;
    j["N"] = N;
    j["tail_estimate"] = tail_estimate;
    nlohmann::json diag = nlohmann::json::array();
    for (const auto& d : per_index_diagonal) diag.push_back({d.real(), d.imag()});
    j["diagonal"] = std::move(diag);
    return j.dump();
}

TraceReport windowed_trace(const std::vector<WeightedWord>& word_plus,
                           const std::vector<WeightedWord>& word_minus,
                           const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                           const TruncationScheme& scheme) {
    scheme.validate();
    if (A.M != B.M) throw std::invalid_argument("operator sizes differ");
    if (A.M < scheme.M)
        throw std::invalid_argument("operators smaller than the truncation size");

    const int M = scheme.M, N = scheme.N;
    Eigen::MatrixXcd Ablk = A.entries.topLeftCorner(M, M);
    Eigen::MatrixXcd Bblk = B.entries.topLeftCorner(M, M);
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(M, M);
    for (const auto& ww : word_plus) Z += ww.weight * word_product(ww.word, Ablk, Bblk);
    for (const auto& ww : word_minus) Z -= ww.weight * word_product(ww.word, Ablk, Bblk);

    TraceReport rep;
    rep.M = M;
    rep.N = N;
    rep.per_index_diagonal.resize(M);
    for (int m = 0; m < M; ++m) rep.per_index_diagonal[m] = Z(m, m);
    Neumaier re, im;
    for (int m = 0; m < N; ++m) {
        re.add(Z(m, m).real());
        im.add(Z(m, m).imag());
    }
    rep.value = {re.total(), im.total()};
    rep.tail_estimate = std::abs(rep.per_index_diagonal[N - 1]) * N;
    return rep;
}

TraceReport windowed_trace(const std::vector<OperatorWord>& word_plus,
                           const std::vector<OperatorWord>& word_minus,
                           const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                           const TruncationScheme& scheme) {
    return windowed_trace(plain(word_plus), plain(word_minus), A, B, scheme);
}

TraceReport commutator_trace(const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                             const TruncationScheme& scheme) {
    return windowed_trace(std::vector<OperatorWord>{OperatorWord("AB")},
                          std::vector<OperatorWord>{OperatorWord("BA")}, A, B, scheme);
}

WordOrdering ordering_from_name(const std::string& name) {
    if (name == "left_normal") return WordOrdering::left_normal;
    if (name == "right_normal") return WordOrdering::right_normal;
    throw std::invalid_argument("unsupported ordering name: " + name);
}

TraceReport word_trace_for_polynomials(const QPolynomial2& p, const QPolynomial2& q,
                                       WordOrdering ordering, const ToeplitzMatrix& A,
                                       const ToeplitzMatrix& B,
                                       const TruncationScheme& scheme) {
    std::vector<WeightedWord> plus, minus;
    for (const auto& [pe, pc] : p.terms()) {
        if (pe.first == 0 && pe.second == 0) continue;  // constants commute
        double wp = real_rational_weight(pc);
        OperatorWord pw = monomial_word(pe.first, pe.second, ordering);
        for (const auto& [qe, qc] : q.terms()) {
            if (qe.first == 0 && qe.second == 0) continue;
            double w = wp * real_rational_weight(qc);
            OperatorWord qw = monomial_word(qe.first, qe.second, ordering);
            plus.push_back({OperatorWord(pw.letters + qw.letters), w});
            minus.push_back({OperatorWord(qw.letters + pw.letters), w});
        }
    }
    if (plus.empty())
        return windowed_trace(std::vector<WeightedWord>{}, std::vector<WeightedWord>{},
                              A, B, scheme);
    return windowed_trace(plus, minus, A, B, scheme);
}

double hall_conductance(const ToeplitzMatrix& A, const ToeplitzMatrix& B,
                        const TruncationScheme& scheme, double* imag_residue) {
    std::complex<double> v = commutator_trace(A, B, scheme).value;
    std::complex<double> minus_i_v = std::complex<double>(0, -1) * v;
    if (imag_residue) *imag_residue = minus_i_v.imag();
    return minus_i_v.real();
}

std::complex<double> richardson_extrapolate(
    const std::vector<std::pair<int, std::complex<double>>>& values) {
    if (values.size() < 2)
        throw std::invalid_argument("extrapolation needs at least 2 samples");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i + 1].first <= values[i].first)
            throw std::invalid_argument("sample sizes must be strictly increasing");

    const std::size_t n = values.size();
    if (n == 2) {
        // one sample pair fixes nothing about the ratio; take rho^(M1-M0) = 1/2
        std::complex<double> d = values[1].second - values[0].second;
        return values[1].second + d;
    }
    // Fit error(M) = C rho^M through the last three samples.  The increment
    // ratio determines rho via
    //   |v2-v1| / |v1-v0| = rho^a (1-rho^b) / (1-rho^a),  a = M1-M0, b = M2-M1,
    // which is increasing in rho on (0,1) with supremum b/a.
    const double a = values[n - 2].first - values[n - 3].first;
    const double b = values[n - 1].first - values[n - 2].first;
    std::complex<double> v0 = values[n - 3].second, v1 = values[n - 2].second,
                         v2 = values[n - 1].second;
    std::complex<double> d1 = v1 - v0, d2 = v2 - v1;
    if (std::abs(d2) == 0.0) return v2;  // already converged
    if (std::abs(d1) == 0.0) return v2;
    double r = std::abs(d2) / std::abs(d1);
    if (r >= 1.0 || r >= b / a) return v2;  // increments not contracting
    auto h = [a, b](double rho) {
        return std::pow(rho, a) * (1.0 - std::pow(rho, b)) / (1.0 - std::pow(rho, a));
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double mid = (lo + hi) / 2.0;
        (h(mid) < r ? lo : hi) = mid;
    }
    double rho_b = std::pow((lo + hi) / 2.0, b);
    // residual error at the last sample: e2 = (v1 - v2) rho^b / (1 - rho^b)
    std::complex<double> e2 = (v1 - v2) * (rho_b / (1.0 - rho_b));
    return v2 - e2;
}

}  // namespace principal
