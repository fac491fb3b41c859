#include "principal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace principal {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");

    std::vector<double> x(n), w(n);
    // Newton iteration from the Chebyshev-angle initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

PanelNodes panelized_interval(double lo, double hi, const std::vector<double>& cuts,
                              int nodes_per_panel) {
    if (!(lo < hi)) throw std::invalid_argument("empty quadrature interval");
    std::vector<double> edges{lo, hi};
    for (double c : cuts)
        if (c > lo && c < hi) edges.push_back(c);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const auto& [gx, gw] = gauss_legendre(nodes_per_panel);
    PanelNodes out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double mid = (edges[i + 1] + edges[i]) / 2.0, half = (edges[i + 1] - edges[i]) / 2.0;
        for (std::size_t k = 0; k < gx.size(); ++k) {
            out.x.push_back(mid + half * gx[k]);
            out.w.push_back(half * gw[k]);
        }
    }
    return out;
}

std::complex<double> matrix_element_quadrature(int m, int n, const PlanarSymbol& symbol,
                                               int nodes_per_panel) {
    if (m < 0 || n < 0) throw std::invalid_argument("negative basis index");
    double b = symbol.b;
    double scale = std::sqrt(2.0 / b);
    double R = (std::sqrt(2.0 * std::max({m, n, 1})) + 8.0) * scale;

    // normalization sqrt((b/2)^{m+n+2} / (pi^2 m! n!)) in log space
    double lognorm = 0.5 * (m + n + 2) * std::log(b / 2.0) - std::log(M_PI) -
                     0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0));

    bool axis_first = symbol.axis == Axis::first_coordinate;
    auto sym_panels = panelized_interval(-R, R, symbol.profile.knots(), nodes_per_panel);
    auto free_panels = panelized_interval(-R, R, {0.0}, nodes_per_panel);

    // symbol axis outer, free axis inner
    const auto& sx = sym_panels.x;
    const auto& fx = free_panels.x;
    std::complex<double> total = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        double vsym = symbol.profile(sx[i]);
        if (vsym == 0.0) continue;
        std::complex<double> inner = 0.0;
        for (std::size_t j = 0; j < fx.size(); ++j) {
            double x = axis_first ? sx[i] : fx[j];
            double y = axis_first ? fx[j] : sx[i];
            double r2 = x * x + y * y;
            if (r2 == 0.0) {
                if (m == 0 && n == 0) inner += std::exp(lognorm) * free_panels.w[j];
                continue;
            }
            double logmag = 0.5 * (m + n) * std::log(r2) - 0.5 * b * r2 + lognorm;
            double phase = (n - m) * std::atan2(y, x);
            inner += free_panels.w[j] * std::exp(logmag) *
                     std::complex<double>(std::cos(phase), std::sin(phase));
        }
        total += sym_panels.w[i] * vsym * inner;
    }
    return total;
}

double smooth_convolution_quadrature(const SwitchFunction& profile, double u) {
    auto p = panelized_interval(u - 9.0, u + 9.0, profile.knots(), 96);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        double d = p.x[i] - u;
        acc += p.w[i] * profile(p.x[i]) * std::exp(-d * d);
    }
    return acc / std::sqrt(M_PI);
}

double shift_weight_quadrature(int n) {
    if (n < 0) throw std::invalid_argument("negative index");
    double R = std::sqrt(2.0 * n + 2.0) + 8.0;
    auto p = panelized_interval(0.0, R, {}, 160);
    double lognorm = -0.5 * (std::lgamma(n + 1.0) + std::lgamma(n + 2.0));
    double acc = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        double r = p.x[i];
        if (r <= 0.0) continue;
        acc += p.w[i] * std::exp((2.0 * n + 2.0) * std::log(r) - r * r + lognorm);
    }
    return 2.0 * acc;
}

}  // namespace principal
