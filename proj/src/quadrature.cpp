#include "trimer/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace trimer {

GaussRule gauss_legendre(std::size_t n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Newton iteration on P_n from the Tricomi initial guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pm = n == 1 ? 1.0 : p0;
            dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = p2;
        }
        const double pn = n == 1 ? x : p1;
        const double pm = n == 1 ? 1.0 : p0;
        dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

GridMapping parse_mapping(std::string_view tag) {
    if (tag == "rational") return GridMapping::rational;
    if (tag == "log") return GridMapping::log;
    throw ConfigError("unknown grid mapping '" + std::string(tag) + "'");
}

std::string to_string(GridMapping m) {
    switch (m) {
    case GridMapping::rational: return "rational";
    case GridMapping::log: return "log";
    case GridMapping::custom: return "custom";
    }
    return "unknown";
}

RadialGrid gauss_grid(std::size_t n, GridMapping mapping, const GridOptions& options) {
    if (n < 2) throw DomainError("gauss_grid: n must be at least 2");
    if (!(options.scale > 0.0)) throw ConfigError("gauss_grid: scale must be positive");
    RadialGrid grid;
    grid.mapping = mapping;
    grid.options = options;
    grid.nodes.reserve(n);
    grid.weights.reserve(n);
    const double L = options.scale;

    if (mapping == GridMapping::rational) {
        const GaussRule g = gauss_legendre(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = 0.5 * (g.x[i] + 1.0);
            const double one_minus_u = 0.5 * (1.0 - g.x[i]);
            grid.nodes.push_back(L * u / one_minus_u);
            grid.weights.push_back(0.5 * g.w[i] * L / (one_minus_u * one_minus_u));
        }
        return grid;
    }

    if (mapping == GridMapping::custom) throw ConfigError("gauss_grid: custom grids cannot be generated");
    if (!(options.log_min < options.log_max) || options.panel_order < 1) {
        throw ConfigError("gauss_grid: bad log mapping range or panel order");
    }
    // Composite Gauss-Legendre in x = ln(r/L); panel count chosen so that every
    // panel carries panel_order or panel_order + 1 nodes.
    const std::size_t panels = std::max<std::size_t>(1, n / options.panel_order);
    const std::size_t base = n / panels;
    const std::size_t extra = n % panels;
    const double width = (options.log_max - options.log_min) / static_cast<double>(panels);
    const GaussRule lo = gauss_legendre(base);
    const GaussRule hi = gauss_legendre(base + 1);
    for (std::size_t p = 0; p < panels; ++p) {
        const GaussRule& g = p < extra ? hi : lo;
        const double a = options.log_min + width * static_cast<double>(p);
        const double c = a + 0.5 * width;
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            const double r = L * std::exp(c + 0.5 * width * g.x[k]);
            grid.nodes.push_back(r);
            grid.weights.push_back(0.5 * width * g.w[k] * r);
        }
    }
    return grid;
}

RadialGrid gauss_grid(std::size_t n, std::string_view mapping, const GridOptions& options) {
    return gauss_grid(n, parse_mapping(mapping), options);
}

} // namespace trimer
