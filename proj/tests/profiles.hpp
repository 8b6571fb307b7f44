#pragma once

#include <cmath>
#include <random>

#include "trimer/charge_operator.hpp"

namespace trimer::testing {

/// Sum of three log-normal bumps divided by r^1.5, with random centres,
/// widths and signed amplitudes.
inline ChargeProfile random_profile(int ell, const RadialGrid& grid, std::mt19937& gen) {
    std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.4, 1.2), amp(-1.0, 1.0);
    double x[3], s[3], c[3];
    for (int k = 0; k < 3; ++k) {
        x[k] = centre(gen);
        s[k] = width(gen);
        c[k] = amp(gen);
    }
    return sample_profile(ell, grid, [&](double r) {
        const double l = std::log(r);
        double v = 0.0;
        for (int k = 0; k < 3; ++k) v += c[k] * std::exp(-(l - x[k]) * (l - x[k]) / (2 * s[k] * s[k]));
        return v / std::pow(r, 1.5);
    });
}

} // namespace trimer::testing
