#pragma once

#include <cmath>
#include <vector>

#include "stick/common.hpp"

namespace stick {

struct StrengthMap {
    double growth_rate = 1.0;  // B >= 0
    double center = 5.0;

    void validate() const {
        if (!(growth_rate >= 0.0)) throw ValidationError("growth rate B must be >= 0");
    }
};

// strength(u) = logistic(B * (u - center)) - 0.5, in (-0.5, 0.5), odd about the center
inline double evidence_strength(double u, const StrengthMap& map) {
    map.validate();
    return 1.0 / (1.0 + std::exp(-map.growth_rate * (u - map.center))) - 0.5;
}

enum class AdjustVariant { AA, MAS };

struct AdjustParams {
    double reference = 0.0;      // R in [-1, 1]; AA fixes R = 0
    double initial_belief = 0.5; // C0
    AdjustVariant variant = AdjustVariant::AA;

    void validate() const {
        if (variant == AdjustVariant::AA && reference != 0.0)
            throw ValidationError("AA variant fixes the reference point R = 0");
        if (!(reference >= -1.0 && reference <= 1.0))
            throw ValidationError("reference R must lie in [-1, 1]");
        if (!(initial_belief >= 0.0 && initial_belief <= 1.0))
            throw ValidationError("initial belief C0 must lie in [0, 1]");
    }
};

// C_k = C_{k-1} + w_k * (s - R), Hogarth weights w_k = C_{k-1} if s <= R else 1 - C_{k-1}
inline double adjust_update(double c_prev, double s, const AdjustParams& params) {
    params.validate();
    if (!(c_prev >= 0.0 && c_prev <= 1.0)) throw ValidationError("C_prev must lie in [0, 1]");
    const double w = s <= params.reference ? c_prev : 1.0 - c_prev;
    const double c = c_prev + w * (s - params.reference);
    return c < 0.0 ? 0.0 : c > 1.0 ? 1.0 : c;
}

// fold over a presented sequence; result[0] = C0, result[k] = belief after k updates
inline std::vector<double> adjust_sequence(const std::vector<double>& observations,
                                           const StrengthMap& map, const AdjustParams& params) {
    std::vector<double> out;
    out.reserve(observations.size() + 1);
    out.push_back(params.initial_belief);
    for (double u : observations)
        out.push_back(adjust_update(out.back(), evidence_strength(u, map), params));
    return out;
}

}  // namespace stick
