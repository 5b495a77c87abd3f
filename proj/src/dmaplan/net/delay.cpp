#include "dmaplan/net/delay.hpp"

#include <cmath>
#include <stdexcept>

namespace dmaplan::net {

void validate(const DelayModel &model) {
    if (model.mean_us < 0)
        throw std::invalid_argument("delay mean must be non-negative");
    if (model.stdev_ratio <= 0)
        throw std::invalid_argument("delay stdev ratio must be positive");
}

namespace {

// Standard normal via Box-Muller on our own rng; self-contained so that
// simulation runs do not depend on libstdc++ distribution internals.
double normal_variate(util::Rng &rng) {
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    while (u1 <= 0.0)
        u1 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

double gamma_variate(double shape, double scale, util::Rng &rng) {
    if (shape < 1.0) {
        // boost: Gamma(k) = Gamma(k+1) * U^(1/k)
        double u = rng.next_double();
        while (u <= 0.0)
            u = rng.next_double();
        return gamma_variate(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal_variate(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0)
            continue;
        v = v * v * v;
        double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

std::uint64_t sample_delay_us(const DelayModel &model, util::Rng &rng) {
    validate(model);
    if (model.mean_us == 0.0)
        return 0;
    double draw = gamma_variate(model.shape(), model.scale(), rng);
    if (draw < 0.0)
        draw = 0.0;
    return static_cast<std::uint64_t>(draw + 0.5);
}

} // namespace dmaplan::net
