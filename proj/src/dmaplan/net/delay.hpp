#pragma once

#include "dmaplan/util/rng.hpp"

#include <cstdint>

namespace dmaplan::net {

// Gamma-distributed transmission delay. Shape and scale are derived so that
// the mean is `mean_us` and the standard deviation is `stdev_ratio * mean`:
// k = 1/ratio^2, theta = mean/k.
struct DelayModel {
    double mean_us = 0.0;
    double stdev_ratio = 0.10;

    double shape() const { return 1.0 / (stdev_ratio * stdev_ratio); }
    double scale() const { return mean_us / shape(); }
};

void validate(const DelayModel &model); // throws std::invalid_argument

// One gamma draw in microseconds; exactly 0 when mean is 0 (no rng use).
std::uint64_t sample_delay_us(const DelayModel &model, util::Rng &rng);

// Marsaglia-Tsang gamma variate, exposed for the distribution tests.
double gamma_variate(double shape, double scale, util::Rng &rng);

} // namespace dmaplan::net
