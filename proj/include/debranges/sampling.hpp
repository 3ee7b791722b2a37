#pragma once

#include <cstdint>
#include <random>

#include "debranges/hb_core.hpp"

namespace dbr::sampling {

/// Deterministic uniform draws; the same seed gives the same stream on every
/// platform (std:: distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Polynomial spec with `degree` zeros uniform in [-re_bound, re_bound] x [-im_hi, -im_lo].
HBSpec random_polynomial_spec(Rng& rng, int degree, double re_bound = 3.0, double im_lo = 0.1,
                              double im_hi = 3.0);

}  // namespace dbr::sampling
