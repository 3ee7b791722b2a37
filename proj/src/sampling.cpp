#include "debranges/sampling.hpp"

#include "debranges/errors.hpp"

namespace dbr::sampling {

HBSpec random_polynomial_spec(Rng& rng, int degree, double re_bound, double im_lo, double im_hi) {
    if (degree < 1) throw InputError("random_polynomial_spec: degree must be positive");
    if (!(im_lo > 0.0) || !(im_hi >= im_lo)) throw InputError("random_polynomial_spec: bad imaginary range");
    std::vector<cplx> zeros;
    zeros.reserve(static_cast<std::size_t>(degree));
    for (int k = 0; k < degree; ++k)
        zeros.emplace_back(rng.uniform(-re_bound, re_bound), -rng.uniform(im_lo, im_hi));
    return HBSpec::from_zeros(std::move(zeros));
}

}  // namespace dbr::sampling
