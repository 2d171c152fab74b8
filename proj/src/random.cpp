#include "rootframe/random.hpp"

#include <cmath>
#include <numbers>

namespace rootframe {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector random_unit_vector(SplitMix64& rng, int dim) {
    Vector v(dim);
    double norm = 0.0;
    while (norm < 1e-12) {
        for (int i = 0; i < dim; ++i) {
            v[i] = rng.normal();
        }
        norm = v.norm();
    }
    return v / norm;
}

} // namespace rootframe
