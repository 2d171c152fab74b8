#include "rootframe/vector_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootframe/errors.hpp"

namespace rootframe {

Vector clear_negative_zeros(Vector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] += 0.0;
    }
    return v;
}

Vector sign_canonical(const Vector& v, double eps) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > eps) {
            return v[i] < 0.0 ? clear_negative_zeros(-v) : clear_negative_zeros(v);
        }
    }
    return clear_negative_zeros(v);
}

bool approx_equal(const Vector& a, const Vector& b, double eps) {
    if (a.size() != b.size()) {
        return false;
    }
    return ((a - b).cwiseAbs().array() <= eps).all();
}

std::size_t VectorIndex::KeyHash::operator()(const Key& key) const noexcept {
    // FNV-1a over the cell coordinates.
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t c : key) {
        auto u = static_cast<std::uint64_t>(c);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    return static_cast<std::size_t>(h);
}

VectorIndex::VectorIndex(int dim, double eps, double grid)
    : dim_(dim), eps_(eps), grid_(grid > 0.0 ? grid : std::max(1e-8, 4.0 * eps)) {
    if (dim <= 0 || !(eps > 0.0) || !(grid_ > 2.0 * eps)) {
        throw InvalidParameter("VectorIndex: need dim > 0, eps > 0 and grid > 2 eps");
    }
}

VectorIndex::Key VectorIndex::key_of(const Vector& v) const {
    Key key(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        // Clamp keeps the cast defined for absurdly large coordinates.
        const double cell = std::clamp(std::floor(v[i] / grid_), -4.0e18, 4.0e18);
        key[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(cell);
    }
    return key;
}

std::size_t VectorIndex::insert(const Vector& v) {
    if (v.size() != dim_) {
        throw InvalidInput("VectorIndex: dimension mismatch");
    }
    const std::size_t id = vectors_.size();
    vectors_.push_back(v);
    buckets_[key_of(v)].push_back(id);
    return id;
}

std::optional<std::size_t> VectorIndex::find(const Vector& v) const {
    if (v.size() != dim_) {
        return std::nullopt;
    }
    Key base = key_of(v);
    // Coordinates that sit within eps of a cell wall need their neighbour probed.
    std::vector<std::pair<int, int>> ambiguous;
    for (int i = 0; i < dim_; ++i) {
        const double lo = static_cast<double>(base[static_cast<std::size_t>(i)]) * grid_;
        if (v[i] - lo <= eps_) {
            ambiguous.emplace_back(i, -1);
        } else if (lo + grid_ - v[i] <= eps_) {
            ambiguous.emplace_back(i, +1);
        }
    }

    std::optional<std::size_t> best;
    const std::size_t combos = std::size_t{1} << ambiguous.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        Key key = base;
        for (std::size_t b = 0; b < ambiguous.size(); ++b) {
            if (mask & (std::size_t{1} << b)) {
                key[static_cast<std::size_t>(ambiguous[b].first)] += ambiguous[b].second;
            }
        }
        auto it = buckets_.find(key);
        if (it == buckets_.end()) {
            continue;
        }
        for (std::size_t id : it->second) {
            if (approx_equal(vectors_[id], v, eps_) && (!best || id < *best)) {
                best = id;
            }
        }
    }
    return best;
}

std::pair<std::size_t, bool> VectorIndex::insert_unique(const Vector& v) {
    if (auto hit = find(v)) {
        return {*hit, false};
    }
    return {insert(v), true};
}

VectorIndex make_index(std::span<const Vector> vectors, double eps) {
    if (vectors.empty()) {
        throw InvalidInput("make_index: empty vector list");
    }
    VectorIndex index(static_cast<int>(vectors.front().size()), eps);
    for (const auto& v : vectors) {
        index.insert(v);
    }
    return index;
}

} // namespace rootframe
