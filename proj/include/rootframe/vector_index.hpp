#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rootframe/types.hpp"

namespace rootframe {

/// Flips the sign of `v` so that its first coordinate with |x| > eps is
/// positive. Vectors with every coordinate within eps of zero are returned
/// unchanged. Negative zeros are cleared.
Vector sign_canonical(const Vector& v, double eps = kMatchTolerance);

/// Max-norm comparison: |a_i - b_i| <= eps for every i.
bool approx_equal(const Vector& a, const Vector& b, double eps = kMatchTolerance);

/// Replaces -0.0 by +0.0 coordinate-wise.
Vector clear_negative_zeros(Vector v);

/// Tolerant lookup table for vectors of a fixed dimension.
///
/// Vectors are bucketed on a grid (default spacing max(1e-8, 4 eps)). A lookup probes the
/// bucket of the query plus any neighbour bucket lying within `eps` of it, so
/// two vectors closer than `eps` in every coordinate are always found even
/// when they straddle a grid line.
class VectorIndex {
public:
    /// A non-positive `grid` selects the default spacing.
    explicit VectorIndex(int dim, double eps = kMatchTolerance, double grid = 0.0);

    /// Inserts `v` under the next sequential id and returns that id.
    std::size_t insert(const Vector& v);

    /// Id of a stored vector within eps of `v`, if any. The smallest such id
    /// wins when several match.
    std::optional<std::size_t> find(const Vector& v) const;

    /// Inserts only when no stored vector matches. Returns (id, inserted).
    std::pair<std::size_t, bool> insert_unique(const Vector& v);

    std::size_t size() const { return vectors_.size(); }
    const std::vector<Vector>& vectors() const { return vectors_; }
    const Vector& operator[](std::size_t id) const { return vectors_[id]; }

private:
    using Key = std::vector<std::int64_t>;
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept;
    };

    Key key_of(const Vector& v) const;

    int dim_;
    double eps_;
    double grid_;
    std::vector<Vector> vectors_;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

/// Builds an index over `vectors` (ids follow input order).
VectorIndex make_index(std::span<const Vector> vectors, double eps = kMatchTolerance);

} // namespace rootframe
