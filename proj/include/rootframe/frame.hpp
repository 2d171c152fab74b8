#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rootframe/types.hpp"

namespace rootframe {

/// An ordered list of nonzero vectors in R^dim with optional positive weights.
///
/// Vector k contributes w_k * phi_k phi_k^T to the frame operator. Weights are
/// kept separate from the stored vectors so unit-norm bookkeeping survives
/// rescaling. A Frame is validated on construction and immutable afterwards.
class Frame {
public:
    /// Throws InvalidInput on an empty list, a dimension mismatch, a zero or
    /// non-finite vector; InvalidWeight on a bad weight list.
    explicit Frame(std::vector<Vector> vectors,
                   std::optional<std::vector<double>> weights = std::nullopt);

    int dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    const std::vector<Vector>& vectors() const { return vectors_; }
    const Vector& operator[](std::size_t k) const { return vectors_[k]; }

    bool has_weights() const { return weights_.has_value(); }
    const std::optional<std::vector<double>>& weights() const { return weights_; }
    /// 1 when the frame is unweighted.
    double weight(std::size_t k) const { return weights_ ? (*weights_)[k] : 1.0; }

    /// True when every vector has norm 1 within `eps`.
    bool is_unit_norm(double eps = kMatchTolerance) const;

    Frame with_weights(std::vector<double> weights) const;

    /// dim x N matrix whose columns are the stored vectors.
    Matrix synthesis_matrix() const;

    friend bool operator==(const Frame& a, const Frame& b);

private:
    int dim_ = 0;
    std::vector<Vector> vectors_;
    std::optional<std::vector<double>> weights_;
};

/// Block-diagonal embedding: the vectors of `a` in the leading coordinates
/// followed by the vectors of `b` in the trailing ones. Weights carry over.
Frame direct_sum(const Frame& a, const Frame& b);

/// Embeds `v` into R^dim starting at coordinate `offset`.
Vector embed(const Vector& v, int dim, int offset);

} // namespace rootframe
