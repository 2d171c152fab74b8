#include "rootframe/frame.hpp"

#include <cmath>
#include <string>

#include "rootframe/errors.hpp"

namespace rootframe {

Frame::Frame(std::vector<Vector> vectors, std::optional<std::vector<double>> weights)
    : vectors_(std::move(vectors)), weights_(std::move(weights)) {
    if (vectors_.empty()) {
        throw InvalidInput("frame has no vectors");
    }
    dim_ = static_cast<int>(vectors_.front().size());
    if (dim_ <= 0) {
        throw InvalidInput("frame dimension must be positive");
    }
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        const Vector& v = vectors_[k];
        if (v.size() != dim_) {
            throw InvalidInput("vector " + std::to_string(k) + ": has " + std::to_string(v.size()) +
                               " entries, expected " + std::to_string(dim_));
        }
        if (!v.allFinite()) {
            throw InvalidInput("vector " + std::to_string(k) + ": non-finite entry");
        }
        if (v.isZero(0.0)) {
            throw InvalidInput("vector " + std::to_string(k) + ": zero vector");
        }
    }
    if (weights_) {
        if (weights_->size() != vectors_.size()) {
            throw InvalidWeight("weight count " + std::to_string(weights_->size()) +
                                " does not match vector count " + std::to_string(vectors_.size()));
        }
        for (std::size_t k = 0; k < weights_->size(); ++k) {
            const double w = (*weights_)[k];
            if (!std::isfinite(w) || !(w > 0.0)) {
                throw InvalidWeight("weight " + std::to_string(k) + ": must be positive and finite");
            }
        }
    }
}

bool Frame::is_unit_norm(double eps) const {
    for (const auto& v : vectors_) {
        if (std::abs(v.norm() - 1.0) > eps) {
            return false;
        }
    }
    return true;
}

Frame Frame::with_weights(std::vector<double> weights) const {
    return Frame(vectors_, std::move(weights));
}

Matrix Frame::synthesis_matrix() const {
    Matrix m(dim_, static_cast<Eigen::Index>(vectors_.size()));
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = vectors_[k];
    }
    return m;
}

bool operator==(const Frame& a, const Frame& b) {
    if (a.dim_ != b.dim_ || a.vectors_.size() != b.vectors_.size() || a.weights_ != b.weights_) {
        return false;
    }
    for (std::size_t k = 0; k < a.vectors_.size(); ++k) {
        if (a.vectors_[k] != b.vectors_[k]) {
            return false;
        }
    }
    return true;
}

Vector embed(const Vector& v, int dim, int offset) {
    if (offset < 0 || offset + v.size() > dim) {
        throw InvalidParameter("embed: vector does not fit at the given offset");
    }
    Vector out = Vector::Zero(dim);
    out.segment(offset, v.size()) = v;
    return out;
}

Frame direct_sum(const Frame& a, const Frame& b) {
    const int dim = a.dim() + b.dim();
    std::vector<Vector> vectors;
    vectors.reserve(a.size() + b.size());
    for (const auto& v : a.vectors()) {
        vectors.push_back(embed(v, dim, 0));
    }
    for (const auto& v : b.vectors()) {
        vectors.push_back(embed(v, dim, a.dim()));
    }
    std::optional<std::vector<double>> weights;
    if (a.has_weights() || b.has_weights()) {
        weights.emplace();
        for (std::size_t k = 0; k < a.size(); ++k) {
            weights->push_back(a.weight(k));
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            weights->push_back(b.weight(k));
        }
    }
    return Frame(std::move(vectors), std::move(weights));
}

} // namespace rootframe
