#include "rootframe/closure.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

#include "rootframe/errors.hpp"
#include "rootframe/random.hpp"
#include "rootframe/vector_index.hpp"

namespace rootframe {

std::string to_string(ClosureStatus status) {
    return status == ClosureStatus::Closed ? "closed" : "cap_exceeded";
}

std::string to_string(RootFrameVerdict verdict) {
    switch (verdict) {
        case RootFrameVerdict::Yes: return "yes";
        case RootFrameVerdict::NoSpan: return "no_span";
        case RootFrameVerdict::UnknownCap: return "unknown_cap";
    }
    return "unknown_cap";
}

std::vector<Vector> ClosureResult::signed_orbit() const {
    std::vector<Vector> out;
    out.reserve(2 * orbit.size());
    for (const auto& v : orbit) {
        out.push_back(v);
        out.push_back(clear_negative_zeros(-v));
    }
    return out;
}

ClosureResult reflection_closure(const Frame& frame, const ClosureCaps& caps, double eps) {
    for (std::size_t k = 0; k < frame.size(); ++k) {
        if (std::abs(frame[k].norm() - 1.0) > eps) {
            throw InvalidInput("reflection_closure: vector " + std::to_string(k) + " is not unit-norm");
        }
    }

    ClosureResult result;
    VectorIndex held(frame.dim(), eps);
    for (const auto& v : frame.vectors()) {
        if (!held.insert_unique(sign_canonical(v, eps)).second) {
            ++result.duplicates_collapsed;
        }
    }
    result.growth_trace.push_back(2 * held.size());

    auto finish = [&](ClosureStatus status) {
        result.status = status;
        result.orbit_size = 2 * held.size();
        if (status == ClosureStatus::Closed) {
            result.orbit = held.vectors();
        }
        return result;
    };

    if (2 * held.size() > caps.max_vectors) {
        return finish(ClosureStatus::CapExceeded);
    }
    while (true) {
        if (result.iterations >= caps.max_sweeps) {
            return finish(ClosureStatus::CapExceeded);
        }
        const std::size_t before = held.size();
        ++result.iterations;
        for (std::size_t a = 0; a < before; ++a) {
            for (std::size_t b = 0; b < before; ++b) {
                Vector image = reflect(held[a], held[b]);
                image /= image.norm();
                if (held.insert_unique(sign_canonical(image, eps)).second &&
                    2 * held.size() > caps.max_vectors) {
                    result.growth_trace.push_back(2 * held.size());
                    return finish(ClosureStatus::CapExceeded);
                }
            }
        }
        result.growth_trace.push_back(2 * held.size());
        if (held.size() == before) {
            return finish(ClosureStatus::Closed);
        }
    }
}

namespace {

bool spans(const std::vector<Vector>& vectors, int dim) {
    if (vectors.size() < static_cast<std::size_t>(dim)) {
        return false;
    }
    Matrix gram = Matrix::Zero(dim, dim);
    for (const auto& v : vectors) {
        gram += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    const double smallest = std::max(solver.eigenvalues()[0], 0.0);
    return std::sqrt(smallest) > 1e-9;
}

std::size_t kept_with_sign(const Frame& frame, const Vector& beta) {
    std::size_t count = 0;
    for (const auto& v : frame.vectors()) {
        if (v.dot(beta) > 0.0) {
            ++count;
        }
    }
    return count;
}

bool separates(const RootSystem& roots, const Vector& beta, double eps) {
    for (const auto& a : roots.roots()) {
        if (std::abs(a.dot(beta)) / (a.norm() * beta.norm()) <= eps) {
            return false;
        }
    }
    return true;
}

} // namespace

RootFrameClosure is_root_frame_closure(const Frame& frame, const ClosureCaps& caps, double eps) {
    RootFrameClosure out;
    out.closure = reflection_closure(frame, caps, eps);
    if (!out.closure.closed()) {
        out.verdict = RootFrameVerdict::UnknownCap;
        return out;
    }

    out.root_system = RootSystem::from_vectors(out.closure.signed_orbit(), Family::Custom, eps);
    if (!spans(out.closure.orbit, frame.dim())) {
        out.verdict = RootFrameVerdict::NoSpan;
        return out;
    }
    out.verdict = RootFrameVerdict::Yes;

    // Perturbations of the input's mean direction, growing in size, then
    // purely random draws; the best separating candidate wins.
    Vector mean = Vector::Zero(frame.dim());
    for (const auto& v : frame.vectors()) {
        mean += v;
    }
    if (mean.norm() > 1e-12) {
        mean /= mean.norm();
    }
    SplitMix64 rng(kDefaultSeed);
    std::optional<Vector> best;
    std::size_t best_score = 0;
    constexpr int kAttempts = 64;
    for (int attempt = 0; attempt < kAttempts && best_score < frame.size(); ++attempt) {
        const double spread = attempt < 48 ? std::pow(10.0, -3.0 + attempt / 12) : 1e6;
        Vector candidate = mean + spread * random_unit_vector(rng, frame.dim());
        if (!(candidate.norm() > 0.0) || !separates(*out.root_system, candidate, eps)) {
            continue;
        }
        candidate /= candidate.norm();
        const std::size_t score = kept_with_sign(frame, candidate);
        if (!best || score > best_score) {
            best = candidate;
            best_score = score;
        }
    }
    out.positives = positive_subsystem(*out.root_system, best, std::nullopt, eps);
    out.input_directions_kept = kept_with_sign(frame, out.positives->beta());
    return out;
}

namespace {

using MatrixKey = std::vector<std::int64_t>;

struct MatrixKeyHash {
    std::size_t operator()(const MatrixKey& key) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::int64_t c : key) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

MatrixKey key_of(const Matrix& m) {
    MatrixKey key;
    key.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            key.push_back(std::llround(m(i, j) * 1e8));
        }
    }
    return key;
}

} // namespace

GroupEnumeration group_enumerate(const RootSystem& roots, std::size_t max_elements, double eps) {
    const PositiveSystem positives = positive_subsystem(roots, std::nullopt, std::nullopt, eps);
    std::vector<Matrix> generators;
    for (const auto& alpha : positives.positives()) {
        generators.push_back(reflection_matrix(alpha));
    }

    GroupEnumeration out;
    std::vector<Matrix> elements{Matrix::Identity(roots.dim(), roots.dim())};
    std::unordered_set<MatrixKey, MatrixKeyHash> seen{key_of(elements.front())};
    for (std::size_t next = 0; next < elements.size(); ++next) {
        for (const auto& s : generators) {
            Matrix product = elements[next] * s;
            if (seen.insert(key_of(product)).second) {
                elements.push_back(std::move(product));
                if (elements.size() > max_elements) {
                    out.order = elements.size();
                    out.status = GroupStatus::CapExceeded;
                    return out;
                }
            }
        }
    }
    out.status = GroupStatus::Complete;
    out.order = elements.size();

    const VectorIndex index = make_index(roots.roots(), eps);
    out.preserves_roots = true;
    for (const auto& g : elements) {
        for (const auto& alpha : roots.roots()) {
            if (!index.find(g * alpha)) {
                out.preserves_roots = false;
            }
        }
    }
    return out;
}

} // namespace rootframe
