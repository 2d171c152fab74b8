#include "rootframe/root_systems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rootframe/errors.hpp"
#include "rootframe/random.hpp"
#include "rootframe/vector_index.hpp"

namespace rootframe {

std::string to_string(Family family) {
    switch (family) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::I2: return "I2";
        case Family::Custom: return "custom";
    }
    return "custom";
}

Family parse_family(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "A") return Family::A;
    if (upper == "B") return Family::B;
    if (upper == "C") return Family::C;
    if (upper == "D") return Family::D;
    if (upper == "I2") return Family::I2;
    if (upper == "CUSTOM") return Family::Custom;
    throw InvalidParameter("unknown root system family '" + std::string(text) + "'");
}

Vector reflect(const Vector& axis, const Vector& x) {
    const double nn = axis.squaredNorm();
    if (!(nn > 0.0)) {
        throw InvalidInput("reflect: zero axis");
    }
    if (axis.size() != x.size()) {
        throw InvalidInput("reflect: dimension mismatch");
    }
    return x - (2.0 * x.dot(axis) / nn) * axis;
}

Matrix reflection_matrix(const Vector& axis) {
    const double nn = axis.squaredNorm();
    if (!(nn > 0.0)) {
        throw InvalidInput("reflection_matrix: zero axis");
    }
    return Matrix::Identity(axis.size(), axis.size()) - (2.0 / nn) * axis * axis.transpose();
}

namespace {

void require_nonzero(std::span<const Vector> vectors) {
    if (vectors.empty()) {
        throw InvalidInput("empty vector set");
    }
    const auto dim = vectors.front().size();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) {
            throw InvalidInput("vector " + std::to_string(i) + ": dimension mismatch");
        }
        if (vectors[i].isZero(0.0)) {
            throw InvalidInput("vector " + std::to_string(i) + ": zero vector");
        }
    }
}

} // namespace

RootSystemReport verify_root_system(std::span<const Vector> vectors, double eps) {
    require_nonzero(vectors);
    const VectorIndex index = make_index(vectors, eps);

    RootSystemReport report;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (!index.find(-vectors[i])) {
            report.missing_negatives.push_back(i);
        }
    }
    for (std::size_t a = 0; a < vectors.size(); ++a) {
        for (std::size_t b = 0; b < vectors.size(); ++b) {
            Vector image = reflect(vectors[a], vectors[b]);
            if (!index.find(image)) {
                report.violations.push_back({a, b, clear_negative_zeros(std::move(image))});
            }
        }
    }
    report.passed = report.missing_negatives.empty() && report.violations.empty();
    return report;
}

std::vector<Vector> sign_symmetrize(std::span<const Vector> vectors, double eps) {
    require_nonzero(vectors);
    VectorIndex index(static_cast<int>(vectors.front().size()), eps);
    for (const auto& v : vectors) {
        index.insert_unique(clear_negative_zeros(v));
    }
    const std::size_t originals = index.size();
    for (std::size_t i = 0; i < originals; ++i) {
        index.insert_unique(clear_negative_zeros(-index[i]));
    }
    return index.vectors();
}

RootSystem RootSystem::from_vectors(std::vector<Vector> roots, Family family, double eps) {
    const RootSystemReport report = verify_root_system(roots, eps);
    if (!report.passed) {
        if (!report.missing_negatives.empty()) {
            throw InvalidInput("not a root system: negation of vector " +
                               std::to_string(report.missing_negatives.front()) + " is missing");
        }
        const auto& v = report.violations.front();
        throw InvalidInput("not a root system: reflection of vector " + std::to_string(v.beta) +
                           " through vector " + std::to_string(v.alpha) + " is not in the set");
    }
    // Duplicates would double-count in frame operators and orbit bookkeeping.
    VectorIndex index(static_cast<int>(roots.front().size()), eps);
    for (const auto& v : roots) {
        if (!index.insert_unique(v).second) {
            throw InvalidInput("not a root system: duplicate vector");
        }
    }
    const int dim = static_cast<int>(roots.front().size());
    return RootSystem(dim, std::move(roots), family);
}

bool RootSystem::is_unit_norm(double eps) const {
    return std::all_of(roots_.begin(), roots_.end(),
                       [eps](const Vector& v) { return std::abs(v.norm() - 1.0) <= eps; });
}

namespace {

Vector unit(int dim, int i) {
    return Vector::Unit(dim, i);
}

int minimum_rank(Family family) {
    switch (family) {
        case Family::A: return 1;
        case Family::B:
        case Family::C:
        case Family::D:
        case Family::I2: return 2;
        case Family::Custom: break;
    }
    throw InvalidParameter("construct_classical: 'custom' is not a classical family");
}

// One representative per +- pair, in a fixed order.
std::vector<Vector> classical_representatives(Family family, int n) {
    std::vector<Vector> reps;
    switch (family) {
        case Family::A: {
            const int dim = n + 1;
            for (int i = 0; i < dim; ++i) {
                for (int j = i + 1; j < dim; ++j) {
                    reps.push_back(unit(dim, i) - unit(dim, j));
                }
            }
            break;
        }
        case Family::B:
        case Family::C:
        case Family::D: {
            if (family != Family::D) {
                const double scale = family == Family::C ? 2.0 : 1.0;
                for (int i = 0; i < n; ++i) {
                    reps.push_back(scale * unit(n, i));
                }
            }
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    reps.push_back(unit(n, i) - unit(n, j));
                    reps.push_back(unit(n, i) + unit(n, j));
                }
            }
            break;
        }
        case Family::I2: {
            // i * w^j with w = exp(i pi / n), read as a point of the plane.
            for (int j = 0; j < n; ++j) {
                const double t = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
                Vector v(2);
                v << -std::sin(t), std::cos(t);
                reps.push_back(v);
            }
            break;
        }
        case Family::Custom: break;
    }
    return reps;
}

} // namespace

RootSystem construct_classical(Family family, int rank_or_n, bool normalize) {
    const int minimum = minimum_rank(family);
    if (rank_or_n < minimum) {
        throw InvalidParameter("construct_classical: " + to_string(family) + " requires rank >= " +
                               std::to_string(minimum) + ", got " + std::to_string(rank_or_n));
    }
    std::vector<Vector> roots;
    for (Vector v : classical_representatives(family, rank_or_n)) {
        if (normalize) {
            v /= v.norm();
        }
        v = clear_negative_zeros(std::move(v));
        roots.push_back(v);
        roots.push_back(clear_negative_zeros(-v));
    }
    return RootSystem::from_vectors(std::move(roots), family);
}

RootSystem direct_sum(const RootSystem& a, const RootSystem& b) {
    const int dim = a.dim() + b.dim();
    std::vector<Vector> roots;
    roots.reserve(a.size() + b.size());
    for (const auto& v : a.roots()) {
        roots.push_back(embed(v, dim, 0));
    }
    for (const auto& v : b.roots()) {
        roots.push_back(embed(v, dim, a.dim()));
    }
    return RootSystem::from_vectors(std::move(roots), Family::Custom);
}

std::vector<Vector> PositiveSystem::positives() const {
    std::vector<Vector> out;
    out.reserve(indices_.size());
    for (std::size_t i : indices_) {
        out.push_back(parent_[i]);
    }
    return out;
}

Frame PositiveSystem::frame() const {
    return Frame(positives());
}

namespace {

bool separates(const RootSystem& roots, const Vector& beta, double eps) {
    const double bn = beta.norm();
    if (!(bn > 0.0)) {
        return false;
    }
    return std::all_of(roots.roots().begin(), roots.roots().end(), [&](const Vector& a) {
        return std::abs(a.dot(beta)) / (a.norm() * bn) > eps;
    });
}

} // namespace

PositiveSystem positive_subsystem(const RootSystem& roots, std::optional<Vector> beta,
                                  std::optional<std::uint64_t> seed, double eps) {
    if (beta) {
        if (beta->size() != roots.dim()) {
            throw InvalidInput("positive_subsystem: beta has dimension " + std::to_string(beta->size()) +
                               ", expected " + std::to_string(roots.dim()));
        }
        if (!separates(roots, *beta, eps)) {
            throw DegenerateFunctional("positive_subsystem: some root is orthogonal to beta");
        }
    } else {
        SplitMix64 rng(seed.value_or(kDefaultSeed));
        constexpr int kAttempts = 64;
        for (int attempt = 0; attempt < kAttempts && !beta; ++attempt) {
            Vector candidate = random_unit_vector(rng, roots.dim());
            if (separates(roots, candidate, eps)) {
                beta = std::move(candidate);
            }
        }
        if (!beta) {
            throw InternalError("positive_subsystem: no separating functional after 64 draws");
        }
    }

    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].dot(*beta) > 0.0) {
            indices.push_back(i);
        }
    }
    if (2 * indices.size() != roots.size()) {
        throw InternalError("positive_subsystem: selected half has the wrong size");
    }
    return PositiveSystem(roots, std::move(*beta), std::move(indices));
}

std::vector<std::size_t> OrbitPartition::class_of(std::size_t root_count) const {
    std::vector<std::size_t> out(root_count, 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i : classes[c]) {
            out[i] = c;
        }
    }
    return out;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

OrbitPartition orbit_partition(const RootSystem& roots, double eps) {
    const VectorIndex index = make_index(roots.roots(), eps);
    DisjointSets sets(roots.size());
    for (std::size_t g = 0; g < roots.size(); ++g) {
        for (std::size_t a = 0; a < roots.size(); ++a) {
            auto hit = index.find(reflect(roots[g], roots[a]));
            if (!hit) {
                throw InvalidInput("orbit_partition: input is not closed under reflections");
            }
            sets.unite(a, *hit);
        }
    }

    OrbitPartition partition;
    std::vector<std::size_t> slot(roots.size(), roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::size_t r = sets.find(i);
        if (slot[r] == roots.size()) {
            slot[r] = partition.classes.size();
            partition.classes.emplace_back();
        }
        partition.classes[slot[r]].push_back(i);
    }
    return partition;
}

ParameterFunctionReport validate_parameter_function(const RootSystem& roots, std::span<const double> k,
                                                    double eps) {
    if (k.size() != roots.size()) {
        throw InvalidInput("parameter function has " + std::to_string(k.size()) + " values for " +
                           std::to_string(roots.size()) + " roots");
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!std::isfinite(k[i]) || !(k[i] > 0.0)) {
            throw InvalidWeight("parameter function value " + std::to_string(i) + " must be positive");
        }
    }

    constexpr double kRelTol = 1e-9;
    ParameterFunctionReport report;
    const OrbitPartition partition = orbit_partition(roots, eps);
    for (std::size_t c = 0; c < partition.classes.size(); ++c) {
        const auto& members = partition.classes[c];
        const double reference = k[members.front()];
        for (std::size_t i : members) {
            if (std::abs(k[i] - reference) > kRelTol * std::max(std::abs(k[i]), std::abs(reference))) {
                report.violations.push_back({c, i, k[i], reference});
            }
        }
    }
    report.passed = report.violations.empty();
    return report;
}

} // namespace rootframe
