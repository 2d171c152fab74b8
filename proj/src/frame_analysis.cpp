#include "rootframe/frame_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rootframe/errors.hpp"
#include "rootframe/vector_index.hpp"

namespace rootframe {

namespace {

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

struct Eigensystem {
    Vector values;   // descending
    Matrix vectors;  // matching columns
};

Eigensystem eigensystem(const Matrix& s) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    if (solver.info() != Eigen::Success) {
        throw InternalError("symmetric eigensolver did not converge");
    }
    const Eigen::Index n = s.rows();
    Eigensystem out{Vector(n), Matrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = solver.eigenvalues()[n - 1 - i];
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

bool unweighted_unit_norm(const Frame& frame, double eps) {
    return !frame.has_weights() && frame.is_unit_norm(eps);
}

} // namespace

Matrix frame_operator(const Frame& frame) {
    const int d = frame.dim();
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const Vector& v = frame[k];
        const double w = frame.weight(k);
        for (int j = 0; j < d; ++j) {
            for (int i = j; i < d; ++i) {
                s(i, j) += w * v[i] * v[j];
            }
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int i = j + 1; i < d; ++i) {
            s(j, i) = s(i, j);
        }
    }
    return s;
}

namespace {

FrameBounds bounds_from(const Frame& frame, const Vector& descending, double eps) {
    FrameBounds b;
    b.upper = descending[0];
    b.lower = descending[descending.size() - 1];
    if (unweighted_unit_norm(frame, eps)) {
        const double average = static_cast<double>(frame.size()) / frame.dim();
        b.average_sandwiched = b.lower - 1e-9 <= average && average <= b.upper + 1e-9;
    }
    return b;
}

} // namespace

FrameBounds frame_bounds(const Frame& frame, double eps) {
    return bounds_from(frame, eigensystem(frame_operator(frame)).values, eps);
}

double lambda_by_sum(const Frame& frame, std::size_t k, double eps) {
    if (k >= frame.size()) {
        throw IndexOutOfRange("lambda_by_sum: index " + std::to_string(k) + " out of range");
    }
    if (!frame.is_unit_norm(eps)) {
        throw InvalidInput("lambda_by_sum: frame is not unit-norm");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < frame.size(); ++j) {
        const double ip = frame[k].dot(frame[j]);
        sum += frame.weight(j) * ip * ip;
    }
    return sum;
}

SpectralReport spectral_analysis(const Frame& frame, const Tolerances& tol) {
    SpectralReport report;
    report.frame_operator = frame_operator(frame);
    const Eigensystem eig = eigensystem(report.frame_operator);
    report.eigenvalues = eig.values;
    report.bounds = bounds_from(frame, eig.values, tol.match);

    const double a = report.bounds.lower;
    const double b = report.bounds.upper;
    const double gap = std::max(kClusterRelativeGap * b, kClusterAbsoluteGap);
    const Eigen::Index n = eig.values.size();
    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && eig.values[end - 1] - eig.values[end] <= gap) {
            ++end;
        }
        EigenCluster c;
        c.multiplicity = static_cast<int>(end - start);
        c.lambda = eig.values.segment(start, end - start).mean();
        c.basis = eig.vectors.middleCols(start, end - start);
        report.clusters.push_back(std::move(c));
        start = end;
    }

    const bool unit = frame.is_unit_norm(tol.match);
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const Vector& v = frame[k];
        const Vector sv = report.frame_operator * v;
        const double vn = v.norm();
        VectorFit fit;
        fit.residual = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < report.clusters.size(); ++c) {
            const double r = (sv - report.clusters[c].lambda * v).norm() / vn;
            if (r < fit.residual) {
                fit.residual = r;
                fit.cluster = c;
                fit.lambda = report.clusters[c].lambda;
            }
        }
        if (unit) {
            fit.lambda_by_sum = lambda_by_sum(frame, k, tol.match);
        }
        report.clusters[fit.cluster].members.push_back(k);
        report.max_residual = std::max(report.max_residual, fit.residual);
        report.per_vector.push_back(fit);
    }

    if (unit) {
        double worst = 0.0;
        for (const auto& fit : report.per_vector) {
            worst = std::max(worst, std::abs(*fit.lambda_by_sum - fit.lambda));
        }
        report.max_lambda_discrepancy = worst;
    }

    report.is_frame = a > tol.frame * b;
    report.is_tight = (b - a) / b <= kTightRelativeGap;
    report.is_eigenframe = report.max_residual <= kEigenResidualTolerance;
    return report;
}

namespace {

void require_eigenframe(const SpectralReport& spectral, const char* who) {
    if (!spectral.is_eigenframe) {
        throw NotAnEigenframe(std::string(who) + ": frame is not an eigenframe (worst eigen-residual " +
                                  std::to_string(spectral.max_residual) + ")",
                              spectral.max_residual);
    }
}

} // namespace

EigenframeDecomposition eigenframe_decomposition(const Frame& frame, const Tolerances& tol) {
    const SpectralReport spectral = spectral_analysis(frame, tol);
    require_eigenframe(spectral, "eigenframe_decomposition");

    EigenframeDecomposition out;
    std::vector<std::size_t> component_of(frame.size(), 0);
    Matrix projector_sum = Matrix::Zero(frame.dim(), frame.dim());
    for (const auto& cluster : spectral.clusters) {
        if (cluster.members.empty()) {
            continue;
        }
        EigenComponent comp;
        comp.lambda = cluster.lambda;
        comp.basis = cluster.basis;
        comp.members = cluster.members;
        const Matrix projector = comp.basis * comp.basis.transpose();
        Matrix rebuilt = Matrix::Zero(frame.dim(), frame.dim());
        for (std::size_t k : comp.members) {
            rebuilt += frame.weight(k) * frame[k] * frame[k].transpose();
            component_of[k] = out.components.size();
        }
        rebuilt /= comp.lambda;
        comp.projector_residual = max_abs(projector - rebuilt);
        out.max_projector_residual = std::max(out.max_projector_residual, comp.projector_residual);
        projector_sum += projector;
        out.components.push_back(std::move(comp));
    }
    out.projector_sum_residual = max_abs(projector_sum - Matrix::Identity(frame.dim(), frame.dim()));

    for (std::size_t i = 0; i < frame.size(); ++i) {
        for (std::size_t j = i + 1; j < frame.size(); ++j) {
            if (component_of[i] != component_of[j]) {
                out.cross_gram_norm = std::max(out.cross_gram_norm, std::abs(frame[i].dot(frame[j])));
            }
        }
    }
    out.verified =
        out.max_projector_residual <= kStructureTolerance && out.cross_gram_norm <= kStructureTolerance;
    return out;
}

ParsevalScaling parseval_scaling(const Frame& frame, const Tolerances& tol) {
    const SpectralReport spectral = spectral_analysis(frame, tol);
    if (!spectral.is_frame) {
        throw NotAFrame("parseval_scaling: frame operator is singular (smallest eigenvalue " +
                        std::to_string(spectral.bounds.lower) + ")");
    }
    require_eigenframe(spectral, "parseval_scaling");

    std::vector<double> weights(frame.size());
    double reciprocal_sum = 0.0;
    for (std::size_t k = 0; k < frame.size(); ++k) {
        weights[k] = frame.weight(k) / spectral.per_vector[k].lambda;
        reciprocal_sum += weights[k];
    }
    Frame scaled = frame.with_weights(std::move(weights));
    const double residual =
        max_abs(frame_operator(scaled) - Matrix::Identity(frame.dim(), frame.dim()));

    ParsevalScaling out{std::move(scaled), residual, reciprocal_sum, std::nullopt};
    if (frame.is_unit_norm(tol.match)) {
        out.reciprocal_sum_error = std::abs(reciprocal_sum - frame.dim());
    }
    return out;
}

RootFrameInvariants root_frame_invariants(const PositiveSystem& positives, const Tolerances& tol) {
    return root_frame_invariants(positives.parent(), positives.frame(), tol);
}

RootFrameInvariants root_frame_invariants(const RootSystem& parent, const Frame& positives,
                                          const Tolerances& tol) {
    if (!parent.is_unit_norm(tol.match) || !positives.is_unit_norm(tol.match)) {
        throw InvalidInput("root_frame_invariants: roots must be unit-norm");
    }
    if (positives.has_weights()) {
        throw InvalidInput("root_frame_invariants: weighted frames are not root frames");
    }
    if (positives.dim() != parent.dim() || 2 * positives.size() != parent.size()) {
        throw InvalidInput("root_frame_invariants: frame is not half of the root system");
    }
    const VectorIndex parent_index = make_index(parent.roots(), tol.match);
    {
        VectorIndex seen(parent.dim(), tol.match);
        for (std::size_t k = 0; k < positives.size(); ++k) {
            if (!parent_index.find(positives[k])) {
                throw InvalidInput("root_frame_invariants: vector " + std::to_string(k) +
                                   " is not a root");
            }
            if (!seen.insert_unique(sign_canonical(positives[k], tol.match)).second) {
                throw InvalidInput("root_frame_invariants: vector " + std::to_string(k) +
                                   " repeats a root up to sign");
            }
        }
    }

    const SpectralReport spectral = spectral_analysis(positives, tol);
    RootFrameInvariants out;
    out.is_frame = spectral.is_frame;
    out.is_tight = spectral.is_tight;
    out.bounds = spectral.bounds;

    const double n = static_cast<double>(positives.size());
    out.average = n / positives.dim();
    out.sandwich_ok = out.bounds.lower - 1e-9 <= out.average && out.average <= out.bounds.upper + 1e-9;
    out.trace_error = std::abs(spectral.frame_operator.trace() - n);
    out.trace_ok = out.trace_error <= 1e-9;

    for (const auto& cluster : spectral.clusters) {
        ClusterCount cc;
        cc.lambda = cluster.lambda;
        cc.dimension = cluster.multiplicity;
        cc.root_count = cluster.members.size();
        cc.product_error = std::abs(cc.lambda * cc.dimension - static_cast<double>(cc.root_count));
        out.counting_error = std::max(out.counting_error, cc.product_error);

        if (!cluster.members.empty()) {
            std::vector<Vector> members;
            for (std::size_t k : cluster.members) {
                members.push_back(positives[k]);
            }
            const std::vector<Vector> sub = sign_symmetrize(members, tol.match);
            cc.closed = verify_root_system(sub, tol.match).passed;
            const VectorIndex sub_index = make_index(sub, tol.match);
            for (const auto& gamma : parent.roots()) {
                for (const auto& alpha : members) {
                    if (!sub_index.find(reflect(gamma, alpha))) {
                        cc.invariant = false;
                    }
                }
            }
        }
        out.clusters.push_back(cc);
    }
    out.counting_ok = out.counting_error <= 1e-6;
    out.clusters_closed = std::all_of(out.clusters.begin(), out.clusters.end(),
                                      [](const ClusterCount& c) { return c.closed; });
    out.clusters_invariant = std::all_of(out.clusters.begin(), out.clusters.end(),
                                         [](const ClusterCount& c) { return c.invariant; });

    for (std::size_t i = 0; i < positives.size(); ++i) {
        for (std::size_t j = i + 1; j < positives.size(); ++j) {
            if (spectral.per_vector[i].cluster != spectral.per_vector[j].cluster) {
                out.cross_cluster_inner =
                    std::max(out.cross_cluster_inner, std::abs(positives[i].dot(positives[j])));
            }
        }
    }
    out.clusters_orthogonal = out.cross_cluster_inner <= kStructureTolerance;

    for (std::size_t k = 0; k < positives.size(); ++k) {
        const double lambda = *spectral.per_vector[k].lambda_by_sum;
        const Vector r = spectral.frame_operator * positives[k] - lambda * positives[k];
        out.eigen_residual = std::max(out.eigen_residual, r.norm());
    }
    out.eigenvector_ok = out.eigen_residual <= 1e-9;

    out.passed = out.counting_ok && out.sandwich_ok && out.trace_ok && out.clusters_orthogonal &&
                 out.clusters_closed && out.clusters_invariant && out.eigenvector_ok;
    return out;
}

SparkReport spark_obstruction(const Frame& frame, double eps) {
    if (frame.size() < 2) {
        throw InvalidInput("spark_obstruction: need at least two vectors");
    }
    VectorIndex signed_vectors(frame.dim(), eps);
    for (const auto& v : frame.vectors()) {
        signed_vectors.insert(v);
        signed_vectors.insert(-v);
    }

    SparkReport report;
    for (std::size_t k = 0; k < frame.size(); ++k) {
        for (std::size_t l = 0; l < frame.size(); ++l) {
            if (k == l || std::abs(frame[k].dot(frame[l])) <= eps) {
                continue;
            }
            ++report.pairs_checked;
            Vector image = reflect(frame[k], frame[l]);
            if (!signed_vectors.find(image)) {
                report.failures.push_back({k, l, clear_negative_zeros(std::move(image))});
            }
        }
    }
    report.passed = report.failures.empty();
    return report;
}

std::string to_string(BlockVerdict verdict) {
    switch (verdict) {
        case BlockVerdict::BlockDiagonal: return "block_diagonal";
        case BlockVerdict::NotBlockDiagonal: return "not_block_diagonal";
        case BlockVerdict::NotApplicable: return "not_applicable";
    }
    return "not_applicable";
}

GramAnalysis gram_analysis(const Frame& frame, const Tolerances& tol) {
    GramAnalysis out;
    const auto n = static_cast<Eigen::Index>(frame.size());
    out.gram.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            out.gram(i, j) = std::sqrt(frame.weight(ui) * frame.weight(uj)) * frame[ui].dot(frame[uj]);
        }
    }

    const SpectralReport spectral = spectral_analysis(frame, tol);
    if (!spectral.is_eigenframe) {
        return out;
    }
    for (const auto& cluster : spectral.clusters) {
        if (cluster.members.empty()) {
            continue;
        }
        out.order.insert(out.order.end(), cluster.members.begin(), cluster.members.end());
        out.block_sizes.push_back(cluster.members.size());
    }
    for (std::size_t i = 0; i < frame.size(); ++i) {
        for (std::size_t j = 0; j < frame.size(); ++j) {
            if (spectral.per_vector[i].cluster != spectral.per_vector[j].cluster) {
                out.max_cross_block = std::max(
                    out.max_cross_block,
                    std::abs(out.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
            }
        }
    }
    out.verdict = out.max_cross_block <= kStructureTolerance ? BlockVerdict::BlockDiagonal
                                                             : BlockVerdict::NotBlockDiagonal;
    return out;
}

MultiplicityReport multiplicity_bound_check(const Frame& frame, const Tolerances& tol) {
    const SpectralReport spectral = spectral_analysis(frame, tol);
    require_eigenframe(spectral, "multiplicity_bound_check");

    // Distinct vectors, u and -u kept apart.
    VectorIndex distinct(frame.dim(), tol.match);
    std::vector<std::size_t> first_index;
    std::vector<double> counts;
    for (std::size_t k = 0; k < frame.size(); ++k) {
        auto [id, inserted] = distinct.insert_unique(frame[k]);
        if (inserted) {
            first_index.push_back(k);
            counts.push_back(0.0);
        }
        counts[id] += frame.weight(k);
    }

    MultiplicityReport out;
    for (std::size_t id = 0; id < distinct.size(); ++id) {
        const std::size_t k = first_index[id];
        const Vector& u = frame[k];
        MultiplicityEntry e{};
        e.cluster = spectral.per_vector[k].cluster;
        e.representative = k;
        e.lambda = spectral.per_vector[k].lambda;
        e.count = counts[id];
        e.bound = e.count * u.squaredNorm();
        e.bound_holds = e.lambda >= e.bound - 1e-9;
        e.equality = std::abs(e.lambda - e.bound) <= 1e-9 * std::max(1.0, e.lambda);
        e.orthogonal = true;
        for (std::size_t other = 0; other < distinct.size(); ++other) {
            if (other != id && std::abs(u.dot(distinct[other])) > tol.match) {
                e.orthogonal = false;
            }
        }
        e.consistent = e.equality == e.orthogonal;
        out.entries.push_back(e);
    }

    for (const auto& cluster : spectral.clusters) {
        double mass = 0.0;
        for (std::size_t k : cluster.members) {
            mass += frame.weight(k) * frame[k].squaredNorm();
        }
        out.trace_errors.push_back(std::abs(cluster.lambda * cluster.multiplicity - mass));
    }

    out.passed = std::all_of(out.entries.begin(), out.entries.end(),
                             [](const MultiplicityEntry& e) { return e.bound_holds && e.consistent; });
    for (std::size_t c = 0; c < spectral.clusters.size(); ++c) {
        const double scale = std::max(1.0, spectral.clusters[c].lambda * spectral.clusters[c].multiplicity);
        if (out.trace_errors[c] > kStructureTolerance * scale) {
            out.passed = false;
        }
    }
    return out;
}

CommutationReport commutation_check(const Frame& frame) {
    const Matrix s = frame_operator(frame);
    const Eigensystem eig = eigensystem(s);
    CommutationReport out;
    out.threshold = kCommutatorRelativeTolerance * eig.values[0];
    for (const auto& v : frame.vectors()) {
        const Vector u = v / v.norm();
        const Matrix p = u * u.transpose();
        const Matrix sigma = Matrix::Identity(frame.dim(), frame.dim()) - 2.0 * p;
        out.reflection_commutator = std::max(out.reflection_commutator, max_abs(s * sigma - sigma * s));
        out.projection_commutator = std::max(out.projection_commutator, max_abs(s * p - p * s));
    }
    out.commutes = out.reflection_commutator <= out.threshold && out.projection_commutator <= out.threshold;
    return out;
}

} // namespace rootframe
