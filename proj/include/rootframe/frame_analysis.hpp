#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rootframe/frame.hpp"
#include "rootframe/root_systems.hpp"
#include "rootframe/types.hpp"

namespace rootframe {

// Fixed thresholds used by the analysis routines.
inline constexpr double kClusterRelativeGap = 1e-6;
inline constexpr double kClusterAbsoluteGap = 1e-12;
inline constexpr double kTightRelativeGap = 1e-9;
inline constexpr double kEigenResidualTolerance = 1e-8;
inline constexpr double kStructureTolerance = 1e-8;
inline constexpr double kParsevalTolerance = 1e-9;
inline constexpr double kCommutatorRelativeTolerance = 1e-9;

/// S = sum_k w_k phi_k phi_k^T, exactly symmetric.
Matrix frame_operator(const Frame& frame);

struct FrameBounds {
    double lower = 0.0;  // A, smallest eigenvalue of S
    double upper = 0.0;  // B, largest eigenvalue of S
    /// For unit-norm unweighted frames: whether A <= N/dim <= B held
    /// (within 1e-9). Empty otherwise.
    std::optional<bool> average_sandwiched;
};

FrameBounds frame_bounds(const Frame& frame, double eps = kMatchTolerance);

struct EigenCluster {
    double lambda = 0.0;               // mean of the clustered eigenvalues
    int multiplicity = 0;              // dim E_i
    Matrix basis;                      // dim x multiplicity, orthonormal columns
    std::vector<std::size_t> members;  // frame vectors assigned to this cluster
};

struct VectorFit {
    std::size_t cluster = 0;
    double lambda = 0.0;
    /// |S phi - lambda phi| / |phi|, minimised over clusters.
    double residual = 0.0;
    /// sum_j w_j <phi_k, phi_j>^2, present for unit-norm frames.
    std::optional<double> lambda_by_sum;
};

struct SpectralReport {
    Matrix frame_operator;
    Vector eigenvalues;  // descending
    std::vector<EigenCluster> clusters;  // descending by lambda
    std::vector<VectorFit> per_vector;
    FrameBounds bounds;
    bool is_frame = false;
    bool is_tight = false;
    bool is_eigenframe = false;
    double max_residual = 0.0;
    /// max_k |lambda_by_sum(k) - assigned lambda|, unit-norm frames only.
    std::optional<double> max_lambda_discrepancy;
};

/// Full symmetric eigendecomposition of the frame operator.
///
/// Eigenvalues are sorted descending and split into clusters wherever two
/// consecutive values differ by more than max(1e-6 B, 1e-12). Each frame
/// vector is assigned to the cluster minimising its eigen-residual (not the
/// nearest eigenvalue). Verdicts:
///   is_frame      A > tol.frame * B
///   is_tight      (B - A) / B <= 1e-9
///   is_eigenframe every residual <= 1e-8
SpectralReport spectral_analysis(const Frame& frame, const Tolerances& tol = {});

/// sum_j w_j <phi_k, phi_j>^2. Requires a unit-norm frame (InvalidInput
/// otherwise) and k < N (IndexOutOfRange).
double lambda_by_sum(const Frame& frame, std::size_t k, double eps = kMatchTolerance);

struct EigenComponent {
    double lambda = 0.0;
    Matrix basis;                      // orthonormal basis of W_i
    std::vector<std::size_t> members;  // indices of Phi_i
    /// max-entry gap between the eigenprojector onto W_i and
    /// (1/lambda) sum_{members} w phi phi^T.
    double projector_residual = 0.0;
};

struct EigenframeDecomposition {
    std::vector<EigenComponent> components;
    /// max |<phi, psi>| over vectors in different components.
    double cross_gram_norm = 0.0;
    double max_projector_residual = 0.0;
    /// max-entry gap between sum of component projectors and the identity.
    double projector_sum_residual = 0.0;
    /// projector identity and cross-Gram both within 1e-8.
    bool verified = false;
};

/// Splits an eigenframe into mutually orthogonal tight components, one per
/// eigenvalue cluster that has members. Throws NotAnEigenframe (carrying the
/// worst residual) when the frame is not an eigenframe.
EigenframeDecomposition eigenframe_decomposition(const Frame& frame, const Tolerances& tol = {});

struct ParsevalScaling {
    Frame scaled;           // same vectors, weights w_k / lambda_k
    double residual = 0.0;  // |sum w' phi phi^T - I|_max
    double reciprocal_sum = 0.0;  // sum_k w_k / lambda_k
    /// |reciprocal_sum - dim|, unit-norm frames only.
    std::optional<double> reciprocal_sum_error;
};

/// Canonical-dual rescaling of an eigenframe to a Parseval frame.
/// Throws NotAFrame when S is singular, NotAnEigenframe when some vector is
/// not an eigenvector of S.
ParsevalScaling parseval_scaling(const Frame& frame, const Tolerances& tol = {});

struct ClusterCount {
    double lambda = 0.0;
    int dimension = 0;
    std::size_t root_count = 0;
    double product_error = 0.0;  // |lambda * dimension - root_count|
    /// R_i u -R_i satisfies the root-system axiom (vacuous for empty R_i).
    bool closed = true;
    /// sigma_gamma(R_i) is contained in +-R_i for every root gamma.
    bool invariant = true;
};

struct RootFrameInvariants {
    bool is_frame = false;
    bool is_tight = false;  // operational regularity
    FrameBounds bounds;
    std::vector<ClusterCount> clusters;
    double counting_error = 0.0;
    bool counting_ok = false;
    double average = 0.0;  // #R+ / d
    bool sandwich_ok = false;
    double trace_error = 0.0;
    bool trace_ok = false;
    double cross_cluster_inner = 0.0;
    bool clusters_orthogonal = false;
    bool clusters_closed = false;
    bool clusters_invariant = false;
    /// max_alpha |S alpha - lambda_by_sum(alpha) alpha|
    double eigen_residual = 0.0;
    bool eigenvector_ok = false;
    /// Every check above except is_frame / is_tight, which are verdicts.
    bool passed = false;
};

/// Structural identities of a root frame. Singular frames are flagged
/// through is_frame rather than rejected. Requires unit-norm roots.
RootFrameInvariants root_frame_invariants(const PositiveSystem& positives, const Tolerances& tol = {});

/// Same, for a half-system given as a frame. Every vector of `positives`
/// must be a root of `parent` and exactly half the roots must be present.
RootFrameInvariants root_frame_invariants(const RootSystem& parent, const Frame& positives,
                                          const Tolerances& tol = {});

struct SparkFailure {
    std::size_t k;
    std::size_t l;
    Vector reflected;  // sigma_{phi_k}(phi_l), matching no +-phi_j
};

struct SparkReport {
    std::size_t pairs_checked = 0;
    std::vector<SparkFailure> failures;
    bool passed = false;
    /// Passing is necessary, not sufficient, for F u -F to be a root system.
    static constexpr const char* kNote =
        "an empty failure list is necessary but not sufficient for the frame to lie in a root system";
};

/// For each ordered pair k != l with |<phi_k, phi_l>| > eps, checks that
/// sigma_{phi_k}(phi_l) equals +-phi_j for some j. Throws InvalidInput when
/// the frame has fewer than two vectors.
SparkReport spark_obstruction(const Frame& frame, double eps = kMatchTolerance);

enum class BlockVerdict { BlockDiagonal, NotBlockDiagonal, NotApplicable };

std::string to_string(BlockVerdict verdict);

struct GramAnalysis {
    Matrix gram;  // sqrt(w_k w_l) <phi_k, phi_l>, input order
    BlockVerdict verdict = BlockVerdict::NotApplicable;
    /// Indices ordered by eigenvalue cluster (stable); empty if not applicable.
    std::vector<std::size_t> order;
    std::vector<std::size_t> block_sizes;
    double max_cross_block = 0.0;
};

GramAnalysis gram_analysis(const Frame& frame, const Tolerances& tol = {});

struct MultiplicityEntry {
    std::size_t cluster;
    std::size_t representative;  // first index of this distinct vector
    double lambda;
    /// Number of appearances of u (weighted: sum of their weights).
    double count;
    double bound;  // count * |u|^2
    bool bound_holds;
    bool equality;
    bool orthogonal;  // u is eps-orthogonal to every other distinct vector
    bool consistent;  // equality == orthogonal
};

struct MultiplicityReport {
    std::vector<MultiplicityEntry> entries;
    /// Per cluster: |lambda d - sum_{members} w |phi|^2|.
    std::vector<double> trace_errors;
    bool passed = false;
};

/// Multiplicity lower bound lambda >= c(u) |u|^2 for every distinct vector u
/// (u and -u are distinct), with its equality case, plus the per-cluster
/// trace identity. Throws NotAnEigenframe when the frame is not one.
MultiplicityReport multiplicity_bound_check(const Frame& frame, const Tolerances& tol = {});

struct CommutationReport {
    double reflection_commutator = 0.0;  // max_k |S sigma_k - sigma_k S|_max
    double projection_commutator = 0.0;  // max_k |S u u^T - u u^T S|_max, u = phi/|phi|
    double threshold = 0.0;              // 1e-9 B
    bool commutes = false;
};

CommutationReport commutation_check(const Frame& frame);

} // namespace rootframe
