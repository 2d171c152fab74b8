#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rootframe/frame.hpp"
#include "rootframe/types.hpp"

namespace rootframe {

enum class Family { A, B, C, D, I2, Custom };

std::string to_string(Family family);
/// Accepts "A", "B", "C", "D", "I2" (case-insensitive) and "custom".
Family parse_family(std::string_view text);

/// Reflection through the hyperplane orthogonal to `axis`:
/// x - 2 <x, axis> / <axis, axis> * axis. Throws InvalidInput for a zero axis.
Vector reflect(const Vector& axis, const Vector& x);

/// Orthogonal reflection matrix I - 2 a a^T / <a, a>.
Matrix reflection_matrix(const Vector& axis);

struct ReflectionViolation {
    std::size_t alpha;  // index of the reflecting vector
    std::size_t beta;   // index of the reflected vector
    Vector reflected;   // sigma_alpha(beta), unmatched
};

struct RootSystemReport {
    bool passed = false;
    /// Indices whose negation is absent from the set.
    std::vector<std::size_t> missing_negatives;
    std::vector<ReflectionViolation> violations;
};

/// Checks sign symmetry and closure under every reflection sigma_alpha,
/// alpha in `vectors`, with per-coordinate tolerance `eps`. Every violating
/// ordered pair is reported. Throws InvalidInput on a zero or empty input.
RootSystemReport verify_root_system(std::span<const Vector> vectors, double eps = kMatchTolerance);

/// Adds the negation of every vector lacking one and drops near-duplicates.
/// Input order is kept; appended negatives follow.
std::vector<Vector> sign_symmetrize(std::span<const Vector> vectors, double eps = kMatchTolerance);

/// A finite, sign-symmetric set of nonzero vectors closed under its own
/// reflections.
class RootSystem {
public:
    /// Verifies the root-system axiom and throws InvalidInput naming the
    /// first violation when it fails.
    static RootSystem from_vectors(std::vector<Vector> roots, Family family = Family::Custom,
                                   double eps = kMatchTolerance);

    int dim() const { return dim_; }
    std::size_t size() const { return roots_.size(); }
    const std::vector<Vector>& roots() const { return roots_; }
    const Vector& operator[](std::size_t i) const { return roots_[i]; }
    Family family() const { return family_; }
    std::string tag() const { return to_string(family_); }
    bool is_unit_norm(double eps = kMatchTolerance) const;

private:
    RootSystem(int dim, std::vector<Vector> roots, Family family)
        : dim_(dim), roots_(std::move(roots)), family_(family) {}

    int dim_;
    std::vector<Vector> roots_;
    Family family_;
};

/// Classical root systems.
///
///   A_n  : e_i - e_j in R^(n+1), i != j   (n >= 1; spans only a hyperplane)
///   B_n  : +-e_i, +-e_i +- e_j in R^n     (n >= 2)
///   C_n  : +-2e_i, +-e_i +- e_j in R^n    (n >= 2)
///   D_n  : +-e_i +- e_j in R^n            (n >= 2)
///   I2(n): +-(-sin(j pi/n), cos(j pi/n)), j = 0..n-1, in R^2  (n >= 2)
///
/// Roots are emitted as (v, -v) pairs. With `normalize`, each root is divided
/// by its computed norm, so C_n and B_n coincide; the requested family is
/// still recorded. Throws InvalidParameter below a family's minimum rank.
RootSystem construct_classical(Family family, int rank_or_n, bool normalize);

/// Orthogonal union: roots of `a` in the leading coordinates, roots of `b`
/// in the trailing ones.
RootSystem direct_sum(const RootSystem& a, const RootSystem& b);

/// The half of a root system on the positive side of a functional beta.
class PositiveSystem {
public:
    const RootSystem& parent() const { return parent_; }
    const Vector& beta() const { return beta_; }
    /// Indices into parent().roots(), ascending.
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::vector<Vector> positives() const;
    std::size_t size() const { return indices_.size(); }
    /// The positives as an unweighted frame.
    Frame frame() const;

private:
    friend PositiveSystem positive_subsystem(const RootSystem&, std::optional<Vector>,
                                             std::optional<std::uint64_t>, double);
    PositiveSystem(RootSystem parent, Vector beta, std::vector<std::size_t> indices)
        : parent_(std::move(parent)), beta_(std::move(beta)), indices_(std::move(indices)) {}

    RootSystem parent_;
    Vector beta_;
    std::vector<std::size_t> indices_;
};

/// Selects {alpha : <alpha, beta> > 0}. Orthogonality to beta is judged on
/// the cosine |<alpha, beta>| / (|alpha| |beta|) <= eps, which makes the
/// test independent of the scale of beta.
///
/// Without `beta`, unit functionals are drawn from SplitMix64(seed or the
/// default seed) until one is non-degenerate, up to 64 attempts; the
/// accepted beta is recorded. Throws DegenerateFunctional for a supplied
/// degenerate beta and InternalError on retry exhaustion.
PositiveSystem positive_subsystem(const RootSystem& roots, std::optional<Vector> beta = std::nullopt,
                                  std::optional<std::uint64_t> seed = std::nullopt,
                                  double eps = kMatchTolerance);

/// Reflection-orbit classes of a root system, each a list of root indices.
/// Classes are ordered by their smallest member, members ascending.
struct OrbitPartition {
    std::vector<std::vector<std::size_t>> classes;

    /// Class id of each root.
    std::vector<std::size_t> class_of(std::size_t root_count) const;
};

OrbitPartition orbit_partition(const RootSystem& roots, double eps = kMatchTolerance);

struct ParameterViolation {
    std::size_t orbit;
    std::size_t root;
    double value;
    double reference;  // value at the smallest root index of the orbit
};

struct ParameterFunctionReport {
    bool passed = false;
    std::vector<ParameterViolation> violations;
};

/// Checks that a positive weight k (indexed like roots.roots()) is constant
/// on every reflection orbit within relative tolerance 1e-9. Throws
/// InvalidWeight on a nonpositive or non-finite weight and InvalidInput on a
/// size mismatch.
ParameterFunctionReport validate_parameter_function(const RootSystem& roots, std::span<const double> k,
                                                    double eps = kMatchTolerance);

} // namespace rootframe
