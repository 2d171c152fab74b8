#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rootframe/frame.hpp"
#include "rootframe/root_systems.hpp"
#include "rootframe/types.hpp"

namespace rootframe {

struct ClosureCaps {
    std::size_t max_vectors = 10000;
    std::size_t max_sweeps = 64;
};

enum class ClosureStatus { Closed, CapExceeded };

std::string to_string(ClosureStatus status);

struct ClosureResult {
    ClosureStatus status = ClosureStatus::CapExceeded;
    /// Sign-canonical representatives, one per +- pair; empty unless closed.
    std::vector<Vector> orbit;
    /// Size counting +- pairs as two vectors.
    std::size_t orbit_size = 0;
    /// Number of sweeps run.
    std::size_t iterations = 0;
    /// Signed orbit size before the first sweep and after each sweep.
    std::vector<std::size_t> growth_trace;
    std::optional<std::size_t> group_order;
    /// Input vectors dropped because they repeat another up to sign.
    std::size_t duplicates_collapsed = 0;

    bool closed() const { return status == ClosureStatus::Closed; }
    /// orbit u -orbit, each pair adjacent.
    std::vector<Vector> signed_orbit() const;
};

/// Fixed-point reflection sweep over sign-canonical unit vectors.
///
/// Starting from the input directions, each sweep adds sigma_v(w) for all
/// v, w currently held. Since sigma_{g phi} = g sigma_phi g^-1, the set
/// reached at the fixed point is the orbit of the input under the group
/// generated by its own reflections. The sweep stops with CapExceeded as
/// soon as the signed size passes `caps.max_vectors` or the sweep count
/// passes `caps.max_sweeps`; that outcome means "unknown", never "infinite".
///
/// Throws InvalidInput for vectors that are not unit-norm within eps.
ClosureResult reflection_closure(const Frame& frame, const ClosureCaps& caps = {},
                                 double eps = kMatchTolerance);

enum class RootFrameVerdict { Yes, NoSpan, UnknownCap };

std::string to_string(RootFrameVerdict verdict);

struct RootFrameClosure {
    RootFrameVerdict verdict = RootFrameVerdict::UnknownCap;
    ClosureResult closure;
    std::optional<RootSystem> root_system;
    std::optional<PositiveSystem> positives;
    /// Input vectors that appear in `positives` with their own sign.
    std::size_t input_directions_kept = 0;
};

/// Runs reflection_closure and classifies the outcome: Yes when the orbit is
/// closed and spans R^dim (smallest singular value > 1e-9), NoSpan when it is
/// closed but degenerate, UnknownCap otherwise. For Yes the positive system
/// is chosen, over a seeded search of functionals, to keep as many input
/// vectors as possible with their given sign.
RootFrameClosure is_root_frame_closure(const Frame& frame, const ClosureCaps& caps = {},
                                       double eps = kMatchTolerance);

enum class GroupStatus { Complete, CapExceeded };

struct GroupEnumeration {
    GroupStatus status = GroupStatus::CapExceeded;
    /// Number of elements found; the group order when complete.
    std::size_t order = 0;
    /// g R = R for every enumerated element g (checked when complete).
    bool preserves_roots = false;
};

/// Breadth-first enumeration of the group generated by the reflections of a
/// positive subsystem, deduplicating matrices on a 1e-8 grid of entries.
GroupEnumeration group_enumerate(const RootSystem& roots, std::size_t max_elements = 100000,
                                 double eps = kMatchTolerance);

} // namespace rootframe
