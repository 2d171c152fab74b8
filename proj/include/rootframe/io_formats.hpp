#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rootframe/closure.hpp"
#include "rootframe/frame.hpp"
#include "rootframe/frame_analysis.hpp"
#include "rootframe/root_systems.hpp"

namespace rootframe {

inline constexpr int kFormatVersion = 1;

/// Frame interchange document.
///
///   {
///     "format_version": 1,
///     "dim": 2,
///     "vectors": [[1.0, 0.0], [0.0, 1.0]],
///     "weights": [1.0, 1.0],      (optional)
///     "tag": "B",                 (optional)
///     "beta": [2.0, 1.0]          (optional)
///   }
///
/// Unknown fields are rejected. Numbers are written with 17 significant
/// digits so every double survives a write/read cycle bit for bit.
struct FrameDocument {
    Frame frame;
    std::optional<std::string> tag;
    std::optional<Vector> beta;
};

/// Throws ParseError (malformed text, with line number), VersionError
/// (format_version != 1) or ValidationError (naming the offending field).
FrameDocument parse_frame_document(std::string_view text);
FrameDocument read_frame_document(std::istream& in);
FrameDocument load_frame_document(const std::filesystem::path& path);

std::string format_frame_document(const FrameDocument& doc);
void write_frame_document(const FrameDocument& doc, std::ostream& out);
void save_frame_document(const FrameDocument& doc, const std::filesystem::path& path);

Frame load_frame(const std::filesystem::path& path);
void save_frame(const Frame& frame, const std::filesystem::path& path);

/// "fnv1a64:" followed by 16 hex digits of FNV-1a over the canonical text.
std::string document_digest(const FrameDocument& doc);

/// Shortest text with 17 significant digits that always carries a decimal
/// point or exponent, so integral values read back as floating point.
std::string format_number(double value);

using OrderedJson = nlohmann::ordered_json;

/// Canonical text of a JSON value: fixed two-space indentation, scalar
/// arrays on one line, 17-digit floats. Throws InternalError on NaN/inf.
std::string canonical_dump(const OrderedJson& value);

/// Structured report document.
///
/// Top-level fields, in order: format_version, subject, verdicts,
/// eigen_clusters, residuals, failures and, for closure runs, closure.
class ReportDocument {
public:
    explicit ReportDocument(const FrameDocument& subject);

    OrderedJson& verdicts() { return root_["verdicts"]; }
    OrderedJson& eigen_clusters() { return root_["eigen_clusters"]; }
    OrderedJson& residuals() { return root_["residuals"]; }
    OrderedJson& failures() { return root_["failures"]; }
    OrderedJson& closure();

    const OrderedJson& json() const { return root_; }

    void add_spectral(const SpectralReport& report);
    void add_root_frame_invariants(const RootFrameInvariants& inv);
    void add_gram(const GramAnalysis& gram);
    void add_commutation(const CommutationReport& report);
    void add_multiplicity(const MultiplicityReport& report);
    void add_decomposition(const EigenframeDecomposition& dec);
    void add_parseval(const ParsevalScaling& scaling);
    void add_root_system_check(const RootSystemReport& report, std::span<const Vector> vectors);
    void add_spark(const SparkReport& report);
    void add_closure(const RootFrameClosure& result, const std::optional<GroupEnumeration>& group);
    void add_failure(OrderedJson witness);

private:
    OrderedJson root_;
};

std::string format_report(const ReportDocument& report);
void emit_report(const ReportDocument& report, std::ostream& out);

/// Wraps `v` as a JSON array of floats.
OrderedJson to_json(const Vector& v);

} // namespace rootframe
