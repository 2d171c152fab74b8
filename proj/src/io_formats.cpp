#include "rootframe/io_formats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rootframe/errors.hpp"

namespace rootframe {

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        throw InternalError("format_number: non-finite value");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string text(buf);
    if (text.find_first_of(".eE") == std::string::npos) {
        text += ".0";
    }
    return text;
}

namespace {

bool is_scalar(const OrderedJson& v) {
    return !v.is_array() && !v.is_object();
}

void dump_value(const OrderedJson& v, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
        case OrderedJson::value_t::number_float:
            out += format_number(v.get<double>());
            return;
        case OrderedJson::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            if (std::all_of(v.begin(), v.end(), is_scalar)) {
                out += '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    dump_value(v[i], out, depth + 1);
                }
                out += ']';
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad;
                dump_value(v[i], out, depth + 1);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            out += close_pad + ']';
            return;
        }
        case OrderedJson::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += pad + OrderedJson(it.key()).dump() + ": ";
                dump_value(it.value(), out, depth + 1);
                out += i + 1 < v.size() ? ",\n" : "\n";
            }
            out += close_pad + '}';
            return;
        }
        default:
            out += v.dump();
            return;
    }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

double number_at(const OrderedJson& v, const std::string& field) {
    if (!v.is_number()) {
        throw ValidationError(field + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ValidationError(field + ": non-finite number");
    }
    return x;
}

Vector vector_at(const OrderedJson& v, const std::string& field, std::int64_t dim) {
    if (!v.is_array()) {
        throw ValidationError(field + ": expected a list of numbers");
    }
    if (static_cast<std::int64_t>(v.size()) != dim) {
        throw ValidationError(field + ": has " + std::to_string(v.size()) + " entries, expected " +
                              std::to_string(dim));
    }
    Vector out(dim);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = number_at(v[i], field + "[" + std::to_string(i) + "]");
    }
    return out;
}

} // namespace

std::string canonical_dump(const OrderedJson& value) {
    std::string out;
    dump_value(value, out, 0);
    out += '\n';
    return out;
}

OrderedJson to_json(const Vector& v) {
    OrderedJson arr = OrderedJson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

FrameDocument parse_frame_document(std::string_view text) {
    OrderedJson root;
    try {
        root = OrderedJson::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ValidationError("document: expected an object at top level");
    }
    static const char* const kKnown[] = {"format_version", "dim", "vectors", "weights", "tag", "beta"};
    for (auto it = root.begin(); it != root.end(); ++it) {
        if (std::find(std::begin(kKnown), std::end(kKnown), it.key()) == std::end(kKnown)) {
            throw ValidationError(it.key() + ": unknown field");
        }
    }

    if (!root.contains("format_version")) {
        throw ValidationError("format_version: missing");
    }
    const auto& version = root["format_version"];
    if (!version.is_number_integer()) {
        throw ValidationError("format_version: expected an integer");
    }
    if (version.get<std::int64_t>() != kFormatVersion) {
        throw VersionError("format_version: unsupported version " + version.dump());
    }

    if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<std::int64_t>() <= 0) {
        throw ValidationError("dim: expected a positive integer");
    }
    const auto dim = root["dim"].get<std::int64_t>();

    if (!root.contains("vectors") || !root["vectors"].is_array() || root["vectors"].empty()) {
        throw ValidationError("vectors: expected a non-empty list of rows");
    }
    std::vector<Vector> vectors;
    for (std::size_t k = 0; k < root["vectors"].size(); ++k) {
        const std::string field = "vectors[" + std::to_string(k) + "]";
        Vector v = vector_at(root["vectors"][k], field, dim);
        if (v.isZero(0.0)) {
            throw ValidationError(field + ": zero vector");
        }
        vectors.push_back(std::move(v));
    }

    std::optional<std::vector<double>> weights;
    if (root.contains("weights")) {
        const auto& w = root["weights"];
        if (!w.is_array() || w.size() != vectors.size()) {
            throw ValidationError("weights: expected " + std::to_string(vectors.size()) + " numbers");
        }
        weights.emplace();
        for (std::size_t k = 0; k < w.size(); ++k) {
            const std::string field = "weights[" + std::to_string(k) + "]";
            const double x = number_at(w[k], field);
            if (!(x > 0.0)) {
                throw ValidationError(field + ": must be positive");
            }
            weights->push_back(x);
        }
    }

    std::optional<std::string> tag;
    if (root.contains("tag")) {
        if (!root["tag"].is_string()) {
            throw ValidationError("tag: expected a string");
        }
        tag = root["tag"].get<std::string>();
    }

    std::optional<Vector> beta;
    if (root.contains("beta")) {
        beta = vector_at(root["beta"], "beta", dim);
    }

    try {
        return FrameDocument{Frame(std::move(vectors), std::move(weights)), std::move(tag), std::move(beta)};
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
}

FrameDocument read_frame_document(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) {
        throw IoError("read failure");
    }
    return parse_frame_document(text);
}

FrameDocument load_frame_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return read_frame_document(in);
}

std::string format_frame_document(const FrameDocument& doc) {
    OrderedJson root;
    root["format_version"] = kFormatVersion;
    root["dim"] = doc.frame.dim();
    OrderedJson rows = OrderedJson::array();
    for (const auto& v : doc.frame.vectors()) {
        rows.push_back(to_json(v));
    }
    root["vectors"] = std::move(rows);
    if (doc.frame.has_weights()) {
        OrderedJson w = OrderedJson::array();
        for (double x : *doc.frame.weights()) {
            w.push_back(x);
        }
        root["weights"] = std::move(w);
    }
    if (doc.tag) {
        root["tag"] = *doc.tag;
    }
    if (doc.beta) {
        root["beta"] = to_json(*doc.beta);
    }
    return canonical_dump(root);
}

void write_frame_document(const FrameDocument& doc, std::ostream& out) {
    out << format_frame_document(doc);
    out.flush();
    if (!out) {
        throw IoError("write failure");
    }
}

void save_frame_document(const FrameDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_frame_document(doc, out);
}

Frame load_frame(const std::filesystem::path& path) {
    return load_frame_document(path).frame;
}

void save_frame(const Frame& frame, const std::filesystem::path& path) {
    save_frame_document(FrameDocument{frame, std::nullopt, std::nullopt}, path);
}

std::string document_digest(const FrameDocument& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : format_frame_document(doc)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

ReportDocument::ReportDocument(const FrameDocument& subject) {
    root_["format_version"] = kFormatVersion;
    OrderedJson s;
    s["digest"] = document_digest(subject);
    s["dim"] = subject.frame.dim();
    s["count"] = subject.frame.size();
    if (subject.tag) {
        s["tag"] = *subject.tag;
    }
    root_["subject"] = std::move(s);
    root_["verdicts"] = OrderedJson::object();
    root_["eigen_clusters"] = OrderedJson::array();
    root_["residuals"] = OrderedJson::object();
    root_["failures"] = OrderedJson::array();
}

OrderedJson& ReportDocument::closure() {
    if (!root_.contains("closure")) {
        root_["closure"] = OrderedJson::object();
    }
    return root_["closure"];
}

void ReportDocument::add_failure(OrderedJson witness) {
    failures().push_back(std::move(witness));
}

void ReportDocument::add_spectral(const SpectralReport& report) {
    verdicts()["is_frame"] = report.is_frame;
    verdicts()["is_tight"] = report.is_tight;
    verdicts()["is_eigenframe"] = report.is_eigenframe;
    if (report.bounds.average_sandwiched) {
        verdicts()["bounds_sandwich_average"] = *report.bounds.average_sandwiched;
    }
    eigen_clusters() = OrderedJson::array();
    for (const auto& c : report.clusters) {
        eigen_clusters().push_back(OrderedJson::array({c.lambda + 0.0, c.multiplicity}));
    }
    residuals()["lower_bound"] = report.bounds.lower + 0.0;
    residuals()["upper_bound"] = report.bounds.upper + 0.0;
    residuals()["eigenvector"] = report.max_residual;
    if (report.max_lambda_discrepancy) {
        residuals()["lambda_two_ways"] = *report.max_lambda_discrepancy;
    }
    for (std::size_t k = 0; k < report.per_vector.size(); ++k) {
        if (report.per_vector[k].residual > kEigenResidualTolerance) {
            add_failure({{"check", "eigenvector"},
                         {"indices", OrderedJson::array({k})},
                         {"value", report.per_vector[k].residual}});
        }
    }
}

void ReportDocument::add_root_frame_invariants(const RootFrameInvariants& inv) {
    verdicts()["root_frame_invariants"] = inv.passed;
    verdicts()["regular"] = inv.is_tight;
    residuals()["counting_identity"] = inv.counting_error;
    residuals()["trace_identity"] = inv.trace_error;
    residuals()["cross_cluster_inner"] = inv.cross_cluster_inner;
    residuals()["eigenvector_by_sum"] = inv.eigen_residual;
    for (std::size_t c = 0; c < inv.clusters.size(); ++c) {
        const auto& cc = inv.clusters[c];
        if (cc.product_error > 1e-6 || !cc.closed || !cc.invariant) {
            add_failure({{"check", "root_cluster"},
                         {"indices", OrderedJson::array({c})},
                         {"lambda", cc.lambda},
                         {"dimension", cc.dimension},
                         {"root_count", cc.root_count},
                         {"closed", cc.closed},
                         {"invariant", cc.invariant}});
        }
    }
    if (!inv.sandwich_ok) {
        add_failure({{"check", "bounds_sandwich"}, {"value", inv.average}});
    }
}

void ReportDocument::add_gram(const GramAnalysis& gram) {
    verdicts()["gram"] = to_string(gram.verdict);
    if (gram.verdict != BlockVerdict::NotApplicable) {
        residuals()["gram_cross_block"] = gram.max_cross_block;
    }
}

void ReportDocument::add_commutation(const CommutationReport& report) {
    verdicts()["commutes"] = report.commutes;
    residuals()["reflection_commutator"] = report.reflection_commutator;
    residuals()["projection_commutator"] = report.projection_commutator;
}

void ReportDocument::add_multiplicity(const MultiplicityReport& report) {
    verdicts()["multiplicity_bound"] = report.passed;
    double worst = 0.0;
    for (double e : report.trace_errors) {
        worst = std::max(worst, e);
    }
    residuals()["cluster_trace_identity"] = worst;
    for (const auto& e : report.entries) {
        if (!e.bound_holds || !e.consistent) {
            add_failure({{"check", "multiplicity_bound"},
                         {"indices", OrderedJson::array({e.representative})},
                         {"lambda", e.lambda},
                         {"bound", e.bound},
                         {"equality", e.equality},
                         {"orthogonal", e.orthogonal}});
        }
    }
}

void ReportDocument::add_decomposition(const EigenframeDecomposition& dec) {
    verdicts()["decomposition"] = dec.verified;
    residuals()["projector_identity"] = dec.max_projector_residual;
    residuals()["cross_gram"] = dec.cross_gram_norm;
    residuals()["projector_sum"] = dec.projector_sum_residual;
}

void ReportDocument::add_parseval(const ParsevalScaling& scaling) {
    verdicts()["parseval"] = scaling.residual <= kParsevalTolerance;
    residuals()["parseval"] = scaling.residual;
    residuals()["reciprocal_sum"] = scaling.reciprocal_sum;
    if (scaling.reciprocal_sum_error) {
        verdicts()["reciprocal_sum_equals_dim"] = *scaling.reciprocal_sum_error <= 1e-8;
        residuals()["reciprocal_sum_vs_dim"] = *scaling.reciprocal_sum_error;
    }
}

void ReportDocument::add_root_system_check(const RootSystemReport& report, std::span<const Vector> vectors) {
    verdicts()["root_system"] = report.passed;
    for (std::size_t i : report.missing_negatives) {
        add_failure({{"check", "sign_symmetry"}, {"indices", OrderedJson::array({i})}, {"vector", to_json(vectors[i])}});
    }
    for (const auto& v : report.violations) {
        add_failure({{"check", "reflection_closure"},
                     {"indices", OrderedJson::array({v.alpha, v.beta})},
                     {"vector", to_json(v.reflected)}});
    }
}

void ReportDocument::add_spark(const SparkReport& report) {
    verdicts()["spark_obstruction_clear"] = report.passed;
    verdicts()["spark_note"] = SparkReport::kNote;
    for (const auto& f : report.failures) {
        add_failure({{"check", "spark"},
                     {"indices", OrderedJson::array({f.k, f.l})},
                     {"vector", to_json(f.reflected)}});
    }
}

void ReportDocument::add_closure(const RootFrameClosure& result, const std::optional<GroupEnumeration>& group) {
    verdicts()["root_frame"] = to_string(result.verdict);
    OrderedJson& c = closure();
    c["status"] = to_string(result.closure.status);
    c["orbit_size"] = result.closure.orbit_size;
    c["iterations"] = result.closure.iterations;
    c["growth_trace"] = result.closure.growth_trace;
    if (group) {
        if (group->status == GroupStatus::Complete) {
            c["group_order"] = group->order;
            verdicts()["group_preserves_roots"] = group->preserves_roots;
        } else {
            c["group_order"] = nullptr;
            c["group_cap_exceeded"] = true;
        }
    }
    c["duplicates_collapsed"] = result.closure.duplicates_collapsed;
    if (result.closure.closed()) {
        const std::vector<Vector> signed_orbit = result.closure.signed_orbit();
        OrderedJson rows = OrderedJson::array();
        for (const auto& v : signed_orbit) {
            rows.push_back(to_json(v));
        }
        OrderedJson orbit;
        orbit["format_version"] = kFormatVersion;
        orbit["dim"] = signed_orbit.front().size();
        orbit["vectors"] = std::move(rows);
        orbit["tag"] = "closure";
        c["orbit"] = std::move(orbit);
    }
}

std::string format_report(const ReportDocument& report) {
    return canonical_dump(report.json());
}

void emit_report(const ReportDocument& report, std::ostream& out) {
    out << format_report(report);
    out.flush();
    if (!out) {
        throw IoError("write failure");
    }
}

} // namespace rootframe
