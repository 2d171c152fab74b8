#include "rootframe/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rootframe/closure.hpp"
#include "rootframe/errors.hpp"
#include "rootframe/frame_analysis.hpp"
#include "rootframe/io_formats.hpp"
#include "rootframe/root_systems.hpp"

namespace rootframe::cli {

namespace {

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

FrameDocument read_input(const std::string& path, Streams& io) {
    if (path.empty() || path == "-") {
        return read_frame_document(io.in);
    }
    return load_frame_document(path);
}

void write_text(const std::string& path, const std::string& text, Streams& io) {
    if (path.empty() || path == "-") {
        io.out << text;
        io.out.flush();
        if (!io.out) {
            throw IoError("write failure on standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("write failure on '" + path + "'");
    }
}

// A half-system qualifies for the root-frame checks when F u -F is a root
// system of exactly 2N unit vectors.
std::optional<RootSystem> parent_root_system(const Frame& frame, const Tolerances& tol) {
    if (frame.has_weights() || !frame.is_unit_norm(tol.match)) {
        return std::nullopt;
    }
    std::vector<Vector> sym = sign_symmetrize(frame.vectors(), tol.match);
    if (sym.size() != 2 * frame.size() || !verify_root_system(sym, tol.match).passed) {
        return std::nullopt;
    }
    return RootSystem::from_vectors(std::move(sym), Family::Custom, tol.match);
}

struct ConstructArgs {
    std::string family;
    int rank = 0;
    bool normalize = false;
    std::vector<double> beta;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int cmd_construct(const ConstructArgs& a, const Tolerances& tol, Streams& io) {
    const Family family = parse_family(a.family);
    const RootSystem roots = construct_classical(family, a.rank, a.normalize);
    std::optional<Vector> beta;
    if (!a.beta.empty()) {
        beta = Eigen::Map<const Vector>(a.beta.data(), static_cast<Eigen::Index>(a.beta.size()));
    }
    const PositiveSystem positives = positive_subsystem(roots, beta, a.seed, tol.match);
    const FrameDocument doc{positives.frame(), roots.tag(), positives.beta()};
    write_text(a.output, format_frame_document(doc), io);
    return kOk;
}

struct AnalyzeArgs {
    std::string input = "-";
    std::string output;
};

int cmd_analyze(const AnalyzeArgs& a, const Tolerances& tol, Streams& io) {
    const FrameDocument doc = read_input(a.input, io);
    const Frame& frame = doc.frame;
    ReportDocument report(doc);

    const SpectralReport spectral = spectral_analysis(frame, tol);
    report.add_spectral(spectral);
    report.add_commutation(commutation_check(frame));
    report.add_gram(gram_analysis(frame, tol));
    if (spectral.is_eigenframe) {
        report.add_decomposition(eigenframe_decomposition(frame, tol));
        report.add_multiplicity(multiplicity_bound_check(frame, tol));
    } else {
        report.verdicts()["decomposition"] = "not_applicable";
        report.verdicts()["multiplicity_bound"] = "not_applicable";
    }
    if (auto parent = parent_root_system(frame, tol)) {
        report.add_root_frame_invariants(root_frame_invariants(*parent, frame, tol));
    } else {
        report.verdicts()["root_frame_invariants"] = "not_applicable";
    }
    write_text(a.output, format_report(report), io);
    return kOk;
}

struct ScaleArgs {
    std::string input = "-";
    std::string output;
    std::string report;
};

int cmd_scale(const ScaleArgs& a, const Tolerances& tol, Streams& io) {
    const FrameDocument doc = read_input(a.input, io);
    const ParsevalScaling scaling = parseval_scaling(doc.frame, tol);
    const FrameDocument scaled{scaling.scaled, doc.tag, doc.beta};
    write_text(a.output, format_frame_document(scaled), io);
    if (!a.report.empty()) {
        ReportDocument report(doc);
        report.add_spectral(spectral_analysis(doc.frame, tol));
        report.add_parseval(scaling);
        write_text(a.report, format_report(report), io);
    }
    return kOk;
}

struct ClosureArgs {
    std::string input = "-";
    std::string output;
    std::string orbit_output;
    std::size_t max_vectors = 10000;
    std::size_t max_sweeps = 64;
    std::size_t max_group = 100000;
    bool enumerate_group = false;
};

int cmd_closure(const ClosureArgs& a, const Tolerances& tol, Streams& io) {
    const FrameDocument doc = read_input(a.input, io);
    RootFrameClosure result = is_root_frame_closure(doc.frame, {a.max_vectors, a.max_sweeps}, tol.match);
    std::optional<GroupEnumeration> group;
    if (a.enumerate_group && result.root_system) {
        group = group_enumerate(*result.root_system, a.max_group, tol.match);
        if (group->status == GroupStatus::Complete) {
            result.closure.group_order = group->order;
        }
    }
    if (result.closure.duplicates_collapsed > 0) {
        io.err << "warning: " << result.closure.duplicates_collapsed
               << " input vector(s) repeat another up to sign and were collapsed\n";
    }
    ReportDocument report(doc);
    report.add_closure(result, group);
    write_text(a.output, format_report(report), io);

    if (result.closure.closed()) {
        std::string orbit_path = a.orbit_output;
        if (orbit_path.empty() && !a.output.empty() && a.output != "-") {
            orbit_path = a.output + ".orbit.json";
        }
        if (!orbit_path.empty()) {
            const FrameDocument orbit{Frame(result.closure.signed_orbit()), std::string("closure"), std::nullopt};
            write_text(orbit_path, format_frame_document(orbit), io);
        }
    }
    return kOk;
}

struct VerifyArgs {
    std::string input = "-";
    std::string output;
};

int cmd_verify(const VerifyArgs& a, const Tolerances& tol, Streams& io) {
    const FrameDocument doc = read_input(a.input, io);
    const std::vector<Vector> sym = sign_symmetrize(doc.frame.vectors(), tol.match);
    const RootSystemReport closure = verify_root_system(sym, tol.match);

    ReportDocument report(doc);
    report.add_root_system_check(closure, sym);
    bool passed = closure.passed;
    if (doc.frame.size() >= 2) {
        const SparkReport spark = spark_obstruction(doc.frame, tol.match);
        report.add_spark(spark);
        passed = passed && spark.passed;
    }
    report.verdicts()["passed"] = passed;
    write_text(a.output, format_report(report), io);
    return passed ? kOk : kVerifyFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Streams io{in, out, err};
    CLI::App app{"Construct, verify and analyze root frames and eigenframes", "rootframe"};
    app.require_subcommand(1);

    double tol_value = kMatchTolerance;
    app.add_option("--tol", tol_value, "Matching tolerance and relative frame floor")
        ->check(CLI::PositiveNumber);

    ConstructArgs construct;
    auto* c = app.add_subcommand("construct", "Build a classical root system and write a positive subsystem");
    c->add_option("family", construct.family, "A, B, C, D or I2")->required();
    c->add_option("rank", construct.rank, "Rank (A, B, C, D) or n (I2)")->required();
    c->add_flag("--normalize", construct.normalize, "Scale every root to unit length");
    c->add_option("--beta", construct.beta, "Separating functional, comma separated")->delimiter(',');
    c->add_option("--seed", construct.seed, "Seed for the random functional");
    c->add_option("-o,--output", construct.output, "Output frame document (default stdout)");

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Spectral, eigenframe and root-frame analysis");
    an->add_option("input", analyze.input, "Frame document ('-' for stdin)");
    an->add_option("-o,--output", analyze.output, "Report document (default stdout)");

    ScaleArgs scale;
    auto* sc = app.add_subcommand("scale", "Rescale an eigenframe to a Parseval frame");
    sc->add_option("input", scale.input, "Frame document ('-' for stdin)");
    sc->add_option("-o,--output", scale.output, "Scaled frame document (default stdout)");
    sc->add_option("--report", scale.report, "Also write a report document here");

    ClosureArgs closure;
    auto* cl = app.add_subcommand("closure", "Reflection closure of a unit-norm frame");
    cl->add_option("input", closure.input, "Frame document ('-' for stdin)");
    cl->add_option("-o,--output", closure.output, "Report document (default stdout)");
    cl->add_option("--orbit-output", closure.orbit_output,
                   "Orbit frame document (default <output>.orbit.json when -o is a file)");
    cl->add_option("--max-vectors", closure.max_vectors, "Cap on the signed orbit size")->check(CLI::PositiveNumber);
    cl->add_option("--max-sweeps", closure.max_sweeps, "Cap on reflection sweeps")->check(CLI::PositiveNumber);
    cl->add_option("--max-group", closure.max_group, "Cap on enumerated group elements")->check(CLI::PositiveNumber);
    cl->add_flag("--enumerate-group", closure.enumerate_group, "Enumerate the reflection group");

    VerifyArgs verify;
    auto* ve = app.add_subcommand("verify", "Check the root-system axiom and the spark obstruction");
    ve->add_option("input", verify.input, "Frame document ('-' for stdin)");
    ve->add_option("-o,--output", verify.output, "Report document (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const Tolerances tol = Tolerances::uniform(tol_value);
    try {
        if (c->parsed()) return cmd_construct(construct, tol, io);
        if (an->parsed()) return cmd_analyze(analyze, tol, io);
        if (sc->parsed()) return cmd_scale(scale, tol, io);
        if (cl->parsed()) return cmd_closure(closure, tol, io);
        if (ve->parsed()) return cmd_verify(verify, tol, io);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kUsageError;
}

} // namespace rootframe::cli
