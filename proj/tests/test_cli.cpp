#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rootframe/cli.hpp"
#include "rootframe/io_formats.hpp"
#include "rootframe/random.hpp"
#include "test_support.hpp"

using namespace rootframe;
using namespace rootframe::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string doc_text(const std::vector<Vector>& vs) {
    return format_frame_document(FrameDocument{Frame(vs), std::nullopt, std::nullopt});
}

OrderedJson parse(const std::string& text) {
    return OrderedJson::parse(text);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rootframe_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("construct") {
    const Run b3 = run_cli({"construct", "B", "3", "--normalize"});
    REQUIRE(b3.code == 0);
    const FrameDocument doc = parse_frame_document(b3.out);
    CHECK(doc.frame.size() == 9);
    CHECK(doc.frame.dim() == 3);
    CHECK(doc.tag == "B");
    CHECK(doc.beta.has_value());
    CHECK(doc.frame.is_unit_norm(1e-12));

    const Run i5 = run_cli({"construct", "I2", "5"});
    REQUIRE(i5.code == 0);
    CHECK(parse_frame_document(i5.out).frame.size() == 5);

    const Run a2 = run_cli({"construct", "A", "2"});
    REQUIRE(a2.code == 0);
    const FrameDocument a = parse_frame_document(a2.out);
    CHECK(a.frame.size() == 3);
    CHECK(a.frame.dim() == 3);

    const Run beta = run_cli({"construct", "B", "2", "--normalize", "--beta", "2,1"});
    REQUIRE(beta.code == 0);
    const FrameDocument bd = parse_frame_document(beta.out);
    CHECK(*bd.beta == vec({2.0, 1.0}));
    for (const auto& v : bd.frame.vectors()) {
        CHECK(v.dot(*bd.beta) > 0.0);
    }
}

TEST_CASE("construct: errors and determinism") {
    CHECK(run_cli({"construct", "X", "3"}).code == 2);
    CHECK(run_cli({"construct", "B", "1"}).code == 2);
    CHECK(run_cli({"construct", "B", "0"}).code == 2);
    CHECK(run_cli({"construct", "B"}).code == 2);
    CHECK(run_cli({"construct", "B", "2", "--beta", "1,1"}).code == 2);  // orthogonal to a root
    CHECK(run_cli({"construct", "B", "2", "--beta", "1,2,3"}).code == 2);
    CHECK(run_cli({"construct", "D", "4", "--seed", "11"}).out == run_cli({"construct", "D", "4", "--seed", "11"}).out);
    CHECK(run_cli({"construct", "D", "4"}).out == run_cli({"construct", "D", "4"}).out);
}

TEST_CASE("analyze") {
    const Run b2 = run_cli({"analyze", "-"}, doc_text(b2_positives()));
    REQUIRE(b2.code == 0);
    const auto j = parse(b2.out);
    CHECK(j["verdicts"]["is_frame"] == true);
    CHECK(j["verdicts"]["is_tight"] == true);
    CHECK(j["verdicts"]["is_eigenframe"] == true);
    CHECK(j["verdicts"]["root_frame_invariants"] == true);
    CHECK(j["eigen_clusters"] == OrderedJson::parse("[[2.0, 2]]"));

    const Run a2 = run_cli({"analyze"}, doc_text(a2_positives()));
    REQUIRE(a2.code == 0);
    CHECK(parse(a2.out)["verdicts"]["is_frame"] == false);

    const Run skew = run_cli({"analyze", "-"}, doc_text(skew_triple()));
    REQUIRE(skew.code == 0);
    const auto s = parse(skew.out);
    CHECK(s["verdicts"]["is_eigenframe"] == false);
    CHECK(s["verdicts"]["multiplicity_bound"] == "not_applicable");
    CHECK(s["verdicts"]["root_frame_invariants"] == "not_applicable");
}

TEST_CASE("scale") {
    const Run b2 = run_cli({"scale", "-"}, doc_text(b2_positives()));
    REQUIRE(b2.code == 0);
    const FrameDocument doc = parse_frame_document(b2.out);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(doc.frame.weight(k) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(run_cli({"scale", "-"}, doc_text({e(3, 0), e(3, 1), e(3, 2)})).code == 0);
    const Run a2 = run_cli({"scale", "-"}, doc_text(a2_positives()));
    CHECK(a2.code == 2);
    CHECK(a2.err.find("error") != std::string::npos);
    CHECK(run_cli({"scale", "-"}, doc_text(skew_triple())).code == 2);
}

TEST_CASE("scale: report file") {
    TempDir dir;
    const Run r = run_cli({"scale", "-", "--report", (dir.path / "r.json").string()}, doc_text(b2_positives()));
    REQUIRE(r.code == 0);
    const auto j = parse(slurp(dir.path / "r.json"));
    CHECK(j["residuals"].contains("parseval"));
}

TEST_CASE("closure") {
    TempDir dir;
    const fs::path out = dir.path / "closure.json";
    const Run yes = run_cli({"closure", "-", "-o", out.string(), "--enumerate-group"},
                            doc_text({e(2, 0), vec({kInvSqrt2, kInvSqrt2})}));
    REQUIRE(yes.code == 0);
    const auto j = parse(slurp(out));
    CHECK(j["verdicts"]["root_frame"] == "yes");
    CHECK(j["closure"]["status"] == "closed");
    CHECK(j["closure"]["orbit_size"] == 8);
    CHECK(j["closure"]["group_order"] == 8);
    const fs::path orbit = dir.path / "closure.json.orbit.json";
    REQUIRE(fs::exists(orbit));
    CHECK(load_frame(orbit).size() == 8);

    const Run span = run_cli({"closure", "-"}, doc_text({e(3, 0), e(3, 1)}));
    REQUIRE(span.code == 0);
    CHECK(parse(span.out)["verdicts"]["root_frame"] == "no_span");

    const Run cap = run_cli({"closure", "-"}, doc_text({e(2, 0), vec({std::cos(1.0), std::sin(1.0)})}));
    REQUIRE(cap.code == 0);
    const auto c = parse(cap.out);
    CHECK(c["verdicts"]["root_frame"] == "unknown_cap");
    CHECK(c["closure"]["status"] == "cap_exceeded");

    const Run small = run_cli({"closure", "-", "--max-vectors", "6"}, doc_text({e(2, 0), vec({kInvSqrt2, kInvSqrt2})}));
    REQUIRE(small.code == 0);
    CHECK(parse(small.out)["closure"]["status"] == "cap_exceeded");

    CHECK(run_cli({"closure", "-", "--max-vectors", "0"}, doc_text({e(2, 0)})).code == 2);
    CHECK(run_cli({"closure", "-"}, doc_text({vec({2.0, 0.0})})).code == 2);

    const Run dup = run_cli({"closure", "-"}, doc_text({e(2, 0), -e(2, 0), e(2, 1)}));
    CHECK(dup.code == 0);
    CHECK(dup.err.find("collapsed") != std::string::npos);
}

TEST_CASE("verify") {
    const std::vector<Vector> b2_full = with_negatives(b2_positives());
    CHECK(run_cli({"verify", "-"}, doc_text(b2_full)).code == 0);
    CHECK(run_cli({"verify", "-"}, doc_text(b2_positives())).code == 0);

    std::vector<Vector> missing = b2_full;
    missing.pop_back();
    missing.pop_back();
    const Run r = run_cli({"verify", "-"}, doc_text(missing));
    CHECK(r.code == 1);
    CHECK_FALSE(parse(r.out)["failures"].empty());

    const Run generic = run_cli({"verify", "-"}, doc_text(random_unit_vectors(20240601, 3, 4)));
    CHECK(generic.code == 1);
    CHECK(parse(generic.out)["verdicts"]["passed"] == false);
}

TEST_CASE("exit codes for usage and input errors") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"--tol", "-1", "analyze", "-"}, doc_text(b2_positives())).code == 2);
    CHECK(run_cli({"--tol", "0", "analyze", "-"}, doc_text(b2_positives())).code == 2);
    CHECK(run_cli({"analyze", "-"}, "{not json").code == 2);
    CHECK(run_cli({"analyze", "-"}, R"({"format_version": 7, "dim": 1, "vectors": [[1]]})").code == 2);
    CHECK(run_cli({"analyze", "/nonexistent/path.json"}).code == 2);
    const Run bad = run_cli({"analyze", "-"}, R"({"format_version": 1, "dim": 2, "vectors": [[0, 0]]})");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("vectors[0]") != std::string::npos);
}

TEST_CASE("--tol is accepted and changes thresholds") {
    const std::vector<Vector> nearly{e(2, 0), vec({1e-7, 1.0})};
    const Run loose = run_cli({"--tol", "1e-3", "verify", "-"}, doc_text(nearly));
    CHECK(loose.code == 0);
    const Run strict = run_cli({"verify", "-"}, doc_text(nearly));
    CHECK(strict.code == 1);
}

TEST_CASE("every subcommand is deterministic") {
    const std::string in = doc_text({e(3, 0), vec({0.0, kInvSqrt2, kInvSqrt2}), vec({kInvSqrt2, -kInvSqrt2, 0.0})});
    for (const std::string cmd : {"analyze", "closure", "verify"}) {
        const Run a = run_cli({cmd, "-"}, in);
        const Run b = run_cli({cmd, "-"}, in);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
