#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "rootframe/closure.hpp"
#include "rootframe/errors.hpp"
#include "rootframe/frame_analysis.hpp"
#include "rootframe/io_formats.hpp"
#include "rootframe/random.hpp"
#include "test_support.hpp"

using namespace rootframe;
using namespace rootframe::testing;

namespace {

bool bitwise_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool bitwise_equal(const Frame& a, const Frame& b) {
    if (a.dim() != b.dim() || a.size() != b.size() || a.has_weights() != b.has_weights()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (int i = 0; i < a.dim(); ++i) {
            if (!bitwise_equal(a[k][i], b[k][i])) {
                return false;
            }
        }
        if (a.has_weights() && !bitwise_equal(a.weight(k), b.weight(k))) {
            return false;
        }
    }
    return true;
}

std::string fnv1a64_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

template <class E>
std::string error_of(const std::string& text) {
    try {
        parse_frame_document(text);
    } catch (const E& ex) {
        return ex.what();
    }
    return "<no error>";
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("rootframe_io_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("parse_frame_document: minimal document") {
    const FrameDocument doc = parse_frame_document(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0], [0, 1]]})");
    CHECK(doc.frame.dim() == 2);
    CHECK(doc.frame.size() == 2);
    CHECK_FALSE(doc.frame.has_weights());
    CHECK_FALSE(doc.tag.has_value());
    CHECK_FALSE(doc.beta.has_value());
    CHECK(doc.frame[1] == e(2, 1));
}

TEST_CASE("parse_frame_document: optional fields") {
    const FrameDocument doc = parse_frame_document(
        R"({"format_version": 1, "dim": 2, "vectors": [[1, 0], [0, 1]], "weights": [2, 0.5], "tag": "B", "beta": [2, 1]})");
    CHECK(doc.frame.weight(0) == 2.0);
    CHECK(doc.frame.weight(1) == 0.5);
    CHECK(doc.tag == "B");
    REQUIRE(doc.beta.has_value());
    CHECK(*doc.beta == vec({2.0, 1.0}));
}

TEST_CASE("parse_frame_document: errors name the field") {
    CHECK(error_of<ParseError>("{\"format_version\": 1,\n\"dim\": 2,\n\"vectors\": [[1, 0],") .rfind("line 3", 0) == 0);
    CHECK(error_of<VersionError>(R"({"format_version": 2, "dim": 2, "vectors": [[1, 0]]})").find("format_version") !=
          std::string::npos);
    CHECK(error_of<ValidationError>(R"({"dim": 2, "vectors": [[1, 0]]})").find("format_version") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0], [0, 0]]})") ==
          "vectors[1]: zero vector");
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0], [0, 1, 2]]})") ==
          "vectors[1]: has 3 entries, expected 2");
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0]], "colour": 1})") ==
          "colour: unknown field");
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0]], "weights": [-1]})")
              .find("weights[0]") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0]], "weights": [1, 1]})")
              .find("weights") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": []})").find("vectors") !=
          std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 0, "vectors": [[1]]})").find("dim") !=
          std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, "x"]]})")
              .find("vectors[0]") != std::string::npos);
    CHECK(error_of<ValidationError>(R"([1, 2])").find("object") != std::string::npos);
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0]], "tag": 3})") ==
          "tag: expected a string");
    CHECK(error_of<ValidationError>(R"({"format_version": 1, "dim": 2, "vectors": [[1, 0]], "beta": [1]})")
              .find("beta") != std::string::npos);
}

TEST_CASE("format_number") {
    CHECK(format_number(1.0) == "1.0");
    CHECK(format_number(-2.0) == "-2.0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-0.0) == "-0.0");
    CHECK(format_number(1e300) == "1.0000000000000001e+300");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK_THROWS_AS(format_number(std::numeric_limits<double>::quiet_NaN()), InternalError);
    CHECK_THROWS_AS(format_number(std::numeric_limits<double>::infinity()), InternalError);
}

TEST_CASE("frame documents round-trip bit for bit") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next() % 6);
        const int n = 1 + static_cast<int>(rng.next() % 8);
        std::vector<Vector> vs;
        for (int k = 0; k < n; ++k) {
            Vector v(dim);
            for (int i = 0; i < dim; ++i) {
                const double scale = std::pow(10.0, static_cast<int>(rng.next() % 21) - 10);
                v[i] = rng.normal() * scale;
            }
            if (dim > 1 && trial % 5 == 0) {
                v[0] = -0.0;
            }
            vs.push_back(v);
        }
        std::optional<std::vector<double>> ws;
        if (trial % 2 == 0) {
            ws.emplace();
            for (int k = 0; k < n; ++k) {
                ws->push_back(std::ldexp(rng.uniform() + 1e-3, static_cast<int>(rng.next() % 40) - 20));
            }
        }
        FrameDocument doc{Frame(vs, ws), std::nullopt, std::nullopt};
        if (trial % 3 == 0) {
            doc.tag = "t" + std::to_string(trial);
            doc.beta = random_unit_vector(rng, dim);
        }
        const std::string text = format_frame_document(doc);
        const FrameDocument back = parse_frame_document(text);
        CHECK(bitwise_equal(doc.frame, back.frame));
        CHECK(back.tag == doc.tag);
        if (doc.beta) {
            REQUIRE(back.beta.has_value());
            for (int i = 0; i < dim; ++i) {
                CHECK(bitwise_equal((*doc.beta)[i], (*back.beta)[i]));
            }
        }
        CHECK(format_frame_document(back) == text);
    }
}

TEST_CASE("canonical text is idempotent under rewriting") {
    const std::string loose =
        R"({ "dim":2,"format_version":1, "vectors":[[1,0],[0.5,   1e-3]], "tag":"x", "weights":[3,4] })";
    const std::string once = format_frame_document(parse_frame_document(loose));
    const std::string twice = format_frame_document(parse_frame_document(once));
    CHECK(once == twice);
    CHECK(once ==
          "{\n"
          "  \"format_version\": 1,\n"
          "  \"dim\": 2,\n"
          "  \"vectors\": [\n"
          "    [1.0, 0.0],\n"
          "    [0.5, 0.001]\n"
          "  ],\n"
          "  \"weights\": [3.0, 4.0],\n"
          "  \"tag\": \"x\"\n"
          "}\n");
}

TEST_CASE("document_digest") {
    const FrameDocument doc{Frame(b2_positives()), std::string("B"), std::nullopt};
    const std::string digest = document_digest(doc);
    CHECK(digest == "fnv1a64:" + fnv1a64_hex(format_frame_document(doc)));
    FrameDocument other = doc;
    other.tag = "C";
    CHECK(document_digest(other) != digest);
}

TEST_CASE("report: B2 analysis") {
    const FrameDocument doc{Frame(b2_positives()), std::string("B"), std::nullopt};
    ReportDocument report(doc);
    report.add_spectral(spectral_analysis(doc.frame));
    const std::string text = format_report(report);
    CHECK(text.find("\"eigen_clusters\": [\n    [2.0, 2]\n  ]") != std::string::npos);
    const auto j = OrderedJson::parse(text);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    CHECK(keys == std::vector<std::string>{"format_version", "subject", "verdicts", "eigen_clusters", "residuals",
                                           "failures"});
    CHECK(j["subject"]["digest"] == document_digest(doc));
    CHECK(j["subject"]["count"] == 4);
    CHECK(j["verdicts"]["is_eigenframe"] == true);
    CHECK(j["verdicts"]["is_tight"] == true);
    CHECK(j["failures"].empty());
    CHECK(format_report(report) == text);
}

TEST_CASE("report: capped closure") {
    const FrameDocument doc{Frame({e(2, 0), vec({std::cos(1.0), std::sin(1.0)})}), std::nullopt, std::nullopt};
    ReportDocument report(doc);
    report.add_closure(is_root_frame_closure(doc.frame), std::nullopt);
    const auto j = OrderedJson::parse(format_report(report));
    CHECK(j["verdicts"]["root_frame"] == "unknown_cap");
    CHECK(j["closure"]["status"] == "cap_exceeded");
    const auto trace = j["closure"]["growth_trace"].get<std::vector<std::size_t>>();
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        CHECK(trace[i] > trace[i - 1]);
    }
    CHECK_FALSE(j["closure"].contains("orbit"));
}

TEST_CASE("report: closed orbit is embedded as a frame document") {
    const FrameDocument doc{Frame({e(2, 0), vec({kInvSqrt2, kInvSqrt2})}), std::nullopt, std::nullopt};
    ReportDocument report(doc);
    const RootFrameClosure r = is_root_frame_closure(doc.frame);
    report.add_closure(r, group_enumerate(*r.root_system));
    const auto j = OrderedJson::parse(format_report(report));
    CHECK(j["closure"]["status"] == "closed");
    CHECK(j["closure"]["orbit_size"] == 8);
    const FrameDocument orbit = parse_frame_document(j["closure"]["orbit"].dump());
    CHECK(same_set(orbit.frame.vectors(), with_negatives(b2_positives())));
}

TEST_CASE("report: failures carry witnesses") {
    const FrameDocument doc{Frame({e(2, 0), vec({kInvSqrt2, kInvSqrt2})}), std::nullopt, std::nullopt};
    ReportDocument report(doc);
    report.add_spark(spark_obstruction(doc.frame));
    const auto j = OrderedJson::parse(format_report(report));
    REQUIRE(j["failures"].size() == 2);
    CHECK(j["failures"][0]["check"] == "spark");
    CHECK(j["failures"][0]["indices"] == OrderedJson::array({0, 1}));
}

TEST_CASE("file IO") {
    TempDir dir;
    const auto path = dir.path / "frame.json";
    const Frame f(b2_positives(), std::vector<double>{1.0, 2.0, 3.0, 4.0});
    save_frame(f, path);
    CHECK(bitwise_equal(load_frame(path), f));
    CHECK_THROWS_AS(load_frame(dir.path / "missing.json"), IoError);
    CHECK_THROWS_AS(save_frame(f, dir.path / "no" / "such" / "dir.json"), IoError);

    std::istringstream in(format_frame_document(FrameDocument{f, std::nullopt, std::nullopt}));
    CHECK(bitwise_equal(read_frame_document(in).frame, f));
}
