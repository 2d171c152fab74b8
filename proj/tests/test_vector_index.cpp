#include <doctest.h>

#include <cmath>

#include "rootframe/errors.hpp"
#include "rootframe/random.hpp"
#include "rootframe/vector_index.hpp"
#include "test_support.hpp"

using namespace rootframe;
using namespace rootframe::testing;

TEST_CASE("sign_canonical makes the first significant coordinate positive") {
    CHECK(sign_canonical(vec({-1.0, 2.0})) == vec({1.0, -2.0}));
    CHECK(sign_canonical(vec({0.0, -3.0})) == vec({0.0, 3.0}));
    // Coordinates within eps of zero are skipped when choosing the sign.
    CHECK(sign_canonical(vec({1e-12, -1.0})) == vec({-1e-12, 1.0}));
    const Vector z = sign_canonical(vec({-0.0, 1.0}));
    CHECK_FALSE(std::signbit(z[0]));
}

TEST_CASE("VectorIndex finds matches across grid walls") {
    VectorIndex index(2, 1e-9, 1e-8);
    index.insert(vec({1e-8 - 1e-10, 0.5}));
    CHECK(index.find(vec({1e-8 + 1e-10, 0.5})).has_value());
    CHECK(index.find(vec({0.0, -1e-10})) == std::nullopt);
    CHECK_FALSE(index.find(vec({1e-8 + 5e-9, 0.5})).has_value());

    auto [id, inserted] = index.insert_unique(vec({1e-8, 0.5}));
    CHECK(id == 0);
    CHECK_FALSE(inserted);
    CHECK(index.size() == 1);
}

TEST_CASE("VectorIndex agrees with a linear scan on random data") {
    SplitMix64 rng(11);
    std::vector<Vector> stored;
    VectorIndex index(3, 1e-9);
    for (int i = 0; i < 300; ++i) {
        Vector v = random_unit_vector(rng, 3);
        // Snap half the points to the grid so wall cases are exercised.
        if (i % 2 == 0) {
            for (int c = 0; c < 3; ++c) {
                v[c] = std::round(v[c] * 1e8) * 1e-8;
            }
        }
        stored.push_back(v);
        index.insert(v);
    }
    for (int i = 0; i < 600; ++i) {
        const Vector& base = stored[static_cast<std::size_t>(i % 300)];
        Vector probe = base;
        for (int c = 0; c < 3; ++c) {
            probe[c] += (rng.uniform() - 0.5) * 4e-9;
        }
        CHECK(index.find(probe).has_value() == contains(stored, probe, 1e-9));
    }
}

TEST_CASE("VectorIndex rejects bad parameters") {
    CHECK_THROWS_AS(VectorIndex(0), InvalidParameter);
    CHECK_THROWS_AS(VectorIndex(2, 1e-9, 1e-9), InvalidParameter);
}

TEST_CASE("SplitMix64 reproduces the reference sequence") {
    // Published first outputs of SplitMix64 seeded with 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("VectorIndex: default grid follows a coarse tolerance") {
    VectorIndex index(2, 1e-3);
    index.insert(vec({0.5, 0.5}));
    CHECK(index.find(vec({0.5 + 9e-4, 0.5 - 9e-4})) == std::optional<std::size_t>{0});
    CHECK_FALSE(index.find(vec({0.5 + 2e-3, 0.5})).has_value());
}
