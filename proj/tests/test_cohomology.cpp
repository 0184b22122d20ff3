#include "doctest.h"
#include "cellular_oracle.hpp"
#include "fkmm/cohomology.hpp"
#include "fkmm/errors.hpp"

#include <map>

using namespace fkmm;

namespace {

AbelianGroup G(const std::string& s) { return parse_group(s); }
InvolutiveSpace S(int p, int q) { return InvolutiveSpace::sphere(p, q); }
InvolutiveSpace T(int a, int b, int c) { return InvolutiveSpace::torus(a, b, c); }

}  // namespace

TEST_CASE("space descriptors") {
    CHECK(InvolutiveSpace::parse("S:1,2") == S(1, 2));
    CHECK(InvolutiveSpace::parse("T:0,2,0") == T(0, 2, 0));
    CHECK(T(0, 2, 0).str() == "T:0,2,0");
    CHECK_THROWS_AS(InvolutiveSpace::parse("S:1"), Error);
    CHECK_THROWS_AS(InvolutiveSpace::parse("T:1,2,x"), Error);
    CHECK(S(0, 0).is_empty());
    CHECK(T(0, 0, 0).is_empty());
    CHECK(S(1, 2).dimension() == 2);
    CHECK(T(1, 1, 1).dimension() == 3);
    CHECK(T(1, 0, 3).normalized() == T(3, 0, 1));
    CHECK(T(1, 0, 1).normalized() == T(1, 0, 1));
}

TEST_CASE("fixed sets match the symbolic description") {
    CHECK(S(0, 3).fixed_set().empty());
    CHECK(S(0, 3).is_free());
    CHECK(S(1, 2).fixed_set().components == 2);
    CHECK(S(1, 2).fixed_set().isolated());
    CHECK(S(2, 1).fixed_set().shape == "circle");
    CHECK(S(3, 1).fixed_set().shape == "S^2");
    CHECK(T(0, 3, 0).fixed_set().components == 8);
    CHECK(T(0, 3, 0).fixed_set().isolated());
    CHECK(T(1, 2, 0).fixed_set().str() == "4 x circle");
    CHECK(T(0, 1, 1).is_free());
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                CHECK(T(a, b, c).is_free() == (c > 0 || a + b + c == 0));
}

TEST_CASE("point cohomology") {
    CHECK(point_cohomology(0, 0) == G("Z"));
    CHECK(point_cohomology(2, 0) == G("Z_2"));
    CHECK(point_cohomology(1, 1) == G("Z_2"));
    CHECK(point_cohomology(3, 0) == G("0"));
    CHECK(point_cohomology(0, 1) == G("0"));
    CHECK(point_cohomology(4, 2) == G("Z_2"));  // only the parity of j matters
    CHECK(point_cohomology(3, -1) == G("Z_2"));
}

TEST_CASE("free sphere cohomology reproduces the low-dimension table") {
    const std::map<int, std::vector<std::string>> table{
        {1, {"0", "Z_2", "0", "0", "0", "0", "0"}},
        {2, {"0", "Z_2", "Z", "0", "0", "0", "0"}},
        {3, {"0", "Z_2", "0", "Z_2", "0", "0", "0"}},
        {4, {"0", "Z_2", "0", "Z_2", "Z", "0", "0"}},
        {5, {"0", "Z_2", "0", "Z_2", "0", "Z_2", "0"}},
    };
    for (auto& [d, row] : table)
        for (int k = 0; k <= 6; ++k) CHECK(free_sphere_cohomology(d, k, 1) == G(row[k]));
    CHECK(free_sphere_cohomology(2, 2, 1) == G("Z"));
    CHECK(free_sphere_cohomology(3, 3, 1) == G("Z_2"));
    CHECK(free_sphere_cohomology(3, 2, 1) == G("0"));
    CHECK(free_sphere_cohomology(1, 0, 1) == G("0"));
}

TEST_CASE("free sphere untwisted cohomology is that of RP^d") {
    CHECK(free_sphere_cohomology(2, 0, 0) == G("Z"));
    CHECK(free_sphere_cohomology(2, 1, 0) == G("0"));
    CHECK(free_sphere_cohomology(2, 2, 0) == G("Z_2"));
    CHECK(free_sphere_cohomology(3, 2, 0) == G("Z_2"));
    CHECK(free_sphere_cohomology(3, 3, 0) == G("Z"));
    CHECK(free_sphere_cohomology(0, 0, 0) == G("Z"));
}

TEST_CASE("TR sphere cohomology") {
    CHECK(tr_sphere_cohomology(3, 3, 1) == G("Z_2 (+) Z"));
    CHECK(tr_sphere_cohomology(3, 1, 1) == G("Z_2"));
    CHECK(tr_sphere_cohomology(1, 3, 1) == G("Z_2^2"));
    for (int d = 0; d <= 5; ++d)
        for (int k = 0; k <= 7; ++k) {
            AbelianGroup want;
            if (k % 2 == 1) want = k == d ? G("Z_2 (+) Z") : (k < d ? G("Z_2") : G("Z_2^2"));
            CHECK(tr_sphere_cohomology(d, k, 1) == want);
        }
}

TEST_CASE("torus cohomology reproduces the H^2 table by Gysin recursion") {
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            auto g = torus_cohomology(T(a, b, 1), 2, 1);
            CHECK(g == AbelianGroup::from_invariants((a + 1) * b, std::vector<BigInt>(a, 2)));
        }
    CHECK(torus_cohomology(T(0, 1, 1), 2, 1) == G("Z"));
    CHECK(torus_cohomology(T(1, 1, 1), 2, 1) == G("Z_2 (+) Z^2"));
    CHECK(torus_cohomology(T(1, 1, 0), 2, 1) == G("Z_2 (+) Z"));
    CHECK(torus_cohomology(T(2, 1, 0), 2, 1) == G("Z_2^2 (+) Z^2"));
    CHECK(torus_cohomology(T(1, 2, 0), 2, 1) == G("Z_2 (+) Z^2"));
    CHECK(torus_cohomology(T(0, 0, 0), 0, 0) == G("0"));
    CHECK(torus_cohomology(T(1, 0, 0), -1, 0) == G("0"));
}

TEST_CASE("torus normalization is consistent in degrees 0..4") {
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 2; a + b + c <= 4; ++c)
                for (int k = 0; k <= 4; ++k)
                    for (int j = 0; j <= 1; ++j)
                        CHECK(torus_cohomology(T(a, b, c), k, j) == torus_cohomology(T(a + c - 1, b, 1), k, j));
}

TEST_CASE("closed forms agree with the cellular Borel cohomology oracle") {
    for (int j = 0; j <= 1; ++j)
        for (int k = 0; k <= 5; ++k) {
            for (int p = 0; p <= 4; ++p)
                for (int q = 0; p + q <= 4; ++q) {
                    if (p + q == 0) continue;
                    CAPTURE(p);
                    CAPTURE(q);
                    CAPTURE(k);
                    CAPTURE(j);
                    CHECK(sphere_cohomology(S(p, q), k, j).isomorphic(oracle::borel_cohomology(oracle::sphere(p, q), k, j)));
                }
        }
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) {
                if (a + b + c == 0) continue;
                auto cx = oracle::torus(a, b, c);
                for (int j = 0; j <= 1; ++j)
                    for (int k = 0; k <= 4; ++k) {
                        CAPTURE(a);
                        CAPTURE(b);
                        CAPTURE(c);
                        CAPTURE(k);
                        CAPTURE(j);
                        CHECK(torus_cohomology(T(a, b, c), k, j).isomorphic(oracle::borel_cohomology(cx, k, j)));
                    }
            }
}

TEST_CASE("relative H^2 catalog") {
    CHECK(relative_h2(S(1, 0)) == G("0"));
    CHECK(relative_h2(S(1, 1)) == G("0"));
    CHECK(relative_h2(S(1, 2)) == G("Z_2"));
    CHECK(relative_h2(S(1, 3)) == G("Z_2"));
    CHECK(relative_h2(S(2, 1)) == G("2Z"));
    CHECK(relative_h2(S(2, 2)) == G("0"));
    CHECK(relative_h2(S(3, 1)) == G("0"));
    CHECK(relative_h2(S(4, 0)) == G("0"));
    CHECK(relative_h2(T(2, 0, 0)) == G("0"));
    CHECK(relative_h2(T(1, 1, 0)) == G("2Z"));
    CHECK(relative_h2(T(2, 1, 0)) == G("(2Z)^2"));
    CHECK(relative_h2(T(1, 2, 0)) == G("Z_2 (+) (2Z)^2"));
    CHECK(relative_h2(T(0, 2, 0)) == G("Z_2"));
    CHECK(relative_h2(T(0, 3, 0)) == G("Z_2^4"));
    CHECK_THROWS_AS(relative_h2(S(0, 3)), Error);
    CHECK_THROWS_AS(relative_h2(T(0, 4, 0)), Error);
    CHECK_THROWS_AS(relative_h2(S(1, 4)), Error);
}

TEST_CASE("relative H^2 catalog agrees with the relative cellular oracle") {
    for (int p = 1; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            CHECK(relative_h2(S(p, q)).isomorphic(oracle::borel_cohomology(oracle::sphere(p, q), 2, 1, true)));
        }
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
            if (a + b == 0) continue;
            CAPTURE(a);
            CAPTURE(b);
            CHECK(relative_h2(T(a, b, 0)).isomorphic(oracle::borel_cohomology(oracle::torus(a, b, 0), 2, 1, true)));
        }
}

TEST_CASE("classification of spheres") {
    // rows of the sphere table: odd rank on S^{0,q}, even rank on S^{p,q}
    const std::vector<std::string> odd{"EMPTY", "0 (unique, not a product bundle)", "0 (unique, not a product bundle)", "2Z+1", "EMPTY"};
    const std::vector<std::string> even0{"EMPTY", "0 (unique, trivial)", "0 (unique, trivial)", "2Z", "0"};
    for (int q = 0; q <= 4; ++q) {
        CHECK(classify(S(0, q), 1).value_str() == odd[q]);
        CHECK(classify(S(0, q), 3).value_str() == odd[q]);
        CHECK(classify(S(0, q), 2).value_str() == even0[q]);
    }
    const std::map<std::pair<int, int>, std::string> even{
        {{1, 0}, "0"}, {{1, 1}, "0"}, {{1, 2}, "Z_2"}, {{1, 3}, "Z_2"},
        {{2, 0}, "0"}, {{2, 1}, "2Z"}, {{2, 2}, "0"},
        {{3, 0}, "0"}, {{3, 1}, "0"}, {{4, 0}, "0"}};
    for (auto& [pq, want] : even) {
        auto r = classify(S(pq.first, pq.second), 4);
        CHECK(r.status != ClassificationResult::Status::Empty);
        CHECK(r.value_str().substr(0, want.size()) == want);
        CHECK(classify(S(pq.first, pq.second), 3).status == ClassificationResult::Status::Empty);
    }
    CHECK(classify(S(1, 1), 2).value_str() == "0 (unique, trivial)");
    CHECK(classify(S(0, 3), 2).str() == "S:0,3 rank=2m -> 2Z via c1 (FKMM bijective)");
    CHECK(classify(S(0, 3), 1).str() == "S:0,3 rank=2m+1 -> 2Z+1 via c1 (FKMM bijective)");
    CHECK(classify(S(0, 4), 3).str() == "S:0,4 rank=2m+1 -> EMPTY");
    CHECK(classify(S(1, 2), 2).invariant_name == "FKMM");
    CHECK_THROWS_AS(classify(S(1, 4), 2), Error);
    CHECK_THROWS_AS(classify(S(1, 2), 0), Error);
}

TEST_CASE("classification of tori") {
    const std::map<std::tuple<int, int, int>, std::string> table{
        {{0, 0, 0}, "EMPTY"}, {{1, 0, 0}, "0"}, {{2, 0, 0}, "0"}, {{3, 0, 0}, "0"},
        {{0, 1, 0}, "0"}, {{1, 1, 0}, "2Z"}, {{2, 1, 0}, "(2Z)^2"},
        {{0, 2, 0}, "Z_2"}, {{1, 2, 0}, "Z_2 (+) (2Z)^2"}, {{0, 3, 0}, "Z_2^4"},
        {{0, 0, 1}, "0"}, {{1, 0, 1}, "Z_2"}, {{2, 0, 1}, "Z_2^2"},
        {{0, 1, 1}, "2Z"}, {{1, 1, 1}, "Z_2 (+) (2Z)^2"}, {{0, 2, 1}, "(2Z)^2"}};
    for (auto& [abc, want] : table) {
        auto [a, b, c] = abc;
        for (int rank : {2, 4, 6}) {
            auto r = classify(T(a, b, c), rank);
            CAPTURE(r.str());
            if (want == "EMPTY" || want == "0")
                CHECK(r.value_str().substr(0, want.size()) == want);
            else
                CHECK(r.value_str() == want);
        }
        if (c == 1) {
            auto r = classify(T(a, b, c), 3);
            CHECK(r.value_str().substr(0, want.size()) == want);
        } else {
            CHECK(classify(T(a, b, c), 3).status == ClassificationResult::Status::Empty);
        }
    }
    CHECK(classify(T(0, 3, 0), 2).value_str() == "Z_2^4");
    CHECK(classify(T(1, 1, 1), 2).invariant_name == "FKMM+c1");
    CHECK(classify(T(0, 0, 2), 2) .value_str() == classify(T(1, 0, 1), 2).value_str());
    CHECK_THROWS_AS(classify(T(0, 4, 0), 2), Error);
}

TEST_CASE("even-rank classification does not depend on m") {
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            for (int m = 2; m <= 5; ++m) CHECK(classify(S(p, q), 2 * m).value_str() == classify(S(p, q), 2).value_str());
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                for (int m = 2; m <= 5; ++m) CHECK(classify(T(a, b, c), 2 * m).value_str() == classify(T(a, b, c), 2).value_str());
}
