#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trih/compactified.hpp"

using namespace trih;

namespace {

IVec iv(std::initializer_list<long> xs) {
    IVec v;
    for (long x : xs) v.push_back(Integer(x));
    return v;
}

TropicalFanCycle cycle_of(Fan f) {
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    return make_cycle(std::move(f), std::move(w));
}

TropicalFanCycle p1_cycle() {
    return cycle_of(build_fan(1, {iv({1}), iv({-1})}, {{0}, {1}}));
}

TropicalFanCycle line_cycle() {
    return cycle_of(build_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0}, {1}, {2}}));
}

TropicalFanCycle p2_cycle() {
    return cycle_of(build_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})},
                              {{0, 1}, {1, 2}, {0, 2}}));
}

}  // namespace

TEST_CASE("Trop(P1) is an interval: 3 vertices, 2 edges") {
    CompactifiedCellComplex x = canonical_compactification(p1_cycle());
    CHECK(x.cells.size() == 5);
    CHECK(x.cells_of_dim(0).size() == 3);
    CHECK(x.cells_of_dim(1).size() == 2);
}

TEST_CASE("compactified tropical line is a tripod: 4 vertices, 3 edges") {
    CompactifiedCellComplex x = canonical_compactification(line_cycle());
    CHECK(x.cells.size() == 7);
    CHECK(x.cells_of_dim(0).size() == 4);
    CHECK(x.cells_of_dim(1).size() == 3);
}

TEST_CASE("cell count of compactified Trop(P2)") {
    // pairs tau ⪯ sigma: 7 with tau = 0, 3x3 with tau a ray, 3 corners
    CompactifiedCellComplex x = canonical_compactification(p2_cycle());
    CHECK(x.cells.size() == 19);
    CHECK(x.cells_of_dim(0).size() == 7);
    CHECK(x.cells_of_dim(1).size() == 9);
    CHECK(x.cells_of_dim(2).size() == 3);
}

TEST_CASE("closed cells are combinatorial cubes with 3^k faces") {
    for (const TropicalFanCycle& c : {p1_cycle(), line_cycle(), p2_cycle()}) {
        CompactifiedCellComplex x = canonical_compactification(c);
        for (int i = 0; i < (int)x.cells.size(); ++i) {
            long expected = 1;
            for (int t = 0; t < x.dim(i); ++t) expected *= 3;
            CHECK((long)x.closed_faces(i).size() == expected);
        }
    }
}

TEST_CASE("signed incidence satisfies boundary squared = 0") {
    for (const TropicalFanCycle& c : {p1_cycle(), line_cycle(), p2_cycle()}) {
        CompactifiedCellComplex x = canonical_compactification(c);
        for (int cell = 0; cell < (int)x.cells.size(); ++cell) {
            if (x.dim(cell) < 2) continue;
            std::map<int, int> total;
            for (auto [f, s1] : x.boundary(cell))
                for (auto [g, s2] : x.boundary(f)) total[g] += s1 * s2;
            for (auto [g, v] : total) CHECK(v == 0);
        }
    }
}

TEST_CASE("smooth and singular strata of the tropical line") {
    CompactifiedCellComplex x = canonical_compactification(line_cycle());
    // d = 1: smooth part is the mobile cells of dim >= 0, singular part the
    // three infinity vertices
    CHECK(x.singular_cells().size() == 3);
    for (int s : x.singular_cells()) CHECK(x.dim(s) == 0);
}

TEST_CASE("regular at infinity holds for canonical compactifications") {
    for (const TropicalFanCycle& c : {p1_cycle(), line_cycle(), p2_cycle()}) {
        CompactifiedCellComplex x = canonical_compactification(c);
        CHECK(is_regular_at_infinity(x));
    }
}

TEST_CASE("a complex missing an infinity facet is not regular at infinity") {
    CompactifiedCellComplex x = canonical_compactification(line_cycle());
    // erase an infinity vertex by hand
    CompactifiedCellComplex broken = x;
    int victim = -1;
    for (int i = 0; i < (int)broken.cells.size(); ++i)
        if (broken.dim(i) == 0 && broken.cells[i].tau != broken.origin_cone) victim = i;
    REQUIRE(victim >= 0);
    broken.index.erase({broken.cells[victim].tau, broken.cells[victim].sigma});
    broken.cells.erase(broken.cells.begin() + victim);
    broken.index.clear();
    for (int i = 0; i < (int)broken.cells.size(); ++i)
        broken.index[{broken.cells[i].tau, broken.cells[i].sigma}] = i;
    CHECK_FALSE(is_regular_at_infinity(broken));
}

TEST_CASE("product complex of two intervals is a 3x3 square grid") {
    CompactifiedCellComplex a = canonical_compactification(p1_cycle());
    CompactifiedCellComplex x = product_complex(a, a);
    CHECK(x.cells.size() == 25);
    CHECK(x.cells_of_dim(0).size() == 9);
    CHECK(x.cells_of_dim(1).size() == 12);
    CHECK(x.cells_of_dim(2).size() == 4);
}

TEST_CASE("product cell counts multiply and weights multiply") {
    CompactifiedCellComplex a = canonical_compactification(p1_cycle());
    CompactifiedCellComplex b = canonical_compactification(line_cycle());
    CompactifiedCellComplex x = product_complex(a, b);
    CHECK(x.cells.size() == a.cells.size() * b.cells.size());
    for (int t : x.cells_of_dim(x.d())) CHECK(x.weight(t) == 1);
}

TEST_CASE("product with a point is an isomorphic copy") {
    Fan pointf = build_fan(0, {}, {{}});
    TropicalFanCycle pointc = make_cycle(std::move(pointf), {{0, Integer(1)}});
    CompactifiedCellComplex a = canonical_compactification(line_cycle());
    CompactifiedCellComplex x = product_complex(a, canonical_compactification(pointc));
    CHECK(x.cells.size() == a.cells.size());
    for (int q = 0; q <= 1; ++q)
        CHECK(x.cells_of_dim(q).size() == a.cells_of_dim(q).size());
}

TEST_CASE("barycentric subdivision of the interval") {
    CompactifiedCellComplex x = canonical_compactification(p1_cycle());
    ChainStructure s = barycentric_subdivision(x);
    CHECK(s.num_cells(0) == 5);   // 3 vertices + 2 edge barycenters
    CHECK(s.num_cells(1) == 4);
}

TEST_CASE("barycentric subdivision of the tripod") {
    CompactifiedCellComplex x = canonical_compactification(line_cycle());
    ChainStructure s = barycentric_subdivision(x);
    CHECK(s.num_cells(0) == 7);
    CHECK(s.num_cells(1) == 6);
}

TEST_CASE("barycentric subdivision preserves the Euler characteristic") {
    for (const TropicalFanCycle& c : {p1_cycle(), line_cycle(), p2_cycle()}) {
        CompactifiedCellComplex x = canonical_compactification(c);
        CHECK(native_structure(x).euler_characteristic() ==
              barycentric_subdivision(x).euler_characteristic());
    }
}

TEST_CASE("barycentric boundary squared = 0 with signs") {
    CompactifiedCellComplex x = canonical_compactification(p2_cycle());
    ChainStructure s = barycentric_subdivision(x);
    for (int q = 2; q <= x.d(); ++q)
        for (const ChainCell& cc : s.by_q[q]) {
            std::map<int, int> total;
            for (auto [f, s1] : cc.faces)
                for (auto [g, s2] : s.by_q[q - 1][f].faces) total[g] += s1 * s2;
            for (auto [g, v] : total) CHECK(v == 0);
        }
}

TEST_CASE("barycentric carriers and strata bookkeeping") {
    CompactifiedCellComplex x = canonical_compactification(line_cycle());
    ChainStructure s = barycentric_subdivision(x);
    for (int q = 0; q <= x.d(); ++q)
        for (const ChainCell& cc : s.by_q[q]) {
            CHECK(cc.carrier == cc.poset_chain.back());
            for (auto [scell, k] : cc.strata) {
                CHECK_FALSE(x.is_smooth(scell));
                CHECK(cc.poset_chain[k] == scell);
            }
        }
}

TEST_CASE("tangent dimension of every cell matches dim sigma - dim tau") {
    CompactifiedCellComplex x = canonical_compactification(p2_cycle());
    for (int i = 0; i < (int)x.cells.size(); ++i)
        CHECK((int)x.free_rays(i).size() == x.dim(i));
}
