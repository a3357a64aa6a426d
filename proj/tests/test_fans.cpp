#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trih/fans.hpp"

#include <random>

using namespace trih;

namespace {

IVec iv(std::initializer_list<long> xs) {
    IVec v;
    for (long x : xs) v.push_back(Integer(x));
    return v;
}

Fan p2_fan() {
    return build_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

Fan line_fan() {
    return build_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0}, {1}, {2}});
}

TropicalFanCycle line_cycle() {
    Fan f = line_fan();
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    return make_cycle(std::move(f), std::move(w));
}

TropicalFanCycle p2_cycle() {
    Fan f = p2_fan();
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    return make_cycle(std::move(f), std::move(w));
}

TropicalFanCycle p1_cycle() {
    Fan f = build_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    return make_cycle(std::move(f), std::move(w));
}

}  // namespace

TEST_CASE("P2 fan has 7 cones") {
    Fan f = p2_fan();
    CHECK(f.cones.size() == 7);
    CHECK(f.maximal.size() == 3);
    CHECK(f.dimension() == 2);
}

TEST_CASE("tropical line fan has 4 cones") {
    Fan f = line_fan();
    CHECK(f.cones.size() == 4);
    CHECK(f.maximal.size() == 3);
}

TEST_CASE("non-unimodular cone is rejected") {
    CHECK_THROWS_AS(build_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("non-primitive and duplicate rays are rejected") {
    CHECK_THROWS_AS(build_fan(2, {iv({2, 0})}, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_fan(2, {iv({1, 0}), iv({1, 0})}, {{0}, {1}}), std::invalid_argument);
}

TEST_CASE("geometric certification accepts shipped fans and flags an overlap") {
    check_fan_geometric(p2_fan());
    check_fan_geometric(line_fan());
    // ray (1,1) lies inside cone{(1,0),(0,1)}: combinatorially fine,
    // geometrically an overlap
    Fan bad = build_fan(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})}, {{0, 1}, {2}});
    CHECK_THROWS_AS(check_fan_geometric(bad), std::invalid_argument);
}

TEST_CASE("balancing of the tropical line") {
    Fan f = line_fan();
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    CHECK(is_balanced(f, MinkowskiWeight{1, w}).balanced);
    w[f.maximal[2]] = 2;
    BalanceReport rep = is_balanced(f, MinkowskiWeight{1, w});
    CHECK_FALSE(rep.balanced);
    REQUIRE(rep.violations.size() == 1);
    CHECK(f.cones[rep.violations[0]].empty());   // violation at the origin
}

TEST_CASE("P2 fundamental cycle is balanced") {
    Fan f = p2_fan();
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 1;
    CHECK(is_balanced(f, MinkowskiWeight{2, w}).balanced);
}

TEST_CASE("Minkowski weights of intermediate degree") {
    // on the P2 fan a ray weight is balanced iff the weighted ray sum is 0,
    // which forces all three weights equal
    Fan f = p2_fan();
    std::map<int, Integer> w;
    for (int k :
         {f.cone_index({0}), f.cone_index({1}), f.cone_index({2})})
        w[k] = 1;
    CHECK(is_balanced(f, MinkowskiWeight{1, w}).balanced);
    w[f.cone_index({1})] = 2;
    CHECK_FALSE(is_balanced(f, MinkowskiWeight{1, w}).balanced);
    // zero weights are allowed
    std::map<int, Integer> z;
    CHECK(is_balanced(f, MinkowskiWeight{1, z}).balanced);
}

TEST_CASE("star fan of P2 at a ray") {
    Fan f = p2_fan();
    int rho = f.cone_index({0});
    REQUIRE(rho >= 0);
    StarFan s = star_fan(f, rho);
    CHECK(s.fan.rank == 1);
    REQUIRE(s.fan.rays.size() == 2);
    // rays +1 and -1 in some order
    bool plus = false, minus = false;
    for (const IVec& r : s.fan.rays) {
        if (r == iv({1})) plus = true;
        if (r == iv({-1})) minus = true;
    }
    CHECK(plus);
    CHECK(minus);
}

TEST_CASE("star fan at the origin is the fan itself") {
    Fan f = p2_fan();
    StarFan s = star_fan(f, f.cone_index({}));
    CHECK(s.fan.rays == f.rays);
    CHECK(s.fan.cones == f.cones);
}

TEST_CASE("star fan at a maximal cone is the zero fan") {
    Fan f = p2_fan();
    StarFan s = star_fan(f, f.maximal[0]);
    CHECK(s.fan.rank == 0);
    CHECK(s.fan.cones.size() == 1);
}

TEST_CASE("star fan composition") {
    // star(star(f, tau), image of sigma) = star(f, sigma) for tau ⊆ sigma
    Fan f = p2_fan();
    int tau = f.cone_index({0});
    int sigma = f.cone_index({0, 1});
    StarFan s1 = star_fan(f, tau);
    StarFan direct = star_fan(f, sigma);
    int sigma_image = s1.cone_map.at(sigma);
    StarFan s2 = star_fan(s1.fan, sigma_image);
    CHECK(s2.fan.rank == direct.fan.rank);
    CHECK(s2.fan.cones.size() == direct.fan.cones.size());
}

TEST_CASE("stellar subdivision of P2 at (1,1) is the blow-up fan") {
    TropicalFanCycle c = stellar_subdivision(p2_cycle(), iv({1, 1}));
    CHECK(c.fan.rays.size() == 4);
    CHECK(c.fan.maximal.size() == 4);
    CHECK(is_balanced(c).balanced);
}

TEST_CASE("stellar subdivision at an existing ray is the identity") {
    TropicalFanCycle c = line_cycle();
    TropicalFanCycle s = stellar_subdivision(c, iv({1, 0}));
    CHECK(s.fan.rays == c.fan.rays);
    CHECK(s.fan.cones == c.fan.cones);
    CHECK(s.weights == c.weights);
}

TEST_CASE("stellar subdivision inherits weights") {
    Fan f = p2_fan();
    std::map<int, Integer> w;
    for (int m : f.maximal) w[m] = 2;
    TropicalFanCycle c = make_cycle(std::move(f), std::move(w));
    TropicalFanCycle s = stellar_subdivision(c, iv({1, 1}));
    for (int m : s.fan.maximal) CHECK(s.weights.at(m) == 2);
}

TEST_CASE("stellar subdivision rejects rays outside the support") {
    CHECK_THROWS_AS(stellar_subdivision(line_cycle(), iv({1, 1})), std::invalid_argument);
}

TEST_CASE("stellar subdivision rejects non-unimodular pieces and non-primitive rays") {
    // (1,2) is interior to cone{e1,e2} but the piece {e1,(1,2)} has index 2
    CHECK_THROWS_AS(stellar_subdivision(p2_cycle(), iv({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(stellar_subdivision(p2_cycle(), iv({2, 2})), std::invalid_argument);
}

TEST_CASE("restriction rejects invalid cones and handles maximal ones") {
    TropicalFanCycle c = line_cycle();
    CHECK_THROWS_AS(restrict_to_stratum(c, (int)c.fan.cones.size() + 5), std::invalid_argument);
    TropicalFanCycle p2 = p2_cycle();
    TropicalFanCycle r = restrict_to_stratum(p2, p2.fan.maximal[0]);
    CHECK(r.dim == 0);
    CHECK(r.weights.begin()->second == 1);
}

TEST_CASE("stellar subdivision preserves support on a sample grid") {
    TropicalFanCycle c = p2_cycle();
    TropicalFanCycle s = stellar_subdivision(c, iv({1, 1}));
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            QVec pt = {Rational(a, 2), Rational(b, 2)};
            CHECK(support_contains(c.fan, pt) == support_contains(s.fan, pt));
        }
}

TEST_CASE("product of P1 with P1") {
    TropicalFanCycle c = product(p1_cycle(), p1_cycle());
    CHECK(c.fan.rays.size() == 4);
    CHECK(c.fan.maximal.size() == 4);
    CHECK(c.dim == 2);
    for (int m : c.fan.maximal) CHECK(c.weights.at(m) == 1);
    CHECK(is_balanced(c).balanced);
}

TEST_CASE("product with a point cycle is an isomorphic copy") {
    Fan pointf = build_fan(0, {}, {{}});
    TropicalFanCycle pointc = make_cycle(std::move(pointf), {{0, Integer(1)}});
    TropicalFanCycle c = product(line_cycle(), pointc);
    CHECK(c.fan.rays.size() == 3);
    CHECK(c.fan.maximal.size() == 3);
    CHECK(c.dim == 1);
}

TEST_CASE("product multiplies weights") {
    Fan f1 = build_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
    std::map<int, Integer> w1;
    for (int m : f1.maximal) w1[m] = 2;
    Fan f2 = build_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
    std::map<int, Integer> w2;
    for (int m : f2.maximal) w2[m] = 3;
    TropicalFanCycle c = product(make_cycle(std::move(f1), std::move(w1)),
                                 make_cycle(std::move(f2), std::move(w2)));
    for (int m : c.fan.maximal) CHECK(c.weights.at(m) == 6);
}

TEST_CASE("restriction of the P2 cycle to a ray") {
    TropicalFanCycle c = p2_cycle();
    TropicalFanCycle r = restrict_to_stratum(c, c.fan.cone_index({0}));
    CHECK(r.dim == 1);
    CHECK(r.fan.rays.size() == 2);
    for (int m : r.fan.maximal) CHECK(r.weights.at(m) == 1);
    CHECK(is_balanced(r).balanced);
}

TEST_CASE("restriction at the origin is the cycle itself") {
    TropicalFanCycle c = line_cycle();
    TropicalFanCycle r = restrict_to_stratum(c, c.fan.cone_index({}));
    CHECK(r.fan.rays == c.fan.rays);
    CHECK(r.fan.cones == c.fan.cones);
}

TEST_CASE("restriction of the line at a ray is a weight-one point") {
    TropicalFanCycle c = line_cycle();
    TropicalFanCycle r = restrict_to_stratum(c, c.fan.cone_index({0}));
    CHECK(r.dim == 0);
    CHECK(r.weights.size() == 1);
    CHECK(r.weights.begin()->second == 1);
}

TEST_CASE("restriction to any stratum stays balanced") {
    for (TropicalFanCycle c : {p2_cycle(), line_cycle()}) {
        for (int cone = 0; cone < (int)c.fan.cones.size(); ++cone) {
            if (c.fan.dim(cone) > c.dim) continue;
            TropicalFanCycle r = restrict_to_stratum(c, cone);
            CHECK(is_balanced(r).balanced);
            CHECK(r.dim == c.dim - c.fan.dim(cone));
        }
    }
}

TEST_CASE("scaling weights preserves balancing") {
    TropicalFanCycle c = line_cycle();
    std::map<int, Integer> w = c.weights;
    for (auto& [k, v] : w) v *= 5;
    TropicalFanCycle scaled = make_cycle(c.fan, std::move(w));
    CHECK(is_balanced(scaled).balanced);
}

TEST_CASE("completeness") {
    CHECK(is_complete(p2_fan()));
    CHECK_FALSE(is_complete(line_fan()));
}
