#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "ramcount/ore.hpp"
#include "ramcount/oracle.hpp"
#include "ramcount/residual.hpp"

using namespace ramcount;

namespace {

const BaseField K3(3);
const BaseField K2(2);

ResiduePolynomial poly(const BaseField& K, std::vector<int> cs) {
    ResiduePolynomial a;
    for (const int c : cs) a.coeffs.push_back(K.element(c));
    return a;
}

std::vector<std::string> member_names(const InvariantOrbit& o) {
    std::vector<std::string> out;
    for (const auto& m : o.members) out.push_back(m.to_string());
    return out;
}

}  // namespace

TEST_CASE("tame residual of the horizontal segment") {
    CHECK(fixed_tame_residual(K3, 6)->to_string() == "2,0,0,1");
    CHECK(fixed_tame_residual(K2, 6)->to_string() == "1,0,1,0,1");
    CHECK(!fixed_tame_residual(K3, 9).has_value());
    CHECK(fixed_tame_residual(BaseField(7), 3)->to_string() == "3,3,1");
}

TEST_CASE("support positions") {
    const auto R = parse_polygon(K3, 9, "1,8;3,6;9,0");
    CHECK(support_positions(R.segments()[0]) == std::vector<std::int64_t>{0, 2, 8});
    const auto R2 = parse_polygon(K3, 9, "1,7;3,3;9,0");
    CHECK(support_positions(R2.segments()[0]) == std::vector<std::int64_t>{0, 2});
    CHECK(support_positions(parse_polygon(K3, 6, "1,1;3,0").segments()[1]) == std::vector<std::int64_t>{0, 3});
}

TEST_CASE("tuple wire format") {
    const auto t = parse_tuple(K3, "1,2|2,0,0,1");
    REQUIRE(t.polys.size() == 2);
    CHECK(t.polys[0] == poly(K3, {1, 2}));
    CHECK(t.polys[1] == poly(K3, {2, 0, 0, 1}));
    CHECK(t.to_string() == "1,2|2,0,0,1");
    CHECK(t.codes() == std::vector<std::uint32_t>{1, 2, 2, 0, 0, 1});
    CHECK_THROWS_AS(parse_tuple(K3, "1,3"), InvalidArgument);
}

TEST_CASE("check_tuple") {
    const auto R = parse_polygon(K3, 9, "1,10;3,3;9,0");
    CHECK(check_tuple(K3, R, parse_tuple(K3, "1,2|2,0,0,1"), K3.one()));
    CHECK(check_tuple(K3, R, parse_tuple(K3, "1,1|1,0,0,1"), K3.one()));
    CHECK(!check_tuple(K3, R, parse_tuple(K3, "1,1|2,0,0,1"), K3.one()));
    CHECK(!check_tuple(K3, R, parse_tuple(K3, "1,0|1,0,0,1"), K3.one()));  // zero at a point
    CHECK(!check_tuple(K3, R, parse_tuple(K3, "1,1|1,0,1,1"), K3.one()));  // off the support
    CHECK_THROWS_AS(check_tuple(K3, R, parse_tuple(K3, "1,1"), K3.one()), InvalidTuple);
    CHECK_THROWS_AS(check_tuple(K3, R, parse_tuple(K3, "1,1,1|1,0,0,1"), K3.one()), InvalidTuple);

    // the tail is fixed
    const auto T = parse_polygon(K3, 6, "1,1;3,0");
    CHECK(check_tuple(K3, T, parse_tuple(K3, "1,2|2,0,0,1"), K3.one()));
    CHECK(!check_tuple(K3, T, parse_tuple(K3, "1,2|1,0,0,1"), K3.one()));
}

TEST_CASE("the worked orbit") {
    const auto R = parse_polygon(K3, 9, "1,10;3,3;9,0");
    const auto o = orbit_of(K3, R, parse_tuple(K3, "1,2|2,0,0,1"));
    CHECK(member_names(o) == std::vector<std::string>{"1,1|1,0,0,1", "1,2|2,0,0,1"});
    CHECK(o.representative.to_string() == "1,1|1,0,0,1");
    CHECK(o.mass == Rational(2));
    CHECK(o.contains(parse_tuple(K3, "1,1|1,0,0,1")));
    CHECK(!o.contains(parse_tuple(K3, "2,1|1,0,0,1")));
    CHECK(count_by_invariant(K3, R, o) == 162);
}

TEST_CASE("enumerations") {
    const auto R7 = enumerate_invariants(K3, parse_polygon(K3, 9, "1,7;3,3;9,0"));
    REQUIRE(R7.size() == 2);
    CHECK(R7[0].representative.to_string() == "1,0,1|1,0,0,1");
    CHECK(R7[1].representative.to_string() == "1,0,2|2,0,0,1");

    const auto half = enumerate_invariants(K3, parse_polygon(K3, 6, "1,6;3,0"));
    REQUIRE(half.size() == 2);
    CHECK(half[0].mass == Rational(1, 2));
    CHECK(half[0].size() == 1);

    const BaseField F4(2, 1, 2);
    const auto o = enumerate_invariants(F4, parse_polygon(F4, 2, "1,1;2,0"));
    REQUIRE(o.size() == 1);
    CHECK(o[0].size() == 3);

    CHECK_THROWS_AS(enumerate_invariants(K3, parse_polygon(K3, 9, "1,7;3,3;9,0"), 3), BudgetExceeded);
}

TEST_CASE("fixed digits") {
    const auto R = parse_polygon(K3, 9, "1,10;3,3;9,0");
    const auto t = parse_tuple(K3, "1,1|1,0,0,1");
    const auto d1 = fixed_digit(K3, R, t, K3.one(), 1);
    CHECK(d1.index == 3);
    CHECK(d1.position == 1);
    CHECK(d1.digit == K3.element(2));
    const auto d0 = fixed_digit(K3, R, t, K3.one(), 0);
    CHECK(d0.index == 1);
    CHECK(d0.position == 2);
    CHECK(d0.digit == K3.element(1));
    CHECK_THROWS_AS(fixed_digit(K3, R, t, K3.one(), 2), InvalidArgument);
}

TEST_CASE("the action is a group action") {
    for (const auto& [p, f, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 9}, {2, 1, 4}, {2, 2, 4}, {3, 2, 3}, {3, 1, 6}, {2, 3, 2}}) {
        const BaseField K(p, 1, f);
        for (const auto J0 : valid_discriminants(K, n)) {
            for (const auto& R : enumerate_polygons(K, n, J0)) {
                for (const auto& o : enumerate_invariants(K, R)) {
                    const auto& t = o.representative;
                    CHECK(apply_action(K, R, t, K.one()) == t);
                    for (const auto d1 : K.units()) {
                        for (const auto d2 : K.units()) {
                            CHECK(apply_action(K, R, apply_action(K, R, t, d1), d2) ==
                                  apply_action(K, R, t, K.mul(d1, d2)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("the action scales each point by delta^-J") {
    for (const auto& [p, f, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 9}, {2, 1, 8}, {2, 2, 4}, {3, 1, 6}}) {
        const BaseField K(p, 1, f);
        for (const auto J0 : valid_discriminants(K, n)) {
            for (const auto& R : enumerate_polygons(K, n, J0)) {
                for (const auto& o : enumerate_invariants(K, R)) {
                    for (const auto d : K.units()) {
                        const auto moved = apply_action(K, R, o.representative, d);
                        for (std::size_t s = 0; s < R.segments().size(); ++s) {
                            const auto& seg = R.segments()[s];
                            for (const auto& pt : seg.points_on) {
                                const auto j = static_cast<std::size_t>((pt.x - seg.left.x) / seg.e_den);
                                const auto expected = K.mul(o.representative.polys[s].coeff(j), K.pow(d, -pt.J));
                                CHECK(moved.polys[s].coeff(j) == expected);
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("orbits partition the realizable tuples") {
    for (const auto& [p, f, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 9}, {2, 1, 8}, {2, 2, 4}, {3, 1, 6}, {5, 1, 5}}) {
        const BaseField K(p, 1, f);
        for (const auto J0 : valid_discriminants(K, n)) {
            for (const auto& R : enumerate_polygons(K, n, J0)) {
                const auto orbits = enumerate_invariants(K, R);
                std::set<std::vector<std::uint32_t>> seen;
                std::uint64_t realizations = 0;
                BigCount total = 0;
                for (const auto& o : orbits) {
                    CHECK(orbit_of(K, R, o.representative).members == o.members);
                    for (const auto& m : o.members) CHECK(seen.insert(m.codes()).second);
                    realizations += o.realizations;
                    total += count_by_invariant(K, R, o);
                }
                // every (phi, leading digits) choice gives exactly one realized tuple
                const auto B = b_set(R);
                std::uint64_t pairs = K.q() - 1;
                for (std::size_t k = 0; k < B.size(); ++k) pairs *= K.q() - 1;
                CHECK(realizations == pairs);
                CHECK(total == count_by_polygon(K, R));
            }
        }
    }
}

TEST_CASE("residuals agree with the ramification polynomial") {
    struct Case {
        int p;
        std::vector<std::int64_t> f;
    };
    std::vector<Case> cases = {
        {3, {3, 9, 0, 6, 0, 0, 0, 0, 0}},      // x^9 + 6x^3 + 9x + 3
        {3, {3, 0, 0, 0, 0, 0, 0, 3, 0}},      // x^9 + 3x^7 + 3
        {3, {3, 3, 0, 0, 0, 0}},               // degree 6
        {3, {6, 0, 0, 0, 9, 0}},
        {2, {2, 2, 0, 0}},
        {2, {2, 0, 4, 0, 0, 2}},
    };
    std::mt19937_64 rng(20261016);
    for (int k = 0; k < 60; ++k) {
        const int p = k % 2 ? 2 : 3;
        const int n = p == 3 ? (k % 4 == 0 ? 9 : 6) : (k % 3 == 0 ? 8 : 4);
        std::vector<std::int64_t> f(n);
        f[0] = p * (1 + static_cast<std::int64_t>(rng() % (p - 1))) + p * p * static_cast<std::int64_t>(rng() % p);
        for (int i = 1; i < n; ++i) {
            const int v = 1 + static_cast<int>(rng() % 4);
            std::int64_t pv = 1;
            for (int j = 0; j < v; ++j) pv *= p;
            f[i] = v == 4 ? 0 : pv * static_cast<std::int64_t>(rng() % (p * p));
        }
        cases.push_back({p, f});
    }
    for (const auto& [p, coeffs] : cases) {
        const BaseField K(p);
        const int n = static_cast<int>(coeffs.size());
        CAPTURE(p);
        CAPTURE(n);
        const auto f = eisenstein_from_integers(K, coeffs, 8);
        CAPTURE(f.to_string());
        const oracle::EisensteinRing ring(p, p == 2 ? 40 : 24, coeffs);
        std::vector<std::int64_t> w(n + 1, 0);
        for (int i = 1; i <= n; ++i) w[i] = ring.rho_val(i);
        const auto hull = oracle::hull_points(w, p);

        const auto R = ram_polygon_of(K, f);
        std::vector<std::pair<std::int64_t, std::int64_t>> got;
        for (const auto& pt : R.all_points()) got.emplace_back(pt.x, pt.J);
        CHECK(got == hull);

        const auto t = residual_tuple_of(K, f);
        REQUIRE(t.polys.size() == R.segments().size());
        for (std::size_t s = 0; s < R.segments().size(); ++s) {
            const auto& seg = R.segments()[s];
            for (const auto& pt : seg.points_on) {
                const auto j = static_cast<std::size_t>((pt.x - seg.left.x) / seg.e_den);
                CHECK(static_cast<std::int64_t>(t.polys[s].coeff(j).code) ==
                      ring.rho_residue(static_cast<int>(pt.x), pt.J));
            }
        }
        CHECK(check_tuple(K, R, t, f.digit(0, 1)));
    }
}
