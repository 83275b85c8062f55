// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ramcount/cli.hpp"
#include "ramcount/ore.hpp"
#include "ramcount/oracle.hpp"
#include "ramcount/templates.hpp"

using namespace ramcount;
using json = nlohmann::json;

namespace {

// Degree 9 over Q_3, J0 <= 12. Tuples in wire format (coefficients low to high).
struct OrbitRow {
    std::string tuple;
    std::string mass;
    int count;
};
struct PolygonRow {
    std::string polygon;
    std::vector<OrbitRow> orbits;
    int total;
};
struct J0Row {
    int J0;
    std::vector<PolygonRow> polygons;
    int total;
};

const std::vector<J0Row> kDegree9 = {
    {1, {{"1,1;9,0", {{"1,1", "2", 18}}, 18}}, 18},
    {2, {{"1,2;9,0", {{"1,0,1", "1", 9}, {"2,0,1", "1", 9}}, 18}}, 18},
    {4,
     {{"1,4;9,0", {{"1,0,0,0,1", "1", 9}, {"2,0,0,0,1", "1", 9}}, 18},
      {"1,4;3,3;9,0", {{"1,1,0,0,1", "2", 18}, {"2,1,0,0,1", "2", 18}}, 36}},
     54},
    {5,
     {{"1,5;9,0", {{"1,1", "2", 18}}, 18},
      {"1,5;3,3;9,0", {{"1,0,1|1,0,0,1", "2", 18}, {"1,0,2|2,0,0,1", "2", 18}}, 36}},
     54},
    {7,
     {{"1,7;9,0", {{"1,1", "2", 54}}, 54},
      {"1,7;3,3;9,0", {{"1,0,1|1,0,0,1", "2", 54}, {"1,0,2|2,0,0,1", "2", 54}}, 108}},
     162},
    {8,
     {{"1,8;9,0", {{"1,0,0,0,0,0,0,0,1", "1", 9}, {"2,0,0,0,0,0,0,0,1", "1", 9}}, 18},
      {"1,8;3,3;9,0", {{"1,1|1,0,0,1", "2", 54}, {"2,1|1,0,0,1", "2", 54}}, 108},
      {"1,8;3,6;9,0",
       {{"1,0,1,0,0,0,0,0,1", "1", 9},
        {"1,0,2,0,0,0,0,0,1", "1", 9},
        {"2,0,1,0,0,0,0,0,1", "1", 9},
        {"2,0,2,0,0,0,0,0,1", "1", 9}},
       36}},
     162},
    {10,
     {{"1,10;9,0", {{"1,0,1", "1", 27}, {"2,0,1", "1", 27}}, 54},
      {"1,10;3,3;9,0", {{"1,1|1,0,0,1", "2", 162}, {"2,1|1,0,0,1", "2", 162}}, 324},
      {"1,10;3,6;9,0",
       {{"1,0,1|1,0,0,0,0,0,1", "1", 27},
        {"1,0,2|2,0,0,0,0,0,1", "1", 27},
        {"2,0,1|1,0,0,0,0,0,1", "1", 27},
        {"2,0,2|2,0,0,0,0,0,1", "1", 27}},
       108}},
     486},
    {11,
     {{"1,11;9,0", {{"1,1", "2", 54}}, 54},
      {"1,11;3,3;9,0", {{"1,0,1|1,0,0,1", "2", 162}, {"1,0,2|2,0,0,1", "2", 162}}, 324},
      {"1,11;3,6;9,0", {{"1,1|1,0,0,0,0,0,1", "2", 54}, {"1,2|2,0,0,0,0,0,1", "2", 54}}, 108}},
     486},
    {12, {{"1,12;3,3;9,0", {{"1,2|2,0,0,1", "1", 243}, {"2,1|1,0,0,1", "1", 243}}, 486}}, 486},
};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (notes.size() < 8) notes.push_back(what);
        }
    }
};

// ---- 1 ---------------------------------------------------------------------

Outcome table_reproduction() {
    Outcome o;
    std::ostringstream out, err;
    const int code = run_cli({"table", "--p", "3", "--n", "9", "--max-j0", "12", "--format", "json"}, out, err);
    o.require(code == 0, "table exited with " + std::to_string(code) + ": " + err.str());
    if (code != 0) return o;
    const auto doc = json::parse(out.str());
    o.require(doc["rows"].size() == kDegree9.size(), "number of J0 rows");
    for (const auto& want : kDegree9) {
        const json* row = nullptr;
        for (const auto& r : doc["rows"]) {
            if (r["j0"] == want.J0) row = &r;
        }
        const std::string tag = "J0=" + std::to_string(want.J0);
        o.require(row != nullptr, tag + " missing");
        if (!row) continue;
        o.require((*row)["count"] == std::to_string(want.total), tag + " total");
        o.require((*row)["polygons"].size() == want.polygons.size(), tag + " polygon count");
        for (const auto& wp : want.polygons) {
            const json* pe = nullptr;
            for (const auto& x : (*row)["polygons"]) {
                if (x["polygon"] == wp.polygon) pe = &x;
            }
            o.require(pe != nullptr, tag + " polygon " + wp.polygon + " missing");
            if (!pe) continue;
            o.require((*pe)["count"] == std::to_string(wp.total), tag + " " + wp.polygon + " subtotal");
            o.require((*pe)["orbits"].size() == wp.orbits.size(), tag + " " + wp.polygon + " orbit count");
            std::set<std::size_t> used;
            for (const auto& wo : wp.orbits) {
                // orbits are compared as sets: find ours containing the listed representative
                std::optional<std::size_t> hit;
                for (std::size_t k = 0; k < (*pe)["orbits"].size(); ++k) {
                    for (const auto& m : (*pe)["orbits"][k]["members"]) {
                        if (m == wo.tuple) hit = k;
                    }
                }
                o.require(hit.has_value() && used.insert(*hit).second, tag + " orbit of " + wo.tuple);
                if (!hit) continue;
                const auto& ours = (*pe)["orbits"][*hit];
                o.require(ours["size"] == wo.mass, tag + " #A of " + wo.tuple);
                o.require(ours["count"] == std::to_string(wo.count), tag + " count of " + wo.tuple);
            }
        }
    }
    return o;
}

// ---- 2 ---------------------------------------------------------------------

Outcome worked_examples() {
    Outcome o;
    const BaseField K(3);
    o.require(count_by_discriminant(K, 9, 7) == 162, "discriminant count 162");
    const auto R1 = parse_polygon(K, 9, "1,7;9,0");
    const auto R2 = parse_polygon(K, 9, "1,7;3,3;9,0");
    o.require(count_by_polygon(K, R1) == 54, "first polygon 54");
    o.require(count_by_polygon(K, R2) == 108, "second polygon 108");
    const auto orbits = enumerate_invariants(K, R2);
    o.require(orbits.size() == 2, "two orbits on the second polygon");
    for (const auto& orb : orbits) o.require(count_by_invariant(K, R2, orb) == 54, "54 per orbit");

    const auto f = eisenstein_from_integers(K, {3, 9, 0, 6, 0, 0, 0, 0, 0}, 4);  // x^9 + 6x^3 + 9x + 3
    const auto R = ram_polygon_of(K, f);
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (const auto& pt : R.all_points()) pts.emplace_back(pt.x, pt.J);
    o.require(pts == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 10}, {3, 3}, {9, 0}}, "polygon of the example");
    const auto orb = orbit_of(K, R, residual_tuple_of(K, f));
    std::set<std::string> members;
    for (const auto& m : orb.members) members.insert(m.to_string());
    // (1+2x, 2+x^3) and (1+x, 1+x^3)
    o.require(members == std::set<std::string>{"1,2|2,0,0,1", "1,1|1,0,0,1"}, "orbit of the example");
    return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome sum_identities() {
    Outcome o;
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{{3, 9}, {2, 2}, {2, 4}, {2, 8}}) {
        const BaseField K(p);
        for (const auto J0 : valid_discriminants(K, n)) {
            const std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " J0=" + std::to_string(J0);
            BigCount polys = 0;
            for (const auto& R : enumerate_polygons(K, n, J0)) {
                BigCount orbits = 0;
                for (const auto& orb : enumerate_invariants(K, R)) orbits += count_by_invariant(K, R, orb);
                o.require(orbits == count_by_polygon(K, R), tag + " " + R.to_string());
                polys += count_by_polygon(K, R);
            }
            o.require(polys == count_by_discriminant(K, n, J0), tag);
        }
    }
    return o;
}

// ---- 4 ---------------------------------------------------------------------

// Census of Psi_{n,J0}(c) (via the coefficient bounds) compared class by class
// with the template sizes and, after conversion, with the counting formulas.
void census_matches(Outcome& o, const BaseField& K, int n, std::int64_t J0, int c) {
    const std::string tag = "p=" + std::to_string(K.p()) + " n=" + std::to_string(n) + " J0=" + std::to_string(J0) +
                            " c=" + std::to_string(c);
    CensusOptions opt;
    opt.min_val.push_back(1);
    for (int i = 1; i < n; ++i) opt.min_val.push_back(disc_l(i, n, J0, K));
    const auto res = census(K, n, c, opt);

    std::map<std::pair<std::string, std::string>, BigCount> seen;
    for (const auto& [key, v] : res.classes) {
        if (key.J0 == J0) seen[{key.polygon, key.orbit_rep}] += v;
    }
    const auto convert = [&](const BigCount& m) { return extensions_from_disc_count(K, n, J0, c, m); };

    BigCount disc_total = 0;
    std::size_t expected_classes = 0;
    for (const auto& R : enumerate_polygons(K, n, J0)) {
        BigCount poly_total = 0;
        for (const auto& orb : enumerate_invariants(K, R)) {
            ++expected_classes;
            const auto it = seen.find({R.to_string(), orb.representative.to_string()});
            const BigCount got = it == seen.end() ? BigCount(0) : it->second;
            o.require(got == invariant_templates_size(K, R, orb, c), tag + " orbit " + orb.representative.to_string());
            o.require(convert(got) == count_by_invariant(K, R, orb), tag + " orbit count " + orb.representative.to_string());
            poly_total += got;
        }
        o.require(poly_total == psi_polygon_count(K, R, c), tag + " polygon " + R.to_string());
        o.require(convert(poly_total) == count_by_polygon(K, R), tag + " polygon count " + R.to_string());
        disc_total += poly_total;
    }
    o.require(seen.size() == expected_classes, tag + " unexpected classes");
    o.require(disc_total == psi_disc_count(K, n, J0, c), tag + " discriminant");
    o.require(convert(disc_total) == count_by_discriminant(K, n, J0), tag + " discriminant count");
}

Outcome census_equivalence() {
    Outcome o;
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}}) {
        const BaseField K(p);
        for (const auto J0 : valid_discriminants(K, n)) census_matches(o, K, n, J0, default_precision(n, J0));
    }
    census_matches(o, BaseField(3), 9, 7, 3);
    return o;
}

// ---- 5 ---------------------------------------------------------------------

Outcome disc_structure() {
    Outcome o;
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}}) {
        const BaseField K(p);
        for (const auto J0 : valid_discriminants(K, n)) {
            const auto rep = disc_disjointness(K, n, J0, default_precision(n, J0));
            o.require(rep.ok && rep.polynomials > 0,
                      "p=" + std::to_string(p) + " n=" + std::to_string(n) + " J0=" + std::to_string(J0) + ": " +
                          std::to_string(rep.violations) + " of " + std::to_string(rep.polynomials));
        }
    }
    return o;
}

// ---- 6 ---------------------------------------------------------------------

Outcome two_precisions() {
    Outcome o;
    for (const auto& [p, f, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 9}, {2, 1, 2}, {2, 1, 4}, {2, 1, 8}, {2, 2, 4}}) {
        const BaseField K(p, 1, f);
        for (const auto J0 : valid_discriminants(K, n)) {
            const int c = default_precision(n, J0);
            const std::string tag = "p=" + std::to_string(p) + " f=" + std::to_string(f) + " n=" + std::to_string(n) +
                                    " J0=" + std::to_string(J0);
            const auto at = [&](int cc, const BigCount& size) { return extensions_from_disc_count(K, n, J0, cc, size); };
            o.require(at(c, build_psi_disc(K, n, J0, c).size()) == at(c + 1, build_psi_disc(K, n, J0, c + 1).size()), tag);
            for (const auto& R : enumerate_polygons(K, n, J0)) {
                o.require(at(c, build_psi_polygon(K, R, c).size()) == at(c + 1, build_psi_polygon(K, R, c + 1).size()),
                          tag + " " + R.to_string());
                for (const auto& orb : enumerate_invariants(K, R)) {
                    o.require(at(c, invariant_templates_size(K, R, orb, c)) ==
                                  at(c + 1, invariant_templates_size(K, R, orb, c + 1)),
                              tag + " " + R.to_string() + " " + orb.representative.to_string());
                }
            }
        }
    }
    return o;
}

// ---- 7 ---------------------------------------------------------------------

Outcome strictness() {
    Outcome o;
    const BaseField K(3);
    const auto R = parse_polygon(K, 9, "1,4;9,0");
    o.require(point_bound(K, R, 3, 1) == 2, "no-point bound at i=3");
    const auto orbits = enumerate_invariants(K, R);
    o.require(orbits.size() == 2, "two orbits");
    for (const auto& orb : orbits) {
        o.require(count_by_invariant(K, R, orb) == 9, "count " + count_by_invariant(K, R, orb).str() + " for " +
                                                          orb.representative.to_string());
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table reproduction (degree 9 over Q_3, J0 <= 12)", table_reproduction},
        {"worked examples", worked_examples},
        {"sum identities", sum_identities},
        {"census equivalence", census_equivalence},
        {"discriminant templates are disjoint", disc_structure},
        {"two-precision independence", two_precisions},
        {"strict no-point bound", strictness},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " ("
                  << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s)\n";
        for (const auto& n : o.notes) std::cout << "    " << n << '\n';
        if (!o.pass) ++failed;
    }
    return failed;
}
