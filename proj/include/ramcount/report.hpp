#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ramcount/oracle.hpp"
#include "ramcount/templates.hpp"

namespace ramcount {

struct OrbitEntry {
    std::string representative;
    std::vector<std::string> members;
    Rational mass;  // #A
    BigCount count;
};

struct PolygonEntry {
    std::string polygon;
    std::vector<std::int64_t> b_set;
    std::int64_t sum_L = 0;
    BigCount count;
    std::vector<OrbitEntry> orbits;  // filled when invariants are requested
};

struct J0Entry {
    std::int64_t J0 = 0;
    std::int64_t disc_exponent = 0;
    BigCount count;  // by discriminant
    std::vector<PolygonEntry> polygons;
};

/// J0 -> polygon -> orbit hierarchy for one degree.
struct CountTable {
    int p = 2, e = 1, f = 1, n = 1;
    std::vector<J0Entry> rows;
};

PolygonEntry polygon_entry(const BaseField& base, const RamificationPolygon& R, bool with_orbits);

/// All valid J0 <= max_j0 (max_j0 < 0: all) with polygons and orbits.
CountTable build_table(const BaseField& base, int n, std::int64_t max_j0);

/// Quotes a CSV field when it contains a separator or quote.
std::string csv_field(const std::string& s);

nlohmann::ordered_json to_json(const CountTable& t);
std::string to_csv(const CountTable& t);
std::string to_plain(const CountTable& t);

nlohmann::ordered_json to_json(const PsiTemplate& t);
nlohmann::ordered_json to_json(const CensusResult& r);
std::string to_csv(const CensusResult& r);

}  // namespace ramcount
