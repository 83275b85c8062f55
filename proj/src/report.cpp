#include "ramcount/report.hpp"

#include <sstream>

#include "ramcount/ore.hpp"

namespace ramcount {

namespace {

using json = nlohmann::ordered_json;

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

}  // namespace

PolygonEntry polygon_entry(const BaseField& base, const RamificationPolygon& R, bool with_orbits) {
    PolygonEntry e;
    e.polygon = R.to_string();
    const auto B = b_set(R);
    e.b_set.assign(B.begin(), B.end());
    e.sum_L = lower_bound_sum(base, R);
    e.count = count_by_polygon(base, R);
    if (with_orbits) {
        for (const auto& o : enumerate_invariants(base, R)) {
            OrbitEntry oe;
            oe.representative = o.representative.to_string();
            for (const auto& m : o.members) oe.members.push_back(m.to_string());
            oe.mass = o.mass;
            oe.count = count_by_invariant(base, R, o);
            e.orbits.push_back(std::move(oe));
        }
    }
    return e;
}

CountTable build_table(const BaseField& base, int n, std::int64_t max_j0) {
    CountTable t;
    t.p = base.p();
    t.e = base.e();
    t.f = base.f();
    t.n = n;
    for (const auto J0 : valid_discriminants(base, n)) {
        if (max_j0 >= 0 && J0 > max_j0) break;
        J0Entry row;
        row.J0 = J0;
        row.disc_exponent = n + J0 - 1;
        row.count = count_by_discriminant(base, n, J0);
        for (const auto& R : enumerate_polygons(base, n, J0)) row.polygons.push_back(polygon_entry(base, R, true));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n;|") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

json to_json(const CountTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json polys = json::array();
        for (const auto& pe : r.polygons) {
            json orbits = json::array();
            for (const auto& o : pe.orbits) {
                orbits.push_back({{"representative", o.representative},
                                  {"members", o.members},
                                  {"size", to_string(o.mass)},
                                  {"count", o.count.str()}});
            }
            polys.push_back({{"polygon", pe.polygon},
                             {"b_set", pe.b_set},
                             {"sum_L", pe.sum_L},
                             {"count", pe.count.str()},
                             {"orbits", orbits}});
        }
        rows.push_back({{"j0", r.J0}, {"disc_exponent", r.disc_exponent}, {"count", r.count.str()}, {"polygons", polys}});
    }
    return {{"p", t.p}, {"e", t.e}, {"f", t.f}, {"n", t.n}, {"rows", rows}};
}

std::string to_csv(const CountTable& t) {
    std::ostringstream os;
    os << "j0,polygon,orbit_rep,orbit_size,count,polygon_total,j0_total\n";
    for (const auto& r : t.rows) {
        for (const auto& pe : r.polygons) {
            for (const auto& o : pe.orbits) {
                os << r.J0 << ',' << csv_field(pe.polygon) << ',' << csv_field(o.representative) << ','
                   << csv_field(to_string(o.mass)) << ',' << o.count << ',' << pe.count << ',' << r.count << '\n';
            }
        }
    }
    return os.str();
}

std::string to_plain(const CountTable& t) {
    std::ostringstream os;
    os << "degree " << t.n << " over p=" << t.p;
    if (t.e != 1 || t.f != 1) os << " e=" << t.e << " f=" << t.f;
    os << '\n';
    for (const auto& r : t.rows) {
        os << "J0=" << r.J0 << "  disc P^" << r.disc_exponent << "  total " << r.count << '\n';
        for (const auto& pe : r.polygons) {
            os << "  polygon " << pe.polygon << "  B={" << join(pe.b_set) << "}  sum L=" << pe.sum_L << "  total "
               << pe.count << '\n';
            for (const auto& o : pe.orbits) {
                os << "    " << o.representative << "  #A=" << to_string(o.mass) << "  count " << o.count << '\n';
            }
        }
    }
    return os.str();
}

json to_json(const PsiTemplate& t) {
    json cs = json::array();
    for (const auto& cc : t.constraints()) {
        json c = {{"i", cc.i}, {"min", cc.min_val}, {"exact", cc.exact}};
        if (cc.fixed_digit) c["digit"] = {cc.fixed_digit->first, cc.fixed_digit->second.code};
        cs.push_back(std::move(c));
    }
    json prov = {{"j0", t.provenance().J0}};
    if (!t.provenance().polygon.empty()) prov["polygon"] = t.provenance().polygon;
    if (!t.provenance().tuple.empty()) prov["tuple"] = t.provenance().tuple;
    if (t.provenance().phi) prov["f0_digit"] = t.provenance().phi->code;
    return {{"p", t.base().p()},
            {"e", t.base().e()},
            {"f", t.base().f()},
            {"n", t.n()},
            {"c", t.c()},
            {"level", to_string(t.level())},
            {"provenance", prov},
            {"size", t.size().str()},
            {"constraints", cs}};
}

json to_json(const CensusResult& r) {
    json classes = json::array();
    for (const auto& [k, v] : r.classes) {
        classes.push_back({{"j0", k.J0}, {"polygon", k.polygon}, {"orbit_rep", k.orbit_rep}, {"count", std::to_string(v)}});
    }
    return {{"visited", std::to_string(r.visited)}, {"next_index", std::to_string(r.next_index)}, {"classes", classes}};
}

std::string to_csv(const CensusResult& r) {
    std::ostringstream os;
    os << "j0,polygon,orbit_rep,count\n";
    for (const auto& [k, v] : r.classes) {
        os << k.J0 << ',' << csv_field(k.polygon) << ',' << csv_field(k.orbit_rep) << ',' << v << '\n';
    }
    return os.str();
}

}  // namespace ramcount
