#include "ramcount/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ramcount/ore.hpp"
#include "ramcount/report.hpp"

namespace ramcount {

namespace {

using json = nlohmann::ordered_json;

struct FieldArgs {
    int p = 0;
    int e = 1;
    int f = 1;
    int n = 0;
    std::string format = "plain";

    BaseField base() const { return BaseField(p, e, f); }
};

void add_field_options(CLI::App* sc, FieldArgs& a, bool with_n = true) {
    sc->add_option("--p", a.p, "residue characteristic")->required();
    sc->add_option("--e", a.e, "ramification index of the base field")->capture_default_str();
    sc->add_option("--f", a.f, "residue degree of the base field")->capture_default_str();
    if (with_n) sc->add_option("--n", a.n, "degree of the extensions")->required()->check(CLI::PositiveNumber);
    sc->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}))
        ->capture_default_str();
}

std::string b_string(const std::vector<std::int64_t>& b) {
    std::string s;
    for (std::size_t k = 0; k < b.size(); ++k) s += (k ? "," : "") + std::to_string(b[k]);
    return s;
}

json field_json(const FieldArgs& a) { return {{"p", a.p}, {"e", a.e}, {"f", a.f}, {"n", a.n}}; }

// ---- ore -------------------------------------------------------------------

void cmd_ore(const FieldArgs& a, std::ostream& out) {
    const BaseField base = a.base();
    const auto J0s = valid_discriminants(base, a.n);
    if (a.format == "json") {
        json rows = json::array();
        for (const auto J0 : J0s) {
            rows.push_back({{"j0", J0},
                            {"disc_exponent", a.n + J0 - 1},
                            {"count", count_by_discriminant(base, a.n, J0).str()}});
        }
        json doc = field_json(a);
        doc["rows"] = rows;
        out << doc.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "j0,disc_exponent,count\n";
        for (const auto J0 : J0s) out << J0 << ',' << a.n + J0 - 1 << ',' << count_by_discriminant(base, a.n, J0) << '\n';
    } else {
        for (const auto J0 : J0s) {
            out << "J0=" << J0 << "  disc P^" << a.n + J0 - 1 << "  extensions " << count_by_discriminant(base, a.n, J0)
                << '\n';
        }
    }
}

// ---- polygons --------------------------------------------------------------

void cmd_polygons(const FieldArgs& a, std::int64_t J0, std::ostream& out) {
    const BaseField base = a.base();
    std::vector<PolygonEntry> entries;
    for (const auto& R : enumerate_polygons(base, a.n, J0)) entries.push_back(polygon_entry(base, R, false));
    if (a.format == "json") {
        json rows = json::array();
        for (const auto& e : entries) {
            rows.push_back({{"polygon", e.polygon}, {"b_set", e.b_set}, {"sum_L", e.sum_L}, {"count", e.count.str()}});
        }
        json doc = field_json(a);
        doc["j0"] = J0;
        doc["polygons"] = rows;
        out << doc.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "polygon,b_set,sum_L,count\n";
        for (const auto& e : entries) {
            out << csv_field(e.polygon) << ',' << csv_field(b_string(e.b_set)) << ',' << e.sum_L << ',' << e.count
                << '\n';
        }
    } else {
        for (const auto& e : entries) {
            out << e.polygon << "  B={" << b_string(e.b_set) << "}  sum L=" << e.sum_L << "  extensions " << e.count
                << '\n';
        }
    }
}

// ---- invariants ------------------------------------------------------------

void cmd_invariants(const FieldArgs& a, const std::string& polygon, std::ostream& out) {
    const BaseField base = a.base();
    const auto R = parse_polygon(base, a.n, polygon);
    require_feasible(base, R);
    const PolygonEntry e = polygon_entry(base, R, true);
    if (a.format == "json") {
        json orbits = json::array();
        for (const auto& o : e.orbits) {
            orbits.push_back({{"representative", o.representative},
                              {"members", o.members},
                              {"size", to_string(o.mass)},
                              {"count", o.count.str()}});
        }
        json doc = field_json(a);
        doc["polygon"] = e.polygon;
        doc["count"] = e.count.str();
        doc["orbits"] = orbits;
        out << doc.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "orbit_rep,orbit_size,members,count\n";
        for (const auto& o : e.orbits) {
            std::string members;
            for (std::size_t k = 0; k < o.members.size(); ++k) members += (k ? " " : "") + o.members[k];
            out << csv_field(o.representative) << ',' << csv_field(to_string(o.mass)) << ',' << csv_field(members)
                << ',' << o.count << '\n';
        }
    } else {
        out << e.polygon << "  extensions " << e.count << '\n';
        for (const auto& o : e.orbits) {
            out << "  " << o.representative << "  #A=" << to_string(o.mass) << "  extensions " << o.count
                << "  members";
            for (const auto& m : o.members) out << ' ' << m;
            out << '\n';
        }
    }
}

// ---- templates -------------------------------------------------------------

struct TemplateArgs {
    std::optional<std::int64_t> j0;
    std::string polygon;
    std::optional<std::size_t> orbit_index;
    std::string tuple;
    std::optional<std::uint32_t> phi;
    std::optional<int> c;
    bool emit = false;
    std::uint64_t cap = 100000;
};

void cmd_templates(const FieldArgs& a, const TemplateArgs& t, std::ostream& out) {
    const BaseField base = a.base();
    std::optional<PsiTemplate> tmpl;
    if (!t.polygon.empty()) {
        const auto R = parse_polygon(base, a.n, t.polygon);
        require_feasible(base, R);
        const int c = t.c.value_or(default_precision(a.n, R.J0()));
        if (!t.orbit_index) {
            tmpl = build_psi_polygon(base, R, c);
        } else {
            const auto orbits = enumerate_invariants(base, R);
            if (*t.orbit_index >= orbits.size()) {
                throw InvalidArgument("orbit index " + std::to_string(*t.orbit_index) + " out of range (" +
                                      std::to_string(orbits.size()) + " orbits)");
            }
            const auto& orbit = orbits[*t.orbit_index];
            const ResidualTuple tuple = t.tuple.empty() ? orbit.representative : parse_tuple(base, t.tuple);
            std::optional<ResidueElement> phi;
            if (t.phi) {
                phi = base.element(*t.phi);
            } else {
                for (const auto& u : base.units()) {
                    if (check_tuple(base, R, tuple, u)) {
                        phi = u;
                        break;
                    }
                }
                if (!phi) throw InvalidTuple("tuple " + tuple.to_string() + " is not realizable");
            }
            tmpl = build_psi_invariant(base, R, orbit, tuple, *phi, c);
        }
    } else if (t.j0) {
        tmpl = build_psi_disc(base, a.n, *t.j0, t.c.value_or(default_precision(a.n, *t.j0)));
    } else {
        throw InvalidArgument("templates needs --j0 or --polygon");
    }

    json doc = to_json(*tmpl);
    if (t.emit) {
        json members = json::array();
        tmpl->for_each_member(t.cap, [&](const TruncatedEisenstein& f) { members.push_back(f.to_string()); });
        doc["members"] = members;
    }
    out << doc.dump(2) << '\n';
}

// ---- verify ----------------------------------------------------------------

struct Check {
    bool pass = false;
    std::string level;
    std::int64_t J0 = 0;
    std::string polygon;
    std::string orbit;
    BigCount expected;
    BigCount observed;
    std::string extensions;  // converted census count
    BigCount theorem;
};

std::string convert(const BaseField& base, int n, std::int64_t J0, int c, const BigCount& observed) {
    try {
        return extensions_from_disc_count(base, n, J0, c, observed).str();
    } catch (const InconsistentCount&) {
        return "not-integral";
    }
}

struct VerifyArgs {
    std::optional<std::int64_t> j0;
    std::optional<int> c;
    std::uint64_t budget = 50'000'000;
    unsigned threads = 0;
};

int cmd_verify(const FieldArgs& a, const VerifyArgs& v, std::ostream& out) {
    const BaseField base = a.base();
    const int n = a.n;
    std::vector<std::int64_t> J0s;
    if (v.j0) {
        require_ore_valid(base, n, *v.j0);
        J0s.push_back(*v.j0);
    } else {
        J0s = valid_discriminants(base, n);
    }

    std::map<int, CensusResult> cache;
    std::vector<Check> checks;
    for (const auto J0 : J0s) {
        const int c = v.c.value_or(default_precision(n, J0));
        require_precision(n, J0, c);
        CensusOptions opts;
        opts.budget = v.budget;
        opts.threads = v.threads;
        const CensusResult* res = nullptr;
        CensusResult filtered;
        if (v.j0) {
            // every polynomial with this discriminant satisfies v(f_i) >= l(i)
            opts.min_val.push_back(1);
            for (int i = 1; i < n; ++i) opts.min_val.push_back(disc_l(i, n, J0, base));
            filtered = census(base, n, c, opts);
            res = &filtered;
        } else {
            auto it = cache.find(c);
            if (it == cache.end()) it = cache.emplace(c, census(base, n, c, opts)).first;
            res = &it->second;
        }

        std::map<std::pair<std::string, std::string>, std::uint64_t> seen;
        for (const auto& [k, cnt] : res->classes) {
            if (k.J0 == J0) seen[{k.polygon, k.orbit_rep}] = cnt;
        }
        auto observed = [&](const std::string& poly, const std::string* rep) {
            BigCount s = 0;
            for (const auto& [k, cnt] : seen) {
                if (k.first == poly && (!rep || k.second == *rep)) s += cnt;
            }
            return s;
        };

        BigCount j0_total = 0;
        std::set<std::pair<std::string, std::string>> expected_keys;
        for (const auto& R : enumerate_polygons(base, n, J0)) {
            const std::string poly = R.to_string();
            for (const auto& o : enumerate_invariants(base, R)) {
                const std::string rep = o.representative.to_string();
                expected_keys.insert({poly, rep});
                Check ch;
                ch.level = "orbit";
                ch.J0 = J0;
                ch.polygon = poly;
                ch.orbit = rep;
                ch.expected = invariant_templates_size(base, R, o, c);
                ch.observed = observed(poly, &rep);
                ch.extensions = convert(base, n, J0, c, ch.observed);
                ch.theorem = count_by_invariant(base, R, o);
                ch.pass = ch.expected == ch.observed && ch.extensions == ch.theorem.str();
                checks.push_back(ch);
            }
            Check ch;
            ch.level = "polygon";
            ch.J0 = J0;
            ch.polygon = poly;
            ch.expected = psi_polygon_count(base, R, c);
            ch.observed = observed(poly, nullptr);
            ch.extensions = convert(base, n, J0, c, ch.observed);
            ch.theorem = count_by_polygon(base, R);
            ch.pass = ch.expected == ch.observed && ch.extensions == ch.theorem.str();
            checks.push_back(ch);
            j0_total += ch.observed;
        }
        for (const auto& [key, cnt] : seen) {
            if (expected_keys.count(key)) continue;
            Check ch;
            ch.level = "unexpected";
            ch.J0 = J0;
            ch.polygon = key.first;
            ch.orbit = key.second;
            ch.observed = cnt;
            ch.extensions = "-";
            checks.push_back(ch);
        }
        Check ch;
        ch.level = "discriminant";
        ch.J0 = J0;
        ch.expected = psi_disc_count(base, n, J0, c);
        BigCount all = 0;
        for (const auto& [key, cnt] : seen) all += cnt;
        ch.observed = all;
        ch.extensions = convert(base, n, J0, c, all);
        ch.theorem = count_by_discriminant(base, n, J0);
        ch.pass = ch.expected == ch.observed && ch.extensions == ch.theorem.str();
        checks.push_back(ch);
    }

    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    if (a.format == "json") {
        json arr = json::array();
        for (const auto& c : checks) {
            arr.push_back({{"result", c.pass ? "PASS" : "FAIL"},
                           {"level", c.level},
                           {"j0", c.J0},
                           {"polygon", c.polygon},
                           {"orbit_rep", c.orbit},
                           {"template_count", c.expected.str()},
                           {"census_count", c.observed.str()},
                           {"extensions", c.extensions},
                           {"theorem", c.theorem.str()}});
        }
        json doc = field_json(a);
        doc["checks"] = arr;
        doc["ok"] = ok;
        out << doc.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "result,level,j0,polygon,orbit_rep,template_count,census_count,extensions,theorem\n";
        for (const auto& c : checks) {
            out << (c.pass ? "PASS" : "FAIL") << ',' << c.level << ',' << c.J0 << ',' << csv_field(c.polygon) << ','
                << csv_field(c.orbit) << ',' << c.expected << ',' << c.observed << ',' << c.extensions << ','
                << c.theorem << '\n';
        }
    } else {
        for (const auto& c : checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.level << " j0=" << c.J0;
            if (!c.polygon.empty()) out << " polygon=" << c.polygon;
            if (!c.orbit.empty()) out << " orbit=" << c.orbit;
            out << " templates=" << c.expected << " census=" << c.observed << " extensions=" << c.extensions
                << " theorem=" << c.theorem << '\n';
        }
    }
    return ok ? kOk : kFailed;
}

// ---- census ----------------------------------------------------------------

struct CensusArgs {
    std::optional<std::int64_t> j0;
    std::optional<int> c;
    std::optional<std::uint64_t> start;
    std::uint64_t end = 0;
    std::string checkpoint;
    std::uint64_t budget = 50'000'000;
    unsigned threads = 0;
};

void cmd_census(const FieldArgs& a, const CensusArgs& ca, std::ostream& out) {
    const BaseField base = a.base();
    CensusOptions opts;
    opts.budget = ca.budget;
    opts.threads = ca.threads;
    opts.end = ca.end;
    int c = 0;
    if (ca.j0) {
        require_ore_valid(base, a.n, *ca.j0);
        c = ca.c.value_or(default_precision(a.n, *ca.j0));
        opts.min_val.push_back(1);
        for (int i = 1; i < a.n; ++i) opts.min_val.push_back(disc_l(i, a.n, *ca.j0, base));
    } else if (ca.c) {
        c = *ca.c;
    } else {
        throw InvalidArgument("census needs --c or --j0");
    }
    if (ca.start) {
        opts.start = *ca.start;
    } else if (!ca.checkpoint.empty()) {
        std::ifstream in(ca.checkpoint);
        std::string s;
        if (in >> s) {
            try {
                opts.start = std::stoull(s);
            } catch (const std::logic_error&) {
                throw InvalidArgument("checkpoint file " + ca.checkpoint + " does not hold an index");
            }
        }
    }
    const CensusResult res = census(base, a.n, c, opts);
    if (!ca.checkpoint.empty()) {
        std::ofstream cp(ca.checkpoint);
        cp << res.next_index << '\n';
    }
    if (a.format == "json") {
        json doc = to_json(res);
        doc["p"] = a.p;
        doc["n"] = a.n;
        doc["c"] = c;
        out << doc.dump(2) << '\n';
    } else {
        out << to_csv(res);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ramcount: counts of totally ramified extensions of p-adic fields"};
    app.require_subcommand(1);

    FieldArgs fa;
    std::int64_t j0 = 0;
    std::int64_t max_j0 = -1;
    std::string polygon;
    TemplateArgs ta;
    VerifyArgs va;
    CensusArgs ca;

    auto* ore = app.add_subcommand("ore", "valid discriminants and extension counts");
    add_field_options(ore, fa);

    auto* polys = app.add_subcommand("polygons", "ramification polygons for a discriminant");
    add_field_options(polys, fa);
    polys->add_option("--j0", j0, "discriminant offset J0")->required();

    auto* inv = app.add_subcommand("invariants", "residual-polynomial invariants of a polygon");
    add_field_options(inv, fa);
    inv->add_option("--polygon", polygon, "polygon, e.g. \"1,7;3,3;9,0\"")->required();

    auto* table = app.add_subcommand("table", "J0 -> polygon -> invariant table");
    add_field_options(table, fa);
    table->add_option("--max-j0", max_j0, "largest J0 to include (default: all)");

    auto* tmpl = app.add_subcommand("templates", "generating-polynomial templates as JSON");
    add_field_options(tmpl, fa);
    tmpl->add_option("--j0", ta.j0, "discriminant level");
    tmpl->add_option("--polygon", ta.polygon, "polygon level");
    tmpl->add_option("--orbit-index", ta.orbit_index, "invariant level: orbit number within the polygon");
    tmpl->add_option("--tuple", ta.tuple, "orbit member to pin (default: representative)");
    tmpl->add_option("--phi", ta.phi, "first digit of f_0 (default: smallest that works)");
    tmpl->add_option("--c", ta.c, "precision (default: Krasner bound)");
    tmpl->add_flag("--emit", ta.emit, "list the member polynomials");
    tmpl->add_option("--cap", ta.cap, "maximum number of members to emit")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "compare closed forms with a brute-force census");
    add_field_options(verify, fa);
    verify->add_option("--j0", va.j0, "restrict to one discriminant (uses a valuation filter)");
    verify->add_option("--c", va.c, "precision (default: Krasner bound per J0)");
    verify->add_option("--budget", va.budget, "maximum polynomials per census")->capture_default_str();
    verify->add_option("--threads", va.threads, "worker threads (default: RAMCOUNT_THREADS)");

    auto* cen = app.add_subcommand("census", "classify every Eisenstein polynomial at precision c");
    add_field_options(cen, fa);
    cen->add_option("--j0", ca.j0, "keep v(f_i) >= l(i) for this J0");
    cen->add_option("--c", ca.c, "precision");
    cen->add_option("--start", ca.start, "first linear index");
    cen->add_option("--end", ca.end, "one past the last linear index (default: all)");
    cen->add_option("--checkpoint", ca.checkpoint, "file holding the index to resume from");
    cen->add_option("--budget", ca.budget, "maximum polynomials")->capture_default_str();
    cen->add_option("--threads", ca.threads, "worker threads (default: RAMCOUNT_THREADS)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArgument;
    }

    try {
        if (*ore) {
            cmd_ore(fa, out);
        } else if (*polys) {
            cmd_polygons(fa, j0, out);
        } else if (*inv) {
            cmd_invariants(fa, polygon, out);
        } else if (*table) {
            const CountTable t = build_table(fa.base(), fa.n, max_j0);
            if (fa.format == "json") {
                out << to_json(t).dump(2) << '\n';
            } else if (fa.format == "csv") {
                out << to_csv(t);
            } else {
                out << to_plain(t);
            }
        } else if (*tmpl) {
            cmd_templates(fa, ta, out);
        } else if (*verify) {
            return cmd_verify(fa, va, out);
        } else if (*cen) {
            cmd_census(fa, ca, out);
        }
    } catch (const InfeasiblePolygon& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const InvalidTuple& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArgument;
    } catch (const OreViolation& e) {
        err << "error: " << e.what() << '\n';
        return kBadArgument;
    } catch (const PrecisionInsufficient& e) {
        err << "error: " << e.what() << '\n';
        return kBadArgument;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kOk;
}

}  // namespace ramcount
