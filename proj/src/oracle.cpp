#include "ramcount/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>
#include <unordered_map>

#include "ramcount/ore.hpp"
#include "ramcount/templates.hpp"

namespace ramcount {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct Slot {
    int i;
    int j;
    std::uint32_t lo;
    std::uint32_t radix;
};

std::int64_t ipow(std::int64_t b, int k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= b;
    return r;
}

// Valuations v(f_0..f_n) with kInf for a zero digit string.
std::vector<std::int64_t> valuations(const TruncatedEisenstein& f) {
    std::vector<std::int64_t> v(f.n + 1, kInf);
    for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < f.c; ++j) {
            if (!f.digit(i, j).is_zero()) {
                v[i] = j;
                break;
            }
        }
    }
    v[f.n] = 0;
    return v;
}

// Smallest contribution n(v(f_k) + v(binom(k, i)) - 1) + k over k >= i.
std::int64_t rho_valuation(const BaseField& base, int n, const std::vector<std::int64_t>& v, int i) {
    std::int64_t best = kInf;
    for (int k = i; k <= n; ++k) {
        if (v[k] >= kInf) continue;
        // distinct k are distinct mod n, so the minimum is attained exactly once
        const std::int64_t w = n * (v[k] + binom_val(k, i, base).value() - 1) + k;
        best = std::min(best, w);
    }
    return best;
}

std::int64_t j0_of(const BaseField& base, int n, const std::vector<std::int64_t>& v) {
    std::int64_t best = kInf;
    for (int k = 1; k <= n; ++k) {
        if (v[k] >= kInf) continue;
        best = std::min(best, n * (v[k] + val_int(k, base).value() - 1) + k);
    }
    return best;
}

// Points of the ramification polygon from the coefficient valuations.
std::vector<std::pair<std::int64_t, std::int64_t>> polygon_points(const BaseField& base, int n,
                                                                  const std::vector<std::int64_t>& v, int c,
                                                                  bool censored) {
    std::vector<std::int64_t> w(n + 1, kInf);
    for (int i = 1; i <= n; ++i) w[i] = rho_valuation(base, n, v, i);

    // lower hull over all abscissas 1..n
    std::vector<int> hull;
    for (int i = 1; i <= n; ++i) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            // drop b if it is on or above the chord a-i
            const __int128 lhs = static_cast<__int128>(w[b] - w[a]) * (i - a);
            const __int128 rhs = static_cast<__int128>(w[i] - w[a]) * (b - a);
            if (lhs >= rhs) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }
    auto hull_at = [&](int x) {
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const int a = hull[k], b = hull[k + 1];
            if (a <= x && x <= b) return Rational(w[a]) + Rational(w[b] - w[a], b - a) * Rational(x - a);
        }
        return Rational(w[hull.back()]);
    };

    if (censored) {
        for (int i = 1; i <= n; ++i) {
            const Rational h = hull_at(i);
            for (int k = i; k < n; ++k) {
                if (v[k] < kInf) continue;
                const std::int64_t lower = n * (c + binom_val(k, i, base).value() - 1) + k;
                if (Rational(lower) <= h) {
                    throw PrecisionInsufficient("coefficient f_" + std::to_string(k) +
                                                " is zero to precision " + std::to_string(c) +
                                                " but could reach the polygon at abscissa " + std::to_string(i));
                }
            }
        }
    }

    const int p = base.p();
    const int r = vp(n, p);
    const std::int64_t pr = ipow(p, r);
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    std::int64_t next_power = 1;
    for (int i = 1; i <= pr; ++i) {
        const bool on_hull = Rational(w[i]) == hull_at(i);
        if (i == next_power) {
            if (on_hull) pts.emplace_back(i, w[i]);
            next_power *= p;
        } else if (on_hull) {
            throw InconsistentCount("abscissa " + std::to_string(i) + " is not a power of p but lies on the polygon");
        }
    }
    if (pr < n) pts.emplace_back(n, 0);
    return pts;
}

std::string valuation_key(const std::vector<std::int64_t>& v) {
    std::string key(v.size(), '\0');
    for (std::size_t k = 0; k < v.size(); ++k) key[k] = static_cast<char>(v[k] >= kInf ? 127 : v[k]);
    return key;
}

std::vector<Slot> make_slots(const BaseField& base, int n, int c, const std::vector<std::int64_t>& min_val) {
    if (base.e() != 1) throw InvalidArgument("the census needs an unramified base field (e = 1)");
    if (n < 1 || c < 2) throw InvalidArgument("census needs n >= 1 and c >= 2");
    if (!min_val.empty() && static_cast<int>(min_val.size()) != n) {
        throw InvalidArgument("valuation filter needs one entry per coefficient f_0..f_{n-1}");
    }
    std::vector<Slot> slots;
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j < c; ++j) {
            if (!min_val.empty() && i > 0 && j < min_val[i]) continue;
            if (i == 0 && j == 1) {
                slots.push_back({i, j, 1, base.q() - 1});
            } else {
                slots.push_back({i, j, 0, base.q()});
            }
        }
    }
    return slots;
}

struct PolygonInfo {
    std::int64_t J0 = 0;
    std::string polygon;
    RamificationPolygon R;
    std::vector<std::pair<std::int64_t, std::int64_t>> leading;  // (b, digit position) per b in B
    std::map<std::vector<std::uint32_t>, std::size_t> rep_by_digits;
    std::vector<std::string> reps;
};

class Classifier {
public:
    Classifier(const BaseField& base, int n, int c) : base_(base), n_(n), c_(c) {}

    void add(const TruncatedEisenstein& f) {
        const auto v = valuations(f);
        const auto key = valuation_key(v);
        auto it = index_.find(key);
        if (it == index_.end()) it = index_.emplace(key, make_info(v)).first;
        PolygonInfo& info = infos_[it->second];

        std::vector<std::uint32_t> digits{f.digit(0, 1).code};
        for (const auto& [b, j] : info.leading) digits.push_back(f.digit(static_cast<int>(b), static_cast<int>(j)).code);
        auto rt = info.rep_by_digits.find(digits);
        if (rt == info.rep_by_digits.end()) {
            std::map<std::int64_t, ResidueElement> u;
            for (std::size_t k = 0; k < info.leading.size(); ++k) u[info.leading[k].first] = {digits[k + 1]};
            const ResidualTuple t = realize_tuple(base_, info.R, {digits[0]}, u);
            const std::string rep = orbit_of(base_, info.R, t).representative.to_string();
            auto pos = std::find(info.reps.begin(), info.reps.end(), rep);
            const std::size_t id = static_cast<std::size_t>(pos - info.reps.begin());
            if (pos == info.reps.end()) info.reps.push_back(rep);
            rt = info.rep_by_digits.emplace(digits, id).first;
        }
        ++counts_[(static_cast<std::uint64_t>(it->second) << 32) | rt->second];
    }

    void merge_into(std::map<CensusKey, std::uint64_t>& out) const {
        for (const auto& [k, cnt] : counts_) {
            const PolygonInfo& info = infos_[k >> 32];
            out[CensusKey{info.J0, info.polygon, info.reps[k & 0xffffffffu]}] += cnt;
        }
    }

private:
    std::size_t make_info(const std::vector<std::int64_t>& v) {
        PolygonInfo info;
        info.R = polygon_from_points(base_, n_, polygon_points(base_, n_, v, c_, false));
        info.J0 = info.R.J0();
        info.polygon = info.R.to_string();
        std::set<std::int64_t> seen;
        for (const auto& pt : info.R.points()) {
            if (pt.b == 0 || !seen.insert(pt.b).second) continue;
            const std::int64_t j = pt.a + 1 - binom_val(pt.b, pt.x, base_).value();
            if (v[pt.b] != j) throw InconsistentCount("polygon point not attained by f_" + std::to_string(pt.b));
            info.leading.emplace_back(pt.b, j);
        }
        infos_.push_back(std::move(info));
        return infos_.size() - 1;
    }

    const BaseField& base_;
    int n_;
    int c_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<PolygonInfo> infos_;
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

}  // namespace

unsigned default_threads() {
    if (const char* env = std::getenv("RAMCOUNT_THREADS")) {
        char* end = nullptr;
        const long t = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && t > 0) return static_cast<unsigned>(t);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Valuation coeff_val(const TruncatedEisenstein& f, int i) {
    if (i < 0 || i > f.n) throw InvalidArgument("coefficient index out of range");
    if (i == f.n) return 0;
    for (int j = 0; j < f.c; ++j) {
        if (!f.digit(i, j).is_zero()) return j;
    }
    return Valuation::infinity();
}

RamificationPolygon ram_polygon_of(const BaseField& base, const TruncatedEisenstein& f, bool censored) {
    f.require_eisenstein();
    return polygon_from_points(base, f.n, polygon_points(base, f.n, valuations(f), f.c, censored));
}

ResidualTuple residual_tuple_of(const BaseField& base, const TruncatedEisenstein& f, bool censored) {
    const RamificationPolygon R = ram_polygon_of(base, f, censored);
    const auto v = valuations(f);
    std::map<std::int64_t, ResidueElement> u;
    for (const auto& pt : R.points()) {
        if (pt.b == 0) continue;
        const std::int64_t j = pt.a + 1 - binom_val(pt.b, pt.x, base).value();
        if (v[pt.b] != j) throw InconsistentCount("polygon point not attained by f_" + std::to_string(pt.b));
        u[pt.b] = f.digit(static_cast<int>(pt.b), static_cast<int>(j));
    }
    return realize_tuple(base, R, f.digit(0, 1), u);
}

std::int64_t disc_exponent_of(const BaseField& base, const TruncatedEisenstein& f) {
    f.require_eisenstein();
    return f.n + j0_of(base, f.n, valuations(f)) - 1;
}

std::optional<Rational> distance(const TruncatedEisenstein& f, const TruncatedEisenstein& g) {
    if (f.n != g.n) throw InvalidArgument("distance needs polynomials of the same degree");
    std::optional<Rational> w;
    const int cmax = std::max(f.c, g.c);
    for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < cmax; ++j) {
            const ResidueElement a = j < f.c ? f.digit(i, j) : ResidueElement{};
            const ResidueElement b = j < g.c ? g.digit(i, j) : ResidueElement{};
            if (a != b) {
                const Rational wi = Rational(j) + Rational(i, f.n);
                if (!w || wi < *w) w = wi;
                break;
            }
        }
    }
    return w;
}

BigCount census_size(const BaseField& base, int n, int c, const std::vector<std::int64_t>& min_val) {
    BigCount s = 1;
    for (const auto& slot : make_slots(base, n, c, min_val)) s *= slot.radix;
    return s;
}

void for_each_eisenstein(const BaseField& base, int n, int c, const std::vector<std::int64_t>& min_val,
                         std::uint64_t start, std::uint64_t end,
                         const std::function<void(const TruncatedEisenstein&)>& fn) {
    const auto slots = make_slots(base, n, c, min_val);
    if (start >= end) return;
    TruncatedEisenstein f(n, c);
    std::vector<std::uint32_t> odo(slots.size(), 0);
    std::uint64_t rest = start;
    for (std::size_t k = slots.size(); k-- > 0;) {
        odo[k] = static_cast<std::uint32_t>(rest % slots[k].radix);
        rest /= slots[k].radix;
        f.digit(slots[k].i, slots[k].j) = {slots[k].lo + odo[k]};
    }
    for (std::uint64_t idx = start; idx < end; ++idx) {
        fn(f);
        for (std::size_t k = slots.size(); k-- > 0;) {
            if (++odo[k] < slots[k].radix) {
                f.digit(slots[k].i, slots[k].j) = {slots[k].lo + odo[k]};
                break;
            }
            odo[k] = 0;
            f.digit(slots[k].i, slots[k].j) = {slots[k].lo};
        }
    }
}

CensusResult census(const BaseField& base, int n, int c, const CensusOptions& options) {
    const BigCount total = census_size(base, n, c, options.min_val);
    if (total > std::numeric_limits<std::uint64_t>::max() / 2) throw BudgetExceeded("census index space too large");
    const auto size = static_cast<std::uint64_t>(total);
    const std::uint64_t end = options.end == 0 ? size : std::min(options.end, size);
    const std::uint64_t start = std::min(options.start, end);
    if (end - start > options.budget) {
        throw BudgetExceeded("census would visit " + std::to_string(end - start) + " polynomials, budget is " +
                             std::to_string(options.budget));
    }

    const unsigned threads = std::max(1u, options.threads ? options.threads : default_threads());
    const std::uint64_t span = end - start;
    const unsigned parts = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(span, 1)));
    std::vector<Classifier> workers;
    workers.reserve(parts);
    for (unsigned t = 0; t < parts; ++t) workers.emplace_back(base, n, c);
    std::vector<std::exception_ptr> errors(parts);
    auto run = [&](unsigned t) {
        try {
            const std::uint64_t lo = start + span * t / parts;
            const std::uint64_t hi = start + span * (t + 1) / parts;
            for_each_eisenstein(base, n, c, options.min_val, lo, hi,
                                [&](const TruncatedEisenstein& f) { workers[t].add(f); });
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (parts == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < parts; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    CensusResult result;
    for (const auto& w : workers) w.merge_into(result.classes);
    result.visited = span;
    result.next_index = end;
    return result;
}

std::map<CensusKey, BigCount> valuation_census(const BaseField& base, int n, int c) {
    if (n < 1 || c < 2) throw InvalidArgument("census needs n >= 1 and c >= 2");
    const std::uint64_t q = base.q();
    std::vector<std::int64_t> v(n + 1, 1);
    v[n] = 0;
    std::vector<BigCount> weight(c + 1);
    for (int k = 1; k < c; ++k) weight[k] = BigCount(q - 1) * big_pow(q, c - 1 - k);
    weight[c] = 1;

    std::map<CensusKey, BigCount> out;
    std::map<std::vector<std::pair<std::int64_t, std::int64_t>>, CensusKey> seen;
    while (true) {
        std::vector<std::int64_t> exact = v;
        BigCount w = weight[1];
        for (int i = 1; i < n; ++i) {
            w *= weight[v[i]];
            if (v[i] == c) exact[i] = kInf;
        }
        const auto pts = polygon_points(base, n, exact, c, false);
        auto it = seen.find(pts);
        if (it == seen.end()) {
            const auto R = polygon_from_points(base, n, pts);
            it = seen.emplace(pts, CensusKey{R.J0(), R.to_string(), ""}).first;
        }
        out[it->second] += w;

        int i = n - 1;
        while (i >= 1 && ++v[i] > c) v[i--] = 1;
        if (i < 1) break;
    }
    return out;
}

DisjointnessReport disc_disjointness(const BaseField& base, int n, std::int64_t J0, int c, std::uint64_t budget) {
    const PsiTemplate tmpl = build_psi_disc(base, n, J0, c);
    const auto centres = tmpl.materialize(budget);
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> by_f0;
    for (std::size_t k = 0; k < centres.size(); ++k) {
        std::vector<std::uint32_t> key;
        for (int j = 0; j < c; ++j) key.push_back(centres[k].digit(0, j).code);
        by_f0[key].push_back(k);
    }

    DisjointnessReport rep;
    rep.centres = centres.size();
    const BigCount total = census_size(base, n, c + 1);
    if (total > budget) throw BudgetExceeded("disc check census has " + total.str() + " members");
    for_each_eisenstein(base, n, c + 1, {}, 0, static_cast<std::uint64_t>(total), [&](const TruncatedEisenstein& g) {
        if (j0_of(base, n, valuations(g)) != J0) return;
        ++rep.polynomials;
        std::vector<std::uint32_t> key;
        for (int j = 0; j < c; ++j) key.push_back(g.digit(0, j).code);
        std::size_t close = 0;
        if (const auto it = by_f0.find(key); it != by_f0.end()) {
            for (const std::size_t k : it->second) {
                const auto w = distance(g, centres[k]);
                if (!w || *w >= Rational(c)) ++close;
            }
        }
        if (close != 1) ++rep.violations;
    });
    rep.ok = rep.violations == 0 && rep.polynomials > 0;
    return rep;
}

bool disc_disjointness_check(const BaseField& base, int n, std::int64_t J0, int c, std::uint64_t budget) {
    return disc_disjointness(base, n, J0, c, budget).ok;
}

}  // namespace ramcount
