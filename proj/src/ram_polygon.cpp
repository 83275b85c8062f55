#include "ramcount/ram_polygon.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ramcount/ore.hpp"

namespace ramcount {

namespace {

std::int64_t ipow(std::int64_t b, int k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= b;
    return r;
}

// floor for rationals with positive denominator
std::int64_t floor_of(const Rational& x) {
    const auto num = x.numerator();
    const auto den = x.denominator();
    auto q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

PolygonPoint make_point(int s, std::int64_t x, std::int64_t J, int n) {
    PolygonPoint pt;
    pt.s = s;
    pt.x = x;
    pt.J = J;
    pt.a = J / n;
    pt.b = J % n;
    return pt;
}

Rational slope(const PolygonPoint& l, const PolygonPoint& r) { return Rational(r.J - l.J, r.x - l.x); }

}  // namespace

std::vector<PolygonPoint> RamificationPolygon::all_points() const {
    std::vector<PolygonPoint> out = points_;
    if (e0_ > 1) out.push_back(make_point(-1, n_, 0, n_));
    return out;
}

const PolygonPoint* RamificationPolygon::point_at(int s) const {
    for (const auto& pt : points_) {
        if (pt.s == s) return &pt;
    }
    return nullptr;
}

Rational RamificationPolygon::value_at(std::int64_t x) const {
    if (x < 1 || x > n_) throw InvalidArgument("abscissa outside [1, n]");
    const auto pts = all_points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (pts[k].x == x) return Rational(pts[k].J);
        if (k + 1 < pts.size() && pts[k].x < x && x < pts[k + 1].x) {
            return Rational(pts[k].J) + slope(pts[k], pts[k + 1]) * Rational(x - pts[k].x);
        }
    }
    throw InvalidArgument("abscissa outside the polygon");
}

std::string RamificationPolygon::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& pt : all_points()) {
        if (!first) os << ';';
        os << pt.x << ',' << pt.J;
        first = false;
    }
    return os.str();
}

std::vector<std::int64_t> RamificationPolygon::ordinate_key() const {
    std::vector<std::int64_t> key(r_ + 1, 0);
    for (const auto& pt : points_) key[pt.s] = pt.J;
    return key;
}

RamificationPolygon polygon_from_points(const BaseField& base, int n,
                                        const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
    if (n < 1) throw InvalidArgument("degree n must be positive");
    const int p = base.p();
    RamificationPolygon R;
    R.n_ = n;
    R.p_ = p;
    R.r_ = vp(n, p);
    const std::int64_t pr = ipow(p, R.r_);
    R.e0_ = static_cast<int>(n / pr);

    if (pts.empty()) throw InvalidArgument("polygon has no points");
    std::vector<std::pair<std::int64_t, std::int64_t>> wild = pts;
    if (R.e0_ > 1 && wild.back().first == n) {
        if (wild.back().second != 0) throw InvalidArgument("tail point (n, J) must have J = 0");
        wild.pop_back();
    }
    if (wild.empty() || wild.front().first != 1) throw InvalidArgument("first abscissa must be 1");

    std::int64_t prev_x = 0;
    std::int64_t prev_J = 0;
    for (std::size_t k = 0; k < wild.size(); ++k) {
        const auto [x, J] = wild[k];
        if (x <= prev_x) throw InvalidArgument("abscissas must be strictly increasing");
        int s = 0;
        std::int64_t y = x;
        while (y % p == 0) {
            y /= p;
            ++s;
        }
        if (y != 1 || s > R.r_) {
            throw InvalidArgument("abscissa " + std::to_string(x) + " is not a power p^s with s <= v_p(n)");
        }
        if (J < 0) throw InvalidArgument("negative ordinate");
        if (k > 0 && J >= prev_J) throw InvalidArgument("ordinates must strictly decrease");
        R.points_.push_back(make_point(s, x, J, n));
        prev_x = x;
        prev_J = J;
    }
    if (R.points_.back().x != pr || R.points_.back().J != 0) {
        throw InvalidArgument("last wild point must be (p^r, 0) = (" + std::to_string(pr) + ",0)");
    }

    const auto all = R.all_points();
    for (std::size_t k = 1; k + 1 < all.size(); ++k) {
        if (slope(all[k - 1], all[k]) > slope(all[k], all[k + 1])) {
            throw InvalidArgument("point (" + std::to_string(all[k].x) + "," + std::to_string(all[k].J) +
                                  ") lies strictly above the lower convex hull");
        }
    }

    for (std::size_t k = 0; k + 1 < all.size();) {
        const Rational m = slope(all[k], all[k + 1]);
        std::size_t end = k + 1;
        while (end + 1 < all.size() && slope(all[end], all[end + 1]) == m) ++end;
        Segment seg;
        seg.left = all[k];
        seg.right = all[end];
        seg.h = -m.numerator();
        seg.e_den = m.denominator();
        seg.points_on.assign(all.begin() + static_cast<std::ptrdiff_t>(k),
                             all.begin() + static_cast<std::ptrdiff_t>(end) + 1);
        R.segments_.push_back(std::move(seg));
        k = end;
    }
    return R;
}

RamificationPolygon parse_polygon(const BaseField& base, int n, const std::string& text) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw InvalidArgument("malformed polygon point '" + item + "'");
        try {
            std::size_t used = 0;
            const std::string xs = item.substr(0, comma);
            const std::string js = item.substr(comma + 1);
            const std::int64_t x = std::stoll(xs, &used);
            if (used != xs.size()) throw std::invalid_argument(xs);
            const std::int64_t J = std::stoll(js, &used);
            if (used != js.size()) throw std::invalid_argument(js);
            pts.emplace_back(x, J);
        } catch (const std::logic_error&) {
            throw InvalidArgument("malformed polygon point '" + item + "'");
        }
    }
    return polygon_from_points(base, n, pts);
}

RamificationPolygon tame_polygon(const BaseField& base, int n) {
    if (n % base.p() == 0) throw InvalidArgument("degree is not tame");
    if (n == 1) return polygon_from_points(base, 1, {{1, 0}});
    return polygon_from_points(base, n, {{1, 0}, {n, 0}});
}

std::int64_t point_bound(const BaseField& base, const RamificationPolygon& R, int i, int s) {
    const int n = R.n();
    if (i < 1 || i > n - 1) throw InvalidArgument("point_bound requires 1 <= i <= n-1");
    if (s < 0 || s > R.r()) throw InvalidArgument("point_bound requires 0 <= s <= v_p(n)");
    const std::int64_t x = ipow(R.p(), s);
    if (x > i) throw InvalidArgument("point_bound requires p^s <= i");
    const std::int64_t vb = binom_val(i, x, base).value();
    if (const PolygonPoint* pt = R.point_at(s)) {
        const std::int64_t bound = (i < pt->b ? 2 : 1) + pt->a - vb;
        return std::max<std::int64_t>(bound, 1);
    }
    // No point above p^s: every contribution must lie strictly above the hull.
    const Rational expr = (R.value_at(x) - Rational(i)) / Rational(n) + Rational(1 - vb);
    return std::max<std::int64_t>(floor_of(expr) + 1, 1);
}

std::vector<std::int64_t> lower_bounds(const BaseField& base, const RamificationPolygon& R) {
    const int n = R.n();
    std::vector<std::int64_t> L(n + 1, 0);
    L[0] = 1;
    for (int i = 1; i < n; ++i) {
        std::int64_t best = 1;
        for (int s = 0; s <= R.r() && ipow(R.p(), s) <= i; ++s) {
            best = std::max(best, point_bound(base, R, i, s));
        }
        L[i] = best;
    }
    if (n > 0) L[n] = 0;
    return L;
}

std::int64_t lower_bound_sum(const BaseField& base, const RamificationPolygon& R) {
    const auto L = lower_bounds(base, R);
    std::int64_t s = 0;
    for (int i = 1; i < R.n(); ++i) s += L[i];
    return s;
}

std::set<std::int64_t> b_set(const RamificationPolygon& R) {
    std::set<std::int64_t> out;
    for (const auto& pt : R.points()) {
        if (pt.b != 0) out.insert(pt.b);
    }
    return out;
}

bool is_feasible(const BaseField& base, const RamificationPolygon& R) {
    const int n = R.n();
    if (!ore_valid(base, n, R.J0())) return false;
    const auto L = lower_bounds(base, R);

    for (const auto& pt : R.points()) {
        if (pt.b != 0) {
            // attained only by k = b_t with v(f_{b_t}) = a_t + 1 - v(binom(b_t, p^{s_t}))
            if (pt.b < pt.x) return false;
            const std::int64_t need = pt.a + 1 - binom_val(pt.b, pt.x, base).value();
            if (need < 1 || L[pt.b] != need) return false;
        } else if (pt.J > 0) {
            // attained only by the monic term k = n
            if (pt.J != n * binom_val(n, pt.x, base).value()) return false;
        }
    }

    // The monic term contributes n v(binom(n, p^s)) at every abscissa.
    for (int s = 0; s <= R.r(); ++s) {
        const std::int64_t x = ipow(R.p(), s);
        const Rational monic(n * binom_val(n, x, base).value());
        const Rational hull = R.value_at(x);
        if (R.point_at(s) != nullptr) {
            if (monic < hull) return false;
        } else if (monic <= hull) {
            return false;
        }
    }
    return true;
}

void require_feasible(const BaseField& base, const RamificationPolygon& R) {
    if (!is_feasible(base, R)) {
        throw InfeasiblePolygon("no Eisenstein polynomial has ramification polygon " + R.to_string());
    }
}

std::vector<RamificationPolygon> enumerate_polygons(const BaseField& base, int n, std::int64_t J0) {
    require_ore_valid(base, n, J0);
    const int p = base.p();
    const int r = vp(n, p);
    if (r == 0) return {tame_polygon(base, n)};

    std::vector<RamificationPolygon> out;
    std::vector<std::pair<std::int64_t, std::int64_t>> chosen{{1, J0}};
    std::function<void(int)> visit = [&](int s) {
        if (s == r) {
            auto pts = chosen;
            pts.emplace_back(ipow(p, r), 0);
            try {
                auto R = polygon_from_points(base, n, pts);
                if (is_feasible(base, R)) out.push_back(std::move(R));
            } catch (const InvalidArgument&) {
                // not convex
            }
            return;
        }
        visit(s + 1);
        const std::int64_t above = chosen.back().second;
        for (std::int64_t J = 1; J < above; ++J) {
            chosen.emplace_back(ipow(p, s), J);
            visit(s + 1);
            chosen.pop_back();
        }
    };
    visit(1);
    std::sort(out.begin(), out.end());
    return out;
}

BigCount count_by_polygon(const BaseField& base, const RamificationPolygon& R) {
    require_feasible(base, R);
    const std::int64_t nb = static_cast<std::int64_t>(b_set(R).size());
    const std::uint64_t q = base.q();
    const std::int64_t exponent = R.n() + R.J0() - 1 - lower_bound_sum(base, R) - nb;
    return BigCount(R.n()) * big_pow(q - 1, nb) * big_pow(q, exponent);
}

BigCount psi_polygon_count(const BaseField& base, const RamificationPolygon& R, int c) {
    require_feasible(base, R);
    require_precision(R.n(), R.J0(), c);
    const int n = R.n();
    const std::int64_t nb = static_cast<std::int64_t>(b_set(R).size());
    const std::uint64_t q = base.q();
    const std::int64_t exponent =
        static_cast<std::int64_t>(c) - 2 + static_cast<std::int64_t>(n - 1) * c - lower_bound_sum(base, R) - nb;
    return big_pow(q - 1, nb + 1) * big_pow(q, exponent);
}

}  // namespace ramcount
