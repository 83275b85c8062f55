#include "ramcount/residual.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ramcount {

namespace {

void require_shape(const RamificationPolygon& R, const ResidualTuple& t) {
    const auto& segs = R.segments();
    if (t.polys.size() != segs.size()) {
        throw InvalidTuple("tuple has " + std::to_string(t.polys.size()) + " polynomials, polygon " + R.to_string() +
                           " has " + std::to_string(segs.size()) + " segments");
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (t.polys[i].degree() != segs[i].degree()) {
            throw InvalidTuple("residual polynomial " + std::to_string(i) + " must have degree " +
                               std::to_string(segs[i].degree()));
        }
    }
}

ResidueElement minus(const BaseField& base, ResidueElement a) { return base.neg(a); }

// Value stored in `t` for the wild point `pt`: its first occurrence, left to right.
std::optional<ResidueElement> tuple_value_at(const RamificationPolygon& R, const ResidualTuple& t,
                                             const PolygonPoint& pt) {
    const auto& segs = R.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].horizontal()) continue;
        if (segs[i].left.x <= pt.x && pt.x <= segs[i].right.x) {
            const auto j = (pt.x - segs[i].left.x) / segs[i].e_den;
            return t.polys[i].coeff(static_cast<std::size_t>(j));
        }
    }
    return std::nullopt;
}

}  // namespace

std::string ResiduePolynomial::to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j) os << ',';
        os << coeffs[j].code;
    }
    return os.str();
}

std::vector<std::uint32_t> ResidualTuple::codes() const {
    std::vector<std::uint32_t> out;
    for (const auto& poly : polys) {
        for (const auto& c : poly.coeffs) out.push_back(c.code);
    }
    return out;
}

std::string ResidualTuple::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (i) out += '|';
        out += polys[i].to_string();
    }
    return out;
}

ResidualTuple parse_tuple(const BaseField& base, const std::string& text) {
    ResidualTuple t;
    std::stringstream segs(text);
    std::string seg;
    while (std::getline(segs, seg, '|')) {
        ResiduePolynomial poly;
        std::stringstream cs(seg);
        std::string item;
        while (std::getline(cs, item, ',')) {
            std::size_t used = 0;
            std::int64_t code = 0;
            try {
                code = std::stoll(item, &used);
            } catch (const std::logic_error&) {
                throw InvalidArgument("malformed tuple coefficient '" + item + "'");
            }
            if (used != item.size()) throw InvalidArgument("malformed tuple coefficient '" + item + "'");
            poly.coeffs.push_back(base.element(code));
        }
        if (poly.coeffs.empty()) throw InvalidArgument("empty residual polynomial in '" + text + "'");
        t.polys.push_back(std::move(poly));
    }
    if (t.polys.empty()) throw InvalidArgument("empty tuple");
    return t;
}

bool InvariantOrbit::contains(const ResidualTuple& t) const {
    return std::binary_search(members.begin(), members.end(), t);
}

std::optional<ResiduePolynomial> fixed_tame_residual(const BaseField& base, int n) {
    const int r = vp(n, base.p());
    std::int64_t pr = 1;
    for (int k = 0; k < r; ++k) pr *= base.p();
    if (pr == n) return std::nullopt;
    // rho_{p^r + j} has valuation 0 exactly when binom(n, p^r + j) is a unit.
    ResiduePolynomial poly;
    for (std::int64_t j = 0; pr + j <= n; ++j) {
        const BigCount b = binomial(n, pr + j) % base.p();
        poly.coeffs.push_back(base.from_int(static_cast<std::int64_t>(b)));
    }
    return poly;
}

std::vector<std::int64_t> support_positions(const Segment& seg) {
    std::vector<std::int64_t> out;
    for (const auto& pt : seg.points_on) out.push_back((pt.x - seg.left.x) / seg.e_den);
    return out;
}

ResidueElement point_residue(const BaseField& base, const RamificationPolygon& R, const PolygonPoint& pt,
                             ResidueElement u, ResidueElement phi) {
    if (phi.is_zero()) throw InvalidArgument("the first digit of f_0 must be nonzero");
    const ResidueElement mphi = minus(base, phi);
    if (pt.b == 0) {
        return base.mul(binom_unit_residue(R.n(), pt.x, base), base.pow(mphi, -pt.a));
    }
    if (u.is_zero()) throw InvalidArgument("leading digit of f_b must be nonzero");
    return base.mul(base.mul(u, binom_unit_residue(pt.b, pt.x, base)), base.pow(mphi, -(pt.a + 1)));
}

ResidualTuple realize_tuple(const BaseField& base, const RamificationPolygon& R, ResidueElement phi,
                            const std::map<std::int64_t, ResidueElement>& u) {
    ResidualTuple t;
    for (const auto& seg : R.segments()) {
        if (seg.horizontal()) {
            t.polys.push_back(*fixed_tame_residual(base, R.n()));
            continue;
        }
        ResiduePolynomial poly;
        poly.coeffs.assign(static_cast<std::size_t>(seg.degree() + 1), base.zero());
        for (const auto& pt : seg.points_on) {
            ResidueElement ub = base.one();
            if (pt.b != 0) {
                const auto it = u.find(pt.b);
                if (it == u.end()) throw InvalidArgument("missing leading digit for f_" + std::to_string(pt.b));
                ub = it->second;
            }
            poly.coeffs[static_cast<std::size_t>((pt.x - seg.left.x) / seg.e_den)] =
                point_residue(base, R, pt, ub, phi);
        }
        t.polys.push_back(std::move(poly));
    }
    return t;
}

bool check_tuple(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t, ResidueElement phi) {
    require_shape(R, t);
    if (phi.is_zero()) return false;
    // Recover the leading digits from the tuple, then rebuild and compare;
    // this checks support, endpoint agreement, shared b_t and forced values at once.
    std::map<std::int64_t, ResidueElement> u;
    const ResidueElement mphi = minus(base, phi);
    for (const auto& pt : R.points()) {
        if (pt.b == 0 || u.count(pt.b)) continue;
        const auto c = tuple_value_at(R, t, pt);
        if (!c || c->is_zero()) return false;
        u[pt.b] = base.mul(base.mul(*c, base.inv(binom_unit_residue(pt.b, pt.x, base))), base.pow(mphi, pt.a + 1));
    }
    return realize_tuple(base, R, phi, u) == t;
}

ResidualTuple apply_action(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t,
                           ResidueElement delta) {
    require_shape(R, t);
    if (delta.is_zero()) throw InvalidArgument("delta must be a unit");
    const auto& segs = R.segments();
    ResidualTuple out = t;
    // gamma_l = delta^{-h_l deg_l}, gamma_i = gamma_{i+1} delta^{-h_i deg_i}
    std::int64_t gamma_exp = 0;
    for (std::size_t k = segs.size(); k-- > 0;) {
        gamma_exp -= segs[k].h * segs[k].degree();
        auto& coeffs = out.polys[k].coeffs;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const std::int64_t e = gamma_exp + segs[k].h * static_cast<std::int64_t>(j);
            coeffs[j] = base.mul(coeffs[j], base.pow(delta, e));
        }
    }
    return out;
}

InvariantOrbit orbit_of(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t) {
    std::set<ResidualTuple> members;
    for (const auto& delta : base.units()) members.insert(apply_action(base, R, t, delta));
    InvariantOrbit orbit;
    orbit.members.assign(members.begin(), members.end());
    orbit.representative = orbit.members.front();
    for (const auto& m : orbit.members) {
        for (const auto& phi : base.units()) {
            if (check_tuple(base, R, m, phi)) ++orbit.realizations;
        }
    }
    if (orbit.realizations == 0) throw InvalidTuple("tuple " + t.to_string() + " is not realizable");
    orbit.mass = Rational(static_cast<std::int64_t>(orbit.realizations), static_cast<std::int64_t>(base.q() - 1));
    return orbit;
}

std::vector<InvariantOrbit> enumerate_invariants(const BaseField& base, const RamificationPolygon& R,
                                                 std::uint64_t cap) {
    require_feasible(base, R);
    const auto B = b_set(R);
    const std::vector<std::int64_t> bs(B.begin(), B.end());
    const auto units = base.units();

    BigCount pairs = big_pow(base.q() - 1, static_cast<std::int64_t>(bs.size()) + 1);
    if (pairs > cap) {
        throw BudgetExceeded("invariant enumeration needs " + pairs.str() + " pairs, cap is " + std::to_string(cap));
    }

    std::map<std::vector<std::uint32_t>, std::size_t> where;
    std::vector<InvariantOrbit> orbits;
    std::vector<std::size_t> odo(bs.size(), 0);
    for (const auto& phi : units) {
        std::fill(odo.begin(), odo.end(), 0);
        while (true) {
            std::map<std::int64_t, ResidueElement> u;
            for (std::size_t k = 0; k < bs.size(); ++k) u[bs[k]] = units[odo[k]];
            const ResidualTuple t = realize_tuple(base, R, phi, u);
            const auto key = t.codes();
            auto it = where.find(key);
            if (it == where.end()) {
                InvariantOrbit orbit;
                std::set<ResidualTuple> members;
                for (const auto& delta : units) members.insert(apply_action(base, R, t, delta));
                orbit.members.assign(members.begin(), members.end());
                orbit.representative = orbit.members.front();
                for (const auto& m : orbit.members) where.emplace(m.codes(), orbits.size());
                orbits.push_back(std::move(orbit));
                it = where.find(key);
            }
            ++orbits[it->second].realizations;

            std::size_t k = 0;
            while (k < odo.size() && ++odo[k] == units.size()) odo[k++] = 0;
            if (k == odo.size()) break;
        }
    }
    for (auto& o : orbits) {
        o.mass = Rational(static_cast<std::int64_t>(o.realizations), static_cast<std::int64_t>(base.q() - 1));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const InvariantOrbit& a, const InvariantOrbit& b) { return a.representative < b.representative; });
    return orbits;
}

BigCount count_by_invariant(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit) {
    require_feasible(base, R);
    const std::int64_t nb = static_cast<std::int64_t>(b_set(R).size());
    const std::int64_t exponent = R.n() + R.J0() - 1 - lower_bound_sum(base, R) - nb;
    const BigCount numer = BigCount(R.n()) * orbit.realizations * big_pow(base.q(), exponent);
    const BigCount denom = base.q() - 1;
    if (numer % denom != 0) {
        throw InconsistentCount("orbit count " + numer.str() + " is not divisible by q-1");
    }
    return numer / denom;
}

FixedDigit fixed_digit(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t,
                       ResidueElement phi, std::size_t point_index) {
    require_shape(R, t);
    if (point_index >= R.points().size()) throw InvalidArgument("point index out of range");
    const PolygonPoint& pt = R.points()[point_index];
    if (pt.b == 0) throw InvalidArgument("point (" + std::to_string(pt.x) + "," + std::to_string(pt.J) +
                                         ") has b = 0 and fixes no digit");
    if (phi.is_zero()) throw InvalidArgument("the first digit of f_0 must be nonzero");
    const auto c = tuple_value_at(R, t, pt);
    if (!c || c->is_zero()) throw InvalidTuple("tuple has no nonzero coefficient at the point");
    FixedDigit d;
    d.index = pt.b;
    d.position = pt.a + 1 - binom_val(pt.b, pt.x, base).value();
    d.digit = base.mul(base.mul(*c, base.inv(binom_unit_residue(pt.b, pt.x, base))),
                       base.pow(base.neg(phi), pt.a + 1));
    return d;
}

}  // namespace ramcount
