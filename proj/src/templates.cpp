#include "ramcount/templates.hpp"

#include <algorithm>

#include "ramcount/ore.hpp"

namespace ramcount {

namespace {

// All digit strings of length c admitted by `cc`, in increasing order.
std::vector<std::vector<ResidueElement>> digit_strings(const CoefficientConstraint& cc, std::uint32_t q, int c) {
    std::vector<std::vector<ResidueElement>> out;
    std::vector<ResidueElement> cur(c);
    std::function<void(int)> rec = [&](int j) {
        if (j == c) {
            out.push_back(cur);
            return;
        }
        std::uint32_t lo = 0, hi = q;
        if (j < cc.min_val) {
            hi = 1;
        } else if (j == cc.min_val && cc.fixed_digit && cc.fixed_digit->first == j) {
            lo = cc.fixed_digit->second.code;
            hi = lo + 1;
        } else if (j == cc.min_val && cc.exact) {
            lo = 1;
        }
        for (std::uint32_t d = lo; d < hi; ++d) {
            cur[j] = {d};
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

CoefficientConstraint constraint(int i, std::int64_t min_val, bool exact, int c) {
    if (exact && min_val >= c) {
        throw PrecisionInsufficient("coefficient f_" + std::to_string(i) + " needs exact valuation " +
                                    std::to_string(min_val) + " but the precision is " + std::to_string(c));
    }
    CoefficientConstraint cc;
    cc.i = i;
    cc.min_val = min_val;
    cc.exact = exact;
    return cc;
}

std::vector<CoefficientConstraint> polygon_constraints(const BaseField& base, const RamificationPolygon& R, int c) {
    const auto L = lower_bounds(base, R);
    const auto B = b_set(R);
    std::vector<CoefficientConstraint> out{constraint(0, 1, true, c)};
    for (int i = 1; i < R.n(); ++i) out.push_back(constraint(i, L[i], B.count(i) > 0, c));
    return out;
}

}  // namespace

BigCount CoefficientConstraint::choices(std::uint32_t q, int c) const {
    if (min_val >= c) return 1;
    const std::int64_t free = c - min_val - (exact ? 1 : 0);
    BigCount n = big_pow(q, free);
    if (exact && !fixed_digit) n *= (q - 1);
    return n;
}

bool CoefficientConstraint::admits(const TruncatedEisenstein& f) const {
    for (int j = 0; j < f.c; ++j) {
        const ResidueElement d = f.digit(i, j);
        if (j < min_val && !d.is_zero()) return false;
        if (j == min_val) {
            if (exact && d.is_zero()) return false;
            if (fixed_digit && fixed_digit->first == j && d != fixed_digit->second) return false;
        }
    }
    return true;
}

std::string to_string(TemplateLevel level) {
    switch (level) {
        case TemplateLevel::discriminant: return "discriminant";
        case TemplateLevel::polygon: return "polygon";
        case TemplateLevel::invariant: return "invariant";
    }
    return "?";
}

PsiTemplate::PsiTemplate(BaseField base, int n, int c, TemplateLevel level, TemplateProvenance provenance,
                         std::vector<CoefficientConstraint> constraints)
    : base_(std::move(base)),
      n_(n),
      c_(c),
      level_(level),
      provenance_(std::move(provenance)),
      constraints_(std::move(constraints)) {
    if (static_cast<int>(constraints_.size()) != n_) throw InvalidArgument("template needs one constraint per f_i");
    const auto& c0 = constraints_.front();
    if (c0.min_val != 1 || !c0.exact) throw InvalidArgument("f_0 must have exact valuation 1");
}

BigCount PsiTemplate::size() const {
    BigCount s = 1;
    for (const auto& cc : constraints_) s *= cc.choices(base_.q(), c_);
    return s;
}

bool PsiTemplate::contains(const TruncatedEisenstein& f) const {
    if (f.n != n_ || f.c != c_) return false;
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const auto& cc) { return cc.admits(f); });
}

void PsiTemplate::for_each_member(std::uint64_t cap,
                                  const std::function<void(const TruncatedEisenstein&)>& fn) const {
    const BigCount total = size();
    if (total > cap) {
        throw BudgetExceeded("template has " + total.str() + " members, cap is " + std::to_string(cap));
    }
    std::vector<std::vector<std::vector<ResidueElement>>> options;
    for (const auto& cc : constraints_) options.push_back(digit_strings(cc, base_.q(), c_));

    TruncatedEisenstein f(n_, c_);
    std::vector<std::size_t> idx(n_, 0);
    auto load = [&](int i) { std::copy(options[i][idx[i]].begin(), options[i][idx[i]].end(), f.digits.begin() + i * c_); };
    for (int i = 0; i < n_; ++i) load(i);
    while (true) {
        fn(f);
        int i = n_ - 1;
        while (i >= 0 && ++idx[i] == options[i].size()) {
            idx[i] = 0;
            load(i);
            --i;
        }
        if (i < 0) break;
        load(i);
    }
}

std::vector<TruncatedEisenstein> PsiTemplate::materialize(std::uint64_t cap) const {
    std::vector<TruncatedEisenstein> out;
    for_each_member(cap, [&](const TruncatedEisenstein& f) { out.push_back(f); });
    return out;
}

PsiTemplate build_psi_disc(const BaseField& base, int n, std::int64_t J0, int c) {
    require_ore_valid(base, n, J0);
    require_precision(n, J0, c);
    const auto d = DiscriminantSpec::make(n, J0);
    std::vector<CoefficientConstraint> cs{constraint(0, 1, true, c)};
    for (int i = 1; i < n; ++i) cs.push_back(constraint(i, disc_l(i, n, J0, base), i == d.b0, c));
    TemplateProvenance prov;
    prov.J0 = J0;
    return PsiTemplate(base, n, c, TemplateLevel::discriminant, prov, std::move(cs));
}

PsiTemplate build_psi_polygon(const BaseField& base, const RamificationPolygon& R, int c) {
    require_feasible(base, R);
    require_precision(R.n(), R.J0(), c);
    TemplateProvenance prov;
    prov.J0 = R.J0();
    prov.polygon = R.to_string();
    return PsiTemplate(base, R.n(), c, TemplateLevel::polygon, prov, polygon_constraints(base, R, c));
}

PsiTemplate build_psi_invariant(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit,
                                const ResidualTuple& tuple, ResidueElement phi, int c) {
    require_feasible(base, R);
    require_precision(R.n(), R.J0(), c);
    if (!orbit.contains(tuple)) throw InvalidTuple("tuple " + tuple.to_string() + " is not in the orbit");
    if (!check_tuple(base, R, tuple, phi)) {
        throw InvalidTuple("tuple " + tuple.to_string() + " is not realizable with f_{0,1} = " +
                           std::to_string(phi.code));
    }
    auto cs = polygon_constraints(base, R, c);
    cs[0].fixed_digit = std::make_pair(std::int64_t{1}, phi);
    for (std::size_t t = 0; t < R.points().size(); ++t) {
        if (R.points()[t].b == 0) continue;
        const FixedDigit fd = fixed_digit(base, R, tuple, phi, t);
        auto& cc = cs[static_cast<std::size_t>(fd.index)];
        if (!cc.exact || cc.min_val != fd.position) throw InconsistentCount("fixed digit off the exact valuation");
        cc.fixed_digit = std::make_pair(fd.position, fd.digit);
    }
    TemplateProvenance prov;
    prov.J0 = R.J0();
    prov.polygon = R.to_string();
    prov.tuple = tuple.to_string();
    prov.phi = phi;
    return PsiTemplate(base, R.n(), c, TemplateLevel::invariant, prov, std::move(cs));
}

BigCount invariant_templates_size(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit,
                                  int c) {
    BigCount total = 0;
    for (const auto& m : orbit.members) {
        for (const auto& phi : base.units()) {
            if (check_tuple(base, R, m, phi)) total += build_psi_invariant(base, R, orbit, m, phi, c).size();
        }
    }
    return total;
}

BigCount extensions_from_disc_count(const BaseField& base, int n, std::int64_t J0, int c, const BigCount& disc_count) {
    const std::uint64_t q = base.q();
    const std::int64_t t = static_cast<std::int64_t>(n) * c - (n + J0 - 1) - 2;
    const BigCount numer = disc_count * n;
    const BigCount denom = BigCount(q - 1) * big_pow(q, t);
    if (numer % denom != 0) {
        throw InconsistentCount(numer.str() + " is not divisible by the disc volume factor " + denom.str());
    }
    return numer / denom;
}

}  // namespace ramcount
