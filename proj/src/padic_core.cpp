#include "ramcount/padic_core.hpp"

#include <algorithm>
#include <limits>

namespace ramcount {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 16;

// Remainder of a modulo the monic polynomial m over F_p (ascending coefficients).
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const int lead = a.back() % p;
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - dm;
            for (std::size_t k = 0; k <= dm; ++k) {
                a[shift + k] = ((a[shift + k] - lead * m[k]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

bool all_zero(const std::vector<int>& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

std::vector<int> monic_from_code(std::uint64_t code, int degree, int p) {
    std::vector<int> m(degree + 1, 0);
    for (int k = 0; k < degree; ++k) {
        m[k] = static_cast<int>(code % p);
        code /= p;
    }
    m[degree] = 1;
    return m;
}

}  // namespace

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t Valuation::value() const {
    if (infinite_) throw InvalidArgument("valuation is infinite");
    return value_;
}

std::string Valuation::to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

bool is_irreducible_mod_p(const std::vector<int>& monic, int p) {
    const int degree = static_cast<int>(monic.size()) - 1;
    if (degree < 1 || monic.back() != 1) return false;
    if (degree == 1) return true;
    for (int d = 1; d <= degree / 2; ++d) {
        std::uint64_t count = 1;
        for (int k = 0; k < d; ++k) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t code = 0; code < count; ++code) {
            if (all_zero(poly_rem(monic, monic_from_code(code, d, p), p))) return false;
        }
    }
    return true;
}

BaseField::BaseField(int p, int e, int f, std::vector<int> residue_modulus)
    : p_(p), e_(e), f_(f), q_(1), modulus_(std::move(residue_modulus)) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (e < 1) throw InvalidArgument("ramification index e must be positive");
    if (f < 1) throw InvalidArgument("residue degree f must be positive");
    std::uint64_t q = 1;
    for (int k = 0; k < f; ++k) {
        q *= static_cast<std::uint64_t>(p);
        if (q > kMaxFieldSize) throw InvalidArgument("residue field too large (q > 65536)");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (modulus_.empty()) {
        // lexicographically smallest monic irreducible of degree f
        std::uint64_t count = q_;
        for (std::uint64_t code = 0; code < count; ++code) {
            auto m = monic_from_code(code, f, p);
            if (is_irreducible_mod_p(m, p)) {
                modulus_ = std::move(m);
                break;
            }
        }
    } else {
        if (static_cast<int>(modulus_.size()) != f + 1 || modulus_.back() != 1) {
            throw InvalidArgument("residue modulus must be monic of degree f");
        }
        for (int& c : modulus_) {
            if (c < 0 || c >= p) throw InvalidArgument("residue modulus coefficients must lie in [0,p)");
        }
        if (!is_irreducible_mod_p(modulus_, p)) throw InvalidArgument("residue modulus is reducible");
    }

    auto exp_table = std::make_shared<std::vector<std::uint32_t>>(q_ - 1);
    auto log_table = std::make_shared<std::vector<std::uint32_t>>(q_, 0);
    for (std::uint32_t g = 1; g < q_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t order = 0;
        do {
            (*exp_table)[order] = x;
            x = mul_slow({x}, {g}).code;
            ++order;
        } while (x != 1 && order < q_ - 1);
        if (x == 1 && order == q_ - 1) break;
    }
    for (std::uint32_t k = 0; k < q_ - 1; ++k) (*log_table)[(*exp_table)[k]] = k;
    exp_ = std::move(exp_table);
    log_ = std::move(log_table);
}

ResidueElement BaseField::element(std::int64_t code) const {
    if (code < 0 || code >= static_cast<std::int64_t>(q_)) {
        throw InvalidArgument("residue code " + std::to_string(code) + " outside [0,q)");
    }
    return {static_cast<std::uint32_t>(code)};
}

ResidueElement BaseField::from_int(std::int64_t m) const {
    return {static_cast<std::uint32_t>(((m % p_) + p_) % p_)};
}

std::vector<int> BaseField::digits(ResidueElement a) const {
    std::vector<int> d(f_);
    std::uint32_t c = a.code;
    for (int k = 0; k < f_; ++k) {
        d[k] = static_cast<int>(c % p_);
        c /= p_;
    }
    return d;
}

ResidueElement BaseField::add(ResidueElement a, ResidueElement b) const {
    if (f_ == 1) return {(a.code + b.code) % q_};
    std::uint32_t out = 0, scale = 1, x = a.code, y = b.code;
    for (int k = 0; k < f_; ++k) {
        out += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {out};
}

ResidueElement BaseField::neg(ResidueElement a) const {
    std::uint32_t out = 0, scale = 1, x = a.code;
    for (int k = 0; k < f_; ++k) {
        out += ((p_ - x % p_) % p_) * scale;
        x /= p_;
        scale *= p_;
    }
    return {out};
}

ResidueElement BaseField::sub(ResidueElement a, ResidueElement b) const { return add(a, neg(b)); }

ResidueElement BaseField::mul_slow(ResidueElement a, ResidueElement b) const {
    const auto da = digits(a);
    const auto db = digits(b);
    std::vector<int> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    auto r = poly_rem(std::move(prod), modulus_, p_);
    std::uint32_t out = 0, scale = 1;
    for (int k = 0; k < f_; ++k) {
        if (k < static_cast<int>(r.size())) out += static_cast<std::uint32_t>(r[k]) * scale;
        scale *= p_;
    }
    return {out};
}

ResidueElement BaseField::mul(ResidueElement a, ResidueElement b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    const auto& lg = *log_;
    return {(*exp_)[(lg[a.code] + lg[b.code]) % (q_ - 1)]};
}

ResidueElement BaseField::inv(ResidueElement a) const {
    if (a.is_zero()) throw DivisionByZero("inverse of zero in the residue field");
    const std::uint32_t l = (*log_)[a.code];
    return {(*exp_)[(q_ - 1 - l) % (q_ - 1)]};
}

ResidueElement BaseField::pow(ResidueElement a, std::int64_t exponent) const {
    if (a.is_zero()) {
        if (exponent > 0) return zero();
        if (exponent == 0) return one();
        throw DivisionByZero("negative power of zero in the residue field");
    }
    const std::int64_t order = static_cast<std::int64_t>(q_) - 1;
    const std::int64_t reduced = ((exponent % order) + order) % order;
    const std::int64_t l = (*log_)[a.code];
    return {(*exp_)[static_cast<std::size_t>((l * reduced) % order)]};
}

std::vector<ResidueElement> BaseField::units() const {
    std::vector<ResidueElement> out;
    out.reserve(q_ - 1);
    for (std::uint32_t c = 1; c < q_; ++c) out.push_back({c});
    return out;
}

int vp(std::int64_t m, int p) {
    if (m == 0) throw InvalidArgument("v_p(0) is infinite");
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

Valuation val_int(std::int64_t m, const BaseField& base) {
    if (m == 0) return Valuation::infinity();
    return Valuation(static_cast<std::int64_t>(base.e()) * vp(m, base.p()));
}

Valuation binom_val(std::int64_t k, std::int64_t i, const BaseField& base) {
    if (i < 0 || k < 0 || i > k) {
        throw InvalidArgument("binom_val requires 0 <= i <= k, got k=" + std::to_string(k) +
                              " i=" + std::to_string(i));
    }
    const int p = base.p();
    std::int64_t a = i, b = k - i;
    int carry = 0;
    std::int64_t carries = 0;
    while (a > 0 || b > 0 || carry > 0) {
        const int s = static_cast<int>(a % p + b % p) + carry;
        carry = s >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return Valuation(static_cast<std::int64_t>(base.e()) * carries);
}

BigCount binomial(std::int64_t k, std::int64_t i) {
    if (i < 0 || k < 0 || i > k) return 0;
    i = std::min(i, k - i);
    BigCount r = 1;
    for (std::int64_t j = 1; j <= i; ++j) {
        r *= (k - i + j);
        r /= j;
    }
    return r;
}

ResidueElement binom_unit_residue(std::int64_t k, std::int64_t i, const BaseField& base) {
    BigCount b = binomial(k, i);
    if (b == 0) throw InvalidArgument("binomial coefficient is zero");
    const int p = base.p();
    while (b % p == 0) b /= p;
    return base.from_int(static_cast<std::int64_t>(b % p));
}

int default_precision(int n, std::int64_t J0) {
    if (n < 1 || J0 < 0) throw InvalidArgument("default_precision requires n >= 1 and J0 >= 0");
    // c > (n + 2 J0) / n
    return static_cast<int>((n + 2 * J0) / n + 1);
}

BigCount big_pow(std::uint64_t base, std::int64_t exponent) {
    if (exponent < 0) throw InconsistentCount("negative exponent in count formula");
    BigCount r = 1;
    BigCount b = base;
    while (exponent > 0) {
        if (exponent & 1) r *= b;
        b *= b;
        exponent >>= 1;
    }
    return r;
}

}  // namespace ramcount
