#include "ramcount/ore.hpp"

#include <algorithm>
#include <string>

namespace ramcount {

DiscriminantSpec DiscriminantSpec::make(int n, std::int64_t J0) {
    if (n < 1) throw InvalidArgument("degree n must be positive");
    if (J0 < 0) throw InvalidArgument("J0 must be nonnegative");
    DiscriminantSpec d;
    d.n = n;
    d.J0 = J0;
    d.a0 = J0 / n;
    d.b0 = J0 % n;
    d.disc_exponent = n + J0 - 1;
    return d;
}

bool ore_valid(const BaseField& base, int n, std::int64_t J0) {
    if (n < 1) throw InvalidArgument("degree n must be positive");
    if (J0 < 0) return false;
    const auto d = DiscriminantSpec::make(n, J0);
    const Valuation upper = n * val_int(n, base);
    const Valuation lower = std::min(n * val_int(d.b0, base), upper);
    const Valuation j(J0);
    return lower <= j && j <= upper;
}

std::vector<std::int64_t> valid_discriminants(const BaseField& base, int n) {
    const std::int64_t upper = n * val_int(n, base).value();
    std::vector<std::int64_t> out;
    for (std::int64_t J0 = 0; J0 <= upper; ++J0) {
        if (ore_valid(base, n, J0)) out.push_back(J0);
    }
    return out;
}

std::int64_t disc_l(int i, int n, std::int64_t J0, const BaseField& base) {
    if (i < 1 || i > n - 1) throw InvalidArgument("disc_l requires 1 <= i <= n-1");
    const auto d = DiscriminantSpec::make(n, J0);
    const std::int64_t vi = val_int(i, base).value();
    const std::int64_t bound = (i < d.b0 ? 2 : 1) + d.a0 - vi;
    return std::max<std::int64_t>(bound, 1);
}

std::int64_t disc_l_sum(int n, std::int64_t J0, const BaseField& base) {
    std::int64_t s = 0;
    for (int i = 1; i < n; ++i) s += disc_l(i, n, J0, base);
    return s;
}

void require_ore_valid(const BaseField& base, int n, std::int64_t J0) {
    if (!ore_valid(base, n, J0)) {
        throw OreViolation("J0=" + std::to_string(J0) + " violates Ore's conditions for n=" + std::to_string(n) +
                           " over p=" + std::to_string(base.p()) +
                           ": need min{v(b0) n, v(n) n} <= J0 <= v(n) n");
    }
}

void require_precision(int n, std::int64_t J0, int c) {
    const int c_min = default_precision(n, J0);
    if (c < c_min) {
        throw InvalidArgument("precision c=" + std::to_string(c) + " is below the Krasner bound " +
                              std::to_string(c_min));
    }
}

BigCount count_by_discriminant(const BaseField& base, int n, std::int64_t J0) {
    require_ore_valid(base, n, J0);
    const auto d = DiscriminantSpec::make(n, J0);
    const std::uint64_t q = base.q();
    const std::int64_t exponent = n + J0 - 1 - disc_l_sum(n, J0, base);
    if (d.b0 == 0) return BigCount(n) * big_pow(q, exponent);
    return BigCount(n) * (q - 1) * big_pow(q, exponent - 1);
}

BigCount psi_disc_count(const BaseField& base, int n, std::int64_t J0, int c) {
    require_ore_valid(base, n, J0);
    require_precision(n, J0, c);
    const auto d = DiscriminantSpec::make(n, J0);
    const std::uint64_t q = base.q();
    const std::int64_t exponent =
        static_cast<std::int64_t>(c) - 2 + static_cast<std::int64_t>(n - 1) * c - disc_l_sum(n, J0, base);
    if (d.b0 == 0) return BigCount(q - 1) * big_pow(q, exponent);
    return BigCount(q - 1) * (q - 1) * big_pow(q, exponent - 1);
}

}  // namespace ramcount
