#include "ramcount/eisenstein.hpp"

#include <sstream>

namespace ramcount {

void TruncatedEisenstein::require_eisenstein() const {
    if (n < 1 || c < 2 || digits.size() != static_cast<std::size_t>(n) * c) {
        throw InvalidArgument("malformed digit matrix");
    }
    for (int i = 0; i < n; ++i) {
        if (!digit(i, 0).is_zero()) throw InvalidArgument("coefficient f_" + std::to_string(i) + " is a unit");
    }
    if (digit(0, 1).is_zero()) throw InvalidArgument("v(f_0) must be 1");
}

std::string TruncatedEisenstein::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n; ++i) {
        if (i) os << ';';
        for (int j = 0; j < c; ++j) {
            if (j) os << ',';
            os << digit(i, j).code;
        }
    }
    return os.str();
}

TruncatedEisenstein eisenstein_from_integers(const BaseField& base, const std::vector<std::int64_t>& coeffs, int c) {
    if (base.f() != 1 || base.e() != 1) throw InvalidArgument("integer coefficients need the base field Q_p");
    const int n = static_cast<int>(coeffs.size());
    if (n < 1) throw InvalidArgument("no coefficients");
    TruncatedEisenstein f(n, c);
    const BigCount modulus = big_pow(base.p(), c);
    for (int i = 0; i < n; ++i) {
        BigCount m = BigCount(coeffs[i]) % modulus;
        if (m < 0) m += modulus;
        for (int j = 0; j < c; ++j) {
            f.digit(i, j) = base.element(static_cast<std::int64_t>(m % base.p()));
            m /= base.p();
        }
    }
    f.require_eisenstein();
    return f;
}

}  // namespace ramcount
