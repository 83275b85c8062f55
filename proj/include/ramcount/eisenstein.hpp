#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramcount/padic_core.hpp"

namespace ramcount {

/// Eisenstein polynomial x^n + f_{n-1} x^{n-1} + ... + f_0 stored as π-adic
/// digits: digit(i, j) is the coefficient of π^j in f_i, for j < c.
struct TruncatedEisenstein {
    int n = 1;
    int c = 2;
    std::vector<ResidueElement> digits;  // row-major, n rows of c digits

    TruncatedEisenstein() = default;
    TruncatedEisenstein(int n_, int c_) : n(n_), c(c_), digits(static_cast<std::size_t>(n_) * c_) {}

    ResidueElement digit(int i, int j) const { return digits[static_cast<std::size_t>(i) * c + j]; }
    ResidueElement& digit(int i, int j) { return digits[static_cast<std::size_t>(i) * c + j]; }

    /// Throws InvalidArgument unless v(f_0) = 1 and v(f_i) >= 1.
    void require_eisenstein() const;
    /// "f_0;f_1;...": each coefficient as its comma-separated digits.
    std::string to_string() const;

    friend bool operator==(const TruncatedEisenstein&, const TruncatedEisenstein&) = default;
};

/// Builds the polynomial with integer coefficients f_0..f_{n-1} (p-adic digits,
/// negative values allowed) over Q_p, truncated at precision c.
TruncatedEisenstein eisenstein_from_integers(const BaseField& base, const std::vector<std::int64_t>& coeffs, int c);

}  // namespace ramcount
