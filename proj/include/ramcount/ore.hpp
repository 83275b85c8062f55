#pragma once

#include <cstdint>
#include <vector>

#include "ramcount/padic_core.hpp"

namespace ramcount {

/// J0 = a0*n + b0 with 0 <= b0 < n; the discriminant is P^{n+J0-1}.
struct DiscriminantSpec {
    int n = 1;
    std::int64_t J0 = 0;
    std::int64_t a0 = 0;
    std::int64_t b0 = 0;
    std::int64_t disc_exponent = 0;

    static DiscriminantSpec make(int n, std::int64_t J0);
};

/// Ore's conditions: min{v(b0) n, v(n) n} <= J0 <= v(n) n, with v(0) = infinity.
bool ore_valid(const BaseField& base, int n, std::int64_t J0);

std::vector<std::int64_t> valid_discriminants(const BaseField& base, int n);

/// Minimal valuation l(i) of f_i for Eisenstein polynomials with
/// discriminant exponent n + J0 - 1, 1 <= i <= n-1.
std::int64_t disc_l(int i, int n, std::int64_t J0, const BaseField& base);

/// Sum of disc_l(i) over 1 <= i <= n-1.
std::int64_t disc_l_sum(int n, std::int64_t J0, const BaseField& base);

/// Krasner's count of totally ramified extensions of degree n and
/// discriminant P^{n+J0-1}. Throws OreViolation for invalid J0.
BigCount count_by_discriminant(const BaseField& base, int n, std::int64_t J0);

/// Number of polynomials in Psi_{n,J0}(c). Requires c >= default_precision.
BigCount psi_disc_count(const BaseField& base, int n, std::int64_t J0, int c);

/// Throws OreViolation naming Ore's conditions when J0 is not admissible.
void require_ore_valid(const BaseField& base, int n, std::int64_t J0);

/// Throws InvalidArgument when c < default_precision(n, J0).
void require_precision(int n, std::int64_t J0, int c);

}  // namespace ramcount
