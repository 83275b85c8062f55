#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "ramcount/errors.hpp"

namespace ramcount {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// A valuation that is either a nonnegative integer or +infinity.
/// Addition saturates at infinity; infinity compares greater than every
/// finite value.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr Valuation(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Throws InvalidArgument when infinite.
    std::int64_t value() const;

    friend constexpr Valuation operator+(Valuation a, Valuation b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }
    friend constexpr Valuation operator*(std::int64_t k, Valuation a) {
        if (a.infinite_) return infinity();
        return Valuation(k * a.value_);
    }
    friend constexpr bool operator==(Valuation a, Valuation b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

/// An element of the residue field F_q. `code` is the integer encoding
/// sum_k d_k p^k of the digit vector (d_0, ..., d_{f-1}) of the element
/// written as a polynomial in the generator of F_q over F_p.
struct ResidueElement {
    std::uint32_t code = 0;

    constexpr bool is_zero() const { return code == 0; }
    friend constexpr bool operator==(ResidueElement, ResidueElement) = default;
    friend constexpr auto operator<=>(ResidueElement, ResidueElement) = default;
};

/// The base field K: a finite extension of Q_p with ramification index e and
/// residue degree f, together with arithmetic in its residue field F_q.
///
/// When f > 1 the residue field is F_p[g]/(m(g)). If no modulus is supplied
/// the lexicographically smallest monic irreducible polynomial of degree f is
/// used (ordered by the integer encoding of its non-leading coefficients).
///
/// Residues of elements of K that involve powers of p are taken with the
/// convention pi^e = p.
class BaseField {
public:
    explicit BaseField(int p, int e = 1, int f = 1, std::vector<int> residue_modulus = {});

    int p() const { return p_; }
    int e() const { return e_; }
    int f() const { return f_; }
    std::uint32_t q() const { return q_; }
    /// Coefficients of the monic modulus, ascending, length f+1.
    const std::vector<int>& residue_modulus() const { return modulus_; }

    ResidueElement zero() const { return {0}; }
    ResidueElement one() const { return {1}; }
    /// Element with external code `code` in [0, q).
    ResidueElement element(std::int64_t code) const;
    /// Image of an integer in the prime field F_p.
    ResidueElement from_int(std::int64_t m) const;
    std::vector<int> digits(ResidueElement a) const;

    ResidueElement add(ResidueElement a, ResidueElement b) const;
    ResidueElement sub(ResidueElement a, ResidueElement b) const;
    ResidueElement neg(ResidueElement a) const;
    ResidueElement mul(ResidueElement a, ResidueElement b) const;
    /// Throws DivisionByZero for a == 0.
    ResidueElement inv(ResidueElement a) const;
    /// Negative exponents are allowed for nonzero a; exponents are reduced mod q-1.
    ResidueElement pow(ResidueElement a, std::int64_t exponent) const;

    /// All nonzero elements in increasing code order.
    std::vector<ResidueElement> units() const;

    friend bool operator==(const BaseField& a, const BaseField& b) {
        return a.p_ == b.p_ && a.e_ == b.e_ && a.f_ == b.f_ && a.modulus_ == b.modulus_;
    }

private:
    ResidueElement mul_slow(ResidueElement a, ResidueElement b) const;

    int p_;
    int e_;
    int f_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    // log_[0] is unused; exp_ has length q-1.
    std::shared_ptr<const std::vector<std::uint32_t>> exp_;
    std::shared_ptr<const std::vector<std::uint32_t>> log_;
};

bool is_prime(std::int64_t m);

/// Multiplicity of p in m, scaled by e. v(0) = infinity.
Valuation val_int(std::int64_t m, const BaseField& base);

/// Plain p-adic valuation v_p(m) of a nonzero integer.
int vp(std::int64_t m, int p);

/// e * v_p(binomial(k, i)) by Kummer's theorem (carries when adding i and k-i
/// in base p). Throws InvalidArgument if i > k or either is negative.
Valuation binom_val(std::int64_t k, std::int64_t i, const BaseField& base);

BigCount binomial(std::int64_t k, std::int64_t i);

/// Residue of binomial(k, i) / pi^{v_P(binomial(k, i))}; always nonzero.
ResidueElement binom_unit_residue(std::int64_t k, std::int64_t i, const BaseField& base);

/// Smallest integer c with c > 1 + 2*J0/n.
int default_precision(int n, std::int64_t J0);

BigCount big_pow(std::uint64_t base, std::int64_t exponent);

/// Monic irreducibility test over F_p by trial division.
bool is_irreducible_mod_p(const std::vector<int>& monic, int p);

}  // namespace ramcount
