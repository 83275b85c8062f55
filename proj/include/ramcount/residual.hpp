#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ramcount/ram_polygon.hpp"

namespace ramcount {

/// Polynomial over F_q, coefficient j of x^j. Stored at full length: a
/// residual polynomial keeps its zero coefficients up to the segment degree.
struct ResiduePolynomial {
    std::vector<ResidueElement> coeffs;

    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
    ResidueElement coeff(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : ResidueElement{}; }
    std::string to_string() const;

    friend bool operator==(const ResiduePolynomial&, const ResiduePolynomial&) = default;
    friend auto operator<=>(const ResiduePolynomial&, const ResiduePolynomial&) = default;
};

/// One residual polynomial per segment of a polygon, left to right.
struct ResidualTuple {
    std::vector<ResiduePolynomial> polys;

    /// Coefficient codes of all segments, concatenated left to right.
    std::vector<std::uint32_t> codes() const;
    /// Wire format "1,2|2,0,0,1".
    std::string to_string() const;

    friend bool operator==(const ResidualTuple&, const ResidualTuple&) = default;
    friend bool operator<(const ResidualTuple& a, const ResidualTuple& b) { return a.codes() < b.codes(); }
};

ResidualTuple parse_tuple(const BaseField& base, const std::string& text);

/// An orbit of residual tuples under the uniformizer change delta -> delta*pi.
///
/// `realizations` counts pairs (f_{0,1}, tuple) with the tuple in the orbit and
/// realizable for that constant digit. The counting formulas use
/// mass = realizations / (q-1); it equals members.size() whenever every member
/// is realizable for every constant digit.
struct InvariantOrbit {
    ResidualTuple representative;
    std::vector<ResidualTuple> members;  // sorted
    std::uint64_t realizations = 0;
    Rational mass;

    std::size_t size() const { return members.size(); }
    bool contains(const ResidualTuple& t) const;
};

/// Residual polynomial of the horizontal segment (p^r,0)-(n,0), or nothing when n is a power of p.
std::optional<ResiduePolynomial> fixed_tame_residual(const BaseField& base, int n);

/// Positions (x - x_left)/e_den of the points lying on `seg`.
std::vector<std::int64_t> support_positions(const Segment& seg);

/// Residue of the coefficient of rho at a wild point t, given the leading
/// digit u of f_{b_t} (ignored when b_t = 0) and phi = f_{0,1}.
ResidueElement point_residue(const BaseField& base, const RamificationPolygon& R, const PolygonPoint& pt,
                             ResidueElement u, ResidueElement phi);

/// The tuple of the polynomials with constant digit phi and leading digits
/// u[b] for b in B_R.
ResidualTuple realize_tuple(const BaseField& base, const RamificationPolygon& R, ResidueElement phi,
                            const std::map<std::int64_t, ResidueElement>& u);

/// Whether some Eisenstein polynomial with polygon R, first digit phi of f_0
/// and residual tuple `t` exists. Throws InvalidTuple if `t` is not shaped for R.
bool check_tuple(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t, ResidueElement phi);

/// Action of delta in F_q^x on tuples: A_i -> gamma_i A_i(delta^{h_i} x).
ResidualTuple apply_action(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t,
                           ResidueElement delta);

InvariantOrbit orbit_of(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t);

/// All orbits of realizable tuples, ordered by representative. Throws
/// BudgetExceeded when more than `cap` (phi, digit) pairs would be visited.
std::vector<InvariantOrbit> enumerate_invariants(const BaseField& base, const RamificationPolygon& R,
                                                 std::uint64_t cap = 50'000'000);

/// n * mass * q^{n+J0-1-sum L-#B}.
BigCount count_by_invariant(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit);

/// Forced digit at a point with b_t != 0: (coefficient index, digit index, digit).
struct FixedDigit {
    std::int64_t index = 0;
    std::int64_t position = 0;
    ResidueElement digit;
};

FixedDigit fixed_digit(const BaseField& base, const RamificationPolygon& R, const ResidualTuple& t,
                       ResidueElement phi, std::size_t point_index);

}  // namespace ramcount
