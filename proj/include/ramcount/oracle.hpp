#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ramcount/eisenstein.hpp"
#include "ramcount/residual.hpp"

namespace ramcount {

/// Index of the first nonzero digit of f_i; infinity for an all-zero digit
/// string (read as "at least c" by censored consumers). coeff_val(f, n) = 0.
Valuation coeff_val(const TruncatedEisenstein& f, int i);

/// Ramification polygon of f from the valuations of the ramification
/// polynomial's coefficients. The digit matrix is read as the exact polynomial
/// it denotes; with `censored` set, zero digit strings mean "valuation >= c"
/// and PrecisionInsufficient is raised if that could move the polygon.
RamificationPolygon ram_polygon_of(const BaseField& base, const TruncatedEisenstein& f, bool censored = false);

/// Residual tuple of f, read off the leading digits of f_{b_t} and f_{0,1}.
ResidualTuple residual_tuple_of(const BaseField& base, const TruncatedEisenstein& f, bool censored = false);

/// n + J0 - 1.
std::int64_t disc_exponent_of(const BaseField& base, const TruncatedEisenstein& f);

/// Exponent w with d(f, g) = |pi|^w: min over i of v(f_i - g_i) + i/n.
/// Missing digits count as zero; nullopt means f = g (distance 0).
std::optional<Rational> distance(const TruncatedEisenstein& f, const TruncatedEisenstein& g);

/// Classification of one polynomial.
struct CensusKey {
    std::int64_t J0 = 0;
    std::string polygon;
    std::string orbit_rep;

    friend auto operator<=>(const CensusKey&, const CensusKey&) = default;
};

struct CensusOptions {
    /// Per-coefficient lower bounds on v(f_i) (index 0..n-1); empty = none.
    std::vector<std::int64_t> min_val;
    /// Linear index range [start, end) of the enumeration; end = 0 means all.
    std::uint64_t start = 0;
    std::uint64_t end = 0;
    /// Maximum number of polynomials to visit.
    std::uint64_t budget = 50'000'000;
    /// 0 = RAMCOUNT_THREADS or hardware concurrency.
    unsigned threads = 0;
};

struct CensusResult {
    std::map<CensusKey, std::uint64_t> classes;
    std::uint64_t visited = 0;
    /// Linear index at which a resumed run should start.
    std::uint64_t next_index = 0;
};

/// Number of digit matrices enumerated by a census (before any range restriction).
BigCount census_size(const BaseField& base, int n, int c, const std::vector<std::int64_t>& min_val = {});

/// Visits every Eisenstein digit matrix in [start, end) in row-major order,
/// f_0 outermost. Single threaded.
void for_each_eisenstein(const BaseField& base, int n, int c, const std::vector<std::int64_t>& min_val,
                         std::uint64_t start, std::uint64_t end,
                         const std::function<void(const TruncatedEisenstein&)>& fn);

/// Classifies every Eisenstein digit matrix at precision c by (J0, polygon, orbit).
/// Throws BudgetExceeded when the range is larger than the budget.
CensusResult census(const BaseField& base, int n, int c, const CensusOptions& options = {});

/// Polygon-level census over valuation vectors, weighted by the number of digit
/// strings with each valuation. Keys carry an empty orbit_rep; counts are exact.
std::map<CensusKey, BigCount> valuation_census(const BaseField& base, int n, int c);

struct DisjointnessReport {
    bool ok = false;
    std::uint64_t polynomials = 0;  // census members with the discriminant
    std::uint64_t centres = 0;      // template members
    std::uint64_t violations = 0;
};

/// Checks that each Eisenstein polynomial of discriminant P^{n+J0-1}
/// (enumerated at precision c+1) lies within |pi|^c of exactly one member of
/// the discriminant template at precision c.
DisjointnessReport disc_disjointness(const BaseField& base, int n, std::int64_t J0, int c,
                                     std::uint64_t budget = 50'000'000);
bool disc_disjointness_check(const BaseField& base, int n, std::int64_t J0, int c,
                             std::uint64_t budget = 50'000'000);

/// Thread count from RAMCOUNT_THREADS, else the hardware concurrency.
unsigned default_threads();

}  // namespace ramcount
