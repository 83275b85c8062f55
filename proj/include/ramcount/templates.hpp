#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramcount/eisenstein.hpp"
#include "ramcount/residual.hpp"

namespace ramcount {

/// Digit constraint on one coefficient f_i: digits below min_val vanish, the
/// digit at min_val is nonzero when `exact`, and optionally pinned.
struct CoefficientConstraint {
    int i = 0;
    std::int64_t min_val = 1;
    bool exact = false;
    std::optional<std::pair<std::int64_t, ResidueElement>> fixed_digit;

    /// Number of digit strings of length c satisfying the constraint.
    BigCount choices(std::uint32_t q, int c) const;
    bool admits(const TruncatedEisenstein& f) const;
};

enum class TemplateLevel { discriminant, polygon, invariant };

std::string to_string(TemplateLevel level);

/// What a template was built from.
struct TemplateProvenance {
    std::int64_t J0 = 0;
    std::string polygon;  // empty at discriminant level
    std::string tuple;    // invariant level only
    std::optional<ResidueElement> phi;
};

class PsiTemplate {
public:
    PsiTemplate(BaseField base, int n, int c, TemplateLevel level, TemplateProvenance provenance,
                std::vector<CoefficientConstraint> constraints);

    const BaseField& base() const { return base_; }
    int n() const { return n_; }
    int c() const { return c_; }
    TemplateLevel level() const { return level_; }
    const TemplateProvenance& provenance() const { return provenance_; }
    /// Constraints for i = 0..n-1; the leading coefficient is 1.
    const std::vector<CoefficientConstraint>& constraints() const { return constraints_; }

    /// Product of the per-coefficient digit choices.
    BigCount size() const;
    bool contains(const TruncatedEisenstein& f) const;

    /// Calls `fn` on every member in row-major digit order (f_0 outermost).
    /// Throws BudgetExceeded if the template has more than `cap` members.
    void for_each_member(std::uint64_t cap, const std::function<void(const TruncatedEisenstein&)>& fn) const;
    std::vector<TruncatedEisenstein> materialize(std::uint64_t cap) const;

private:
    BaseField base_;
    int n_;
    int c_;
    TemplateLevel level_;
    TemplateProvenance provenance_;
    std::vector<CoefficientConstraint> constraints_;
};

/// Eisenstein polynomials of discriminant P^{n+J0-1} at precision c.
PsiTemplate build_psi_disc(const BaseField& base, int n, std::int64_t J0, int c);

/// Eisenstein polynomials with ramification polygon R at precision c.
PsiTemplate build_psi_polygon(const BaseField& base, const RamificationPolygon& R, int c);

/// Polygon template with the digits pinned by `tuple` and the first digit phi of f_0.
PsiTemplate build_psi_invariant(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit,
                                const ResidualTuple& tuple, ResidueElement phi, int c);

/// Total size of all invariant templates of an orbit, summed over the
/// realizable (tuple, phi) pairs.
BigCount invariant_templates_size(const BaseField& base, const RamificationPolygon& R, const InvariantOrbit& orbit,
                                  int c);

/// #K = #D * n / ((q-1) q^{nc-(n+J0-1)-2}). Throws InconsistentCount when not divisible.
BigCount extensions_from_disc_count(const BaseField& base, int n, std::int64_t J0, int c, const BigCount& disc_count);

}  // namespace ramcount
