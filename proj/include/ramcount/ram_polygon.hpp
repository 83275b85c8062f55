#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramcount/padic_core.hpp"

namespace ramcount {

/// A point (x, J) of a ramification polygon. Wild points have x = p^s; the
/// tail point (n, 0) of a polygon with e0 > 1 carries s = -1.
struct PolygonPoint {
    int s = 0;
    std::int64_t x = 1;
    std::int64_t J = 0;
    std::int64_t a = 0;  // floor(J / n)
    std::int64_t b = 0;  // J mod n

    bool is_tail() const { return s < 0; }
    friend bool operator==(const PolygonPoint& l, const PolygonPoint& r) { return l.x == r.x && l.J == r.J; }
};

/// A maximal straight piece of the polygon with slope -h/e_den in lowest terms.
struct Segment {
    PolygonPoint left;
    PolygonPoint right;
    std::int64_t h = 0;
    std::int64_t e_den = 1;
    std::vector<PolygonPoint> points_on;

    bool horizontal() const { return h == 0; }
    /// Degree of the residual polynomial: run length / e_den.
    std::int64_t degree() const { return (right.x - left.x) / e_den; }
};

/// Ramification polygon described by its full point set
/// {(1,J0), (p^{s_1},J_1), ..., (p^r,0), ..., (n,0)}.
class RamificationPolygon {
public:
    int n() const { return n_; }
    int p() const { return p_; }
    /// v_p(n)
    int r() const { return r_; }
    /// n / p^r
    int e0() const { return e0_; }
    std::int64_t J0() const { return points_.front().J; }

    /// Wild points, from (1,J0) to (p^r,0) inclusive.
    const std::vector<PolygonPoint>& points() const { return points_; }
    /// Wild points plus the tail point (n,0) when e0 > 1.
    std::vector<PolygonPoint> all_points() const;
    /// Segments left to right, including the horizontal tail when e0 > 1.
    const std::vector<Segment>& segments() const { return segments_; }

    /// Point with abscissa p^s, if listed.
    const PolygonPoint* point_at(int s) const;
    /// Exact ordinate of the polygon at abscissa x in [1, n].
    Rational value_at(std::int64_t x) const;

    /// Wire format "x,J;x,J;..." with the tail point always emitted.
    std::string to_string() const;

    friend bool operator==(const RamificationPolygon& a, const RamificationPolygon& b) {
        return a.n_ == b.n_ && a.p_ == b.p_ && a.points_ == b.points_;
    }
    /// Ordering by the ordinate vector over p^0..p^r (absent points as 0).
    friend bool operator<(const RamificationPolygon& a, const RamificationPolygon& b) {
        return a.ordinate_key() < b.ordinate_key();
    }
    std::vector<std::int64_t> ordinate_key() const;

private:
    friend RamificationPolygon polygon_from_points(const BaseField&, int,
                                                   const std::vector<std::pair<std::int64_t, std::int64_t>>&);
    int n_ = 1;
    int p_ = 2;
    int r_ = 0;
    int e0_ = 1;
    std::vector<PolygonPoint> points_;
    std::vector<Segment> segments_;
};

/// Validates and builds a polygon from (x, J) pairs with x ascending. The
/// trailing point (n, 0) may be omitted when e0 > 1.
/// Throws InvalidArgument for non-p-power abscissas, ordinates that do not
/// strictly decrease to 0 at p^r, or points strictly above the lower hull.
RamificationPolygon polygon_from_points(const BaseField& base, int n,
                                        const std::vector<std::pair<std::int64_t, std::int64_t>>& pts);

/// Parses the wire format "1,7;3,3;9,0".
RamificationPolygon parse_polygon(const BaseField& base, int n, const std::string& text);

/// l_R(i, s): the lower bound on v(f_i) coming from the abscissa p^s, either
/// from a listed point or from the absence of one (strict bound).
std::int64_t point_bound(const BaseField& base, const RamificationPolygon& R, int i, int s);

/// L_R(0..n): L(0) = 1, L(n) = 0, and the maximum of point_bound over all
/// p^s <= i otherwise.
std::vector<std::int64_t> lower_bounds(const BaseField& base, const RamificationPolygon& R);

std::int64_t lower_bound_sum(const BaseField& base, const RamificationPolygon& R);

/// Nonzero residues b_t = J_t mod n.
std::set<std::int64_t> b_set(const RamificationPolygon& R);

/// Whether some Eisenstein polynomial has ramification polygon R.
bool is_feasible(const BaseField& base, const RamificationPolygon& R);

/// All feasible polygons with left point (1, J0), ordered by ordinate vector.
std::vector<RamificationPolygon> enumerate_polygons(const BaseField& base, int n, std::int64_t J0);

/// n (q-1)^{#B} q^{n+J0-1-sum L-#B}. Throws InfeasiblePolygon.
BigCount count_by_polygon(const BaseField& base, const RamificationPolygon& R);

/// (q-1)^{#B+1} q^{c-2+(n-1)c-sum L-#B}.
BigCount psi_polygon_count(const BaseField& base, const RamificationPolygon& R, int c);

void require_feasible(const BaseField& base, const RamificationPolygon& R);

/// The tame polygon {(1,0),(n,0)} for p not dividing n.
RamificationPolygon tame_polygon(const BaseField& base, int n);

}  // namespace ramcount
