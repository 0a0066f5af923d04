#pragma once

// Geometry on the projected 2-simplex {(x, y) : x, y >= 0, x + y <= 1}.
// A population state over three strategies is stored as its first two
// shares; the third share is 1 - x - y and never stored.

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "rps/errors.hpp"

namespace rps {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

using Index = Eigen::Index;

inline constexpr double kSimplexTolerance = 1e-9;

/// Validates (x, y) as a simplex state. Coordinates within `tol` outside the
/// simplex are snapped onto it; anything further out throws DataError.
template <typename Scalar>
Point2<Scalar> make_simplex_point(Scalar x, Scalar y, Scalar tol = Scalar(kSimplexTolerance)) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DataError("non-finite coordinate");
    }
    auto snap_unit = [tol](Scalar v, const char* name) {
        if (v < -tol || v > Scalar(1) + tol) {
            throw DataError(std::string(name) + " outside [0, 1]");
        }
        return v < Scalar(0) ? Scalar(0) : (v > Scalar(1) ? Scalar(1) : v);
    };
    x = snap_unit(x, "x");
    y = snap_unit(y, "y");
    if (x + y > Scalar(1) + tol) {
        throw DataError("x + y exceeds 1");
    }
    if (x + y > Scalar(1)) {
        y = Scalar(1) - x;
    }
    return Point2<Scalar>(x, y);
}

/// True when p lies in the simplex up to `tol`.
template <typename Scalar>
bool in_simplex(const Point2<Scalar>& p, Scalar tol = Scalar(0)) {
    return p.x() >= -tol && p.y() >= -tol && p.x() + p.y() <= Scalar(1) + tol;
}

/// Directed segment between the states observed at periods t and t + 1.
template <typename Scalar>
struct Transit {
    Point2<Scalar> from;
    Point2<Scalar> to;
    Index t = 0;

    Transit reversed() const { return {to, from, t}; }
};

/// Poincare section: the vertical segment from the anchor P_c = (alpha, beta)
/// (exclusive) down to the foot P_e = (alpha, 0) (inclusive).
template <typename Scalar>
class Tripwire {
public:
    Tripwire(Scalar alpha, Scalar beta) : alpha_(alpha), beta_(beta) {
        if (!(alpha > Scalar(0) && alpha < Scalar(1) && beta > Scalar(0) &&
              alpha + beta <= Scalar(1))) {
            throw InvalidTripwire("tripwire anchor must satisfy 0 < alpha < 1, beta > 0, alpha + beta <= 1");
        }
    }

    Scalar alpha() const noexcept { return alpha_; }
    Scalar beta() const noexcept { return beta_; }
    Point2<Scalar> anchor() const { return {alpha_, beta_}; }
    Point2<Scalar> foot() const { return {alpha_, Scalar(0)}; }

private:
    Scalar alpha_;
    Scalar beta_;
};

/// Ordered states of one block. Column k is the state at period k.
template <typename Scalar>
struct Trajectory {
    Points2<Scalar> points;
    std::string block_id;
    std::string treatment_id;

    Index size() const noexcept { return points.cols(); }
    Index transit_count() const noexcept { return points.cols() > 1 ? points.cols() - 1 : 0; }
    Transit<Scalar> transit(Index t) const { return {points.col(t), points.col(t + 1), t}; }
};

/// Intersection of the transit's supporting line with the vertical line
/// x = alpha. Absent when the transit is vertical (x1 == x2). The result is
/// not restricted to the tripwire segment or to the transit itself.
///
/// The smaller-x endpoint is used as the interpolation base so the result
/// does not depend on transit direction, and an endpoint lying exactly on
/// x = alpha is returned as-is.
template <typename Scalar>
std::optional<Point2<Scalar>> crossing_point(const Transit<Scalar>& transit,
                                             const Tripwire<Scalar>& tripwire) {
    const Scalar alpha = tripwire.alpha();
    Scalar x1 = transit.from.x(), y1 = transit.from.y();
    Scalar x2 = transit.to.x(), y2 = transit.to.y();
    if (x1 == x2) {
        return std::nullopt;
    }
    if (x1 == alpha) return Point2<Scalar>(alpha, y1);
    if (x2 == alpha) return Point2<Scalar>(alpha, y2);
    if (x2 < x1) {
        std::swap(x1, x2);
        std::swap(y1, y2);
    }
    return Point2<Scalar>(alpha, y1 + (y2 - y1) * (alpha - x1) / (x2 - x1));
}

/// Half-open membership 0 <= X_y < beta. Exact comparisons, no tolerance band.
template <typename Scalar>
bool on_tripwire(const Point2<Scalar>& crossing, const Tripwire<Scalar>& tripwire) {
    return crossing.y() >= Scalar(0) && crossing.y() < tripwire.beta();
}

}  // namespace rps
