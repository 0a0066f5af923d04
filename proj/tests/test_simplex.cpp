#include <doctest.h>

#include <random>

#include "rps/simplex.hpp"

using rps::Point2;
using rps::Transit;
using rps::Tripwire;

namespace {

Transit<double> tr(double x1, double y1, double x2, double y2) { return {{x1, y1}, {x2, y2}, 0}; }

}  // namespace

TEST_CASE("crossing_point follows the line through the transit") {
    const Tripwire<double> wire(0.25, 0.25);

    auto x = rps::crossing_point(tr(0.0, 0.5, 0.5, 0.5), wire);
    REQUIRE(x);
    CHECK(x->x() == 0.25);
    CHECK(x->y() == 0.5);

    // 0.1 + 0.1 * 0.05 / 0.1
    x = rps::crossing_point(tr(0.2, 0.1, 0.3, 0.2), wire);
    REQUIRE(x);
    CHECK(x->x() == 0.25);
    CHECK(x->y() == doctest::Approx(0.15).epsilon(1e-14));

    CHECK_FALSE(rps::crossing_point(tr(0.25, 0.3, 0.25, 0.1), wire));
    CHECK_FALSE(rps::crossing_point(tr(0.6, 0.3, 0.6, 0.1), wire));
}

TEST_CASE("crossing_point extrapolates beyond the transit and the simplex") {
    const Tripwire<double> wire(0.5, 0.25);
    const auto x = rps::crossing_point(tr(0.1, 0.1, 0.2, 0.4), wire);
    REQUIRE(x);
    CHECK(x->y() == doctest::Approx(1.3));
}

TEST_CASE("crossing_point returns endpoints on x = alpha exactly") {
    const Tripwire<double> wire(0.3, 0.5);
    auto x = rps::crossing_point(tr(0.1, 0.123456789, 0.3, 0.3141592653589793), wire);
    REQUIRE(x);
    CHECK(x->y() == 0.3141592653589793);
    x = rps::crossing_point(tr(0.3, 0.2718281828, 0.7, 0.1), wire);
    REQUIRE(x);
    CHECK(x->y() == 0.2718281828);
}

TEST_CASE("on_tripwire is the half-open interval [0, beta)") {
    const Tripwire<double> wire(0.25, 0.25);
    CHECK(rps::on_tripwire(Point2<double>(0.25, 0.0), wire));
    CHECK_FALSE(rps::on_tripwire(Point2<double>(0.25, 0.25), wire));
    CHECK(rps::on_tripwire(Point2<double>(0.25, 0.10), wire));
    CHECK(rps::on_tripwire(Point2<double>(0.25, std::nextafter(0.25, 0.0)), wire));
    CHECK_FALSE(rps::on_tripwire(Point2<double>(0.25, -1e-300), wire));
}

TEST_CASE("crossing_point properties on random transits") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = 0.05 + 0.9 * u(rng);
        const Tripwire<double> wire(alpha, (1.0 - alpha) * (0.05 + 0.95 * u(rng)));
        const auto t = tr(u(rng), u(rng), u(rng), u(rng));
        const auto forward = rps::crossing_point(t, wire);
        const auto backward = rps::crossing_point(t.reversed(), wire);
        REQUIRE(forward.has_value() == backward.has_value());
        if (!forward) continue;
        // bit-identical under endpoint swap
        CHECK(forward->y() == backward->y());
        const double lo = std::min(t.from.x(), t.to.x());
        const double hi = std::max(t.from.x(), t.to.x());
        if (lo < alpha && alpha < hi) {
            CHECK(forward->y() >= std::min(t.from.y(), t.to.y()));
            CHECK(forward->y() <= std::max(t.from.y(), t.to.y()));
        }
    }
}

TEST_CASE("Tripwire rejects anchors outside the simplex interior") {
    CHECK_NOTHROW(Tripwire<double>(0.25, 0.25));
    CHECK_NOTHROW(Tripwire<double>(0.5, 0.5));
    CHECK_THROWS_AS(Tripwire<double>(0.0, 0.25), rps::InvalidTripwire);
    CHECK_THROWS_AS(Tripwire<double>(1.0, 0.1), rps::InvalidTripwire);
    CHECK_THROWS_AS(Tripwire<double>(0.3, 0.0), rps::InvalidTripwire);
    CHECK_THROWS_AS(Tripwire<double>(0.6, 0.5), rps::InvalidTripwire);
    const Tripwire<double> w(0.22, 0.40);
    CHECK(w.anchor() == Point2<double>(0.22, 0.40));
    CHECK(w.foot() == Point2<double>(0.22, 0.0));
}

TEST_CASE("make_simplex_point snaps within tolerance and rejects beyond") {
    auto p = rps::make_simplex_point(-1e-10, 0.5);
    CHECK(p.x() == 0.0);
    p = rps::make_simplex_point(0.6, 0.4 + 5e-10);
    CHECK(p.x() + p.y() <= 1.0);
    CHECK(p.y() == doctest::Approx(0.4));
    CHECK_THROWS_AS(rps::make_simplex_point(-1e-6, 0.5), rps::DataError);
    CHECK_THROWS_AS(rps::make_simplex_point(0.7, 0.5), rps::DataError);
    CHECK_THROWS_AS(rps::make_simplex_point(std::nan(""), 0.5), rps::DataError);
    p = rps::make_simplex_point(0.3, 0.2);
    CHECK(p == Point2<double>(0.3, 0.2));
}

TEST_CASE("Trajectory exposes consecutive transits") {
    rps::Trajectory<double> t;
    t.points.resize(2, 3);
    t.points << 0.1, 0.2, 0.3,
                0.4, 0.5, 0.6;
    CHECK(t.transit_count() == 2);
    const auto second = t.transit(1);
    CHECK(second.t == 1);
    CHECK(second.from == Point2<double>(0.2, 0.5));
    CHECK(second.to == Point2<double>(0.3, 0.6));
}

TEST_CASE("geometry also instantiates for long double") {
    const Tripwire<long double> wire(0.25L, 0.25L);
    const Transit<long double> t{{0.2L, 0.1L}, {0.3L, 0.2L}, 0};
    const auto x = rps::crossing_point(t, wire);
    REQUIRE(x);
    CHECK(static_cast<double>(x->y()) == doctest::Approx(0.15));
}
