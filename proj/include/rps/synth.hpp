#pragma once

// Synthetic trajectories with known cycle structure, and the angle-summation
// winding number used as an independent oracle for net crossing counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "rps/errors.hpp"
#include "rps/simplex.hpp"

namespace rps {

enum class GeneratorKind {
    kCircle,
    kSpiral,
    kNoisyLoop,
    kDiscretePopulation,
};

inline std::string_view to_string(GeneratorKind kind);
inline GeneratorKind parse_generator_kind(std::string_view name);

/// Orbit description. Positive turns run counter-clockwise in the (x, y)
/// plane. noise is the per-coordinate standard deviation of the jitter
/// (noisy-loop and discrete-population only).
template <typename Scalar>
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::kCircle;
    Point2<Scalar> center = Point2<Scalar>(Scalar(1) / 3, Scalar(1) / 3);
    Scalar radius = Scalar(0.1);
    Scalar turns = 1;
    int points_per_turn = 36;
    Scalar noise = 0;
    std::uint64_t seed = 0;
    int population_n = 8;
};

inline constexpr double kSpiralMinRadius = 1e-6;

/// Gaussian jitter: mt19937_64 feeding a basic Box-Muller transform on 53-bit
/// uniforms u = (draw >> 11) * 2^-53. Both outputs of each pair are used, the
/// cosine branch first. Fully specified, so fixtures are portable.
class GaussianJitter {
public:
    explicit GaussianJitter(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = mag * std::sin(angle);
        has_spare_ = true;
        return mag * std::cos(angle);
    }

private:
    double uniform() { return double(engine_() >> 11) * 0x1p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

namespace detail {

template <typename Scalar>
Point2<Scalar> project_to_simplex(Point2<Scalar> p) {
    p = p.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
    if (p.x() + p.y() > Scalar(1)) {
        p.y() = Scalar(1) - p.x();
    }
    return p;
}

template <typename Scalar>
Point2<Scalar> snap_to_population(const Point2<Scalar>& p, int n) {
    long k1 = std::lround(p.x() * n);
    long k2 = std::lround(p.y() * n);
    if (k1 + k2 > n) k2 = n - k1;
    return {Scalar(k1) / Scalar(n), Scalar(k2) / Scalar(n)};
}

}  // namespace detail

template <typename Scalar>
void validate(const GeneratorSpec<Scalar>& spec) {
    if (!std::isfinite(spec.turns) || !std::isfinite(spec.radius) || !std::isfinite(spec.noise)) {
        throw ArgumentError("generator parameters must be finite");
    }
    if (spec.points_per_turn < 3) throw ArgumentError("points_per_turn must be at least 3");
    if (spec.radius < 0) throw ArgumentError("radius must be non-negative");
    if (spec.noise < 0) throw ArgumentError("noise must be non-negative");
    if (spec.kind == GeneratorKind::kDiscretePopulation && spec.population_n < 1) {
        throw ArgumentError("population_n must be positive");
    }
    const Scalar cx = spec.center.x(), cy = spec.center.y();
    const bool fits = cx - spec.radius >= 0 && cy - spec.radius >= 0 &&
                      (Scalar(1) - cx - cy) / std::numbers::sqrt2_v<Scalar> >= spec.radius;
    if (!fits) {
        throw SpecOutOfSimplex("orbit of radius " + std::to_string(double(spec.radius)) +
                               " around (" + std::to_string(double(cx)) + ", " + std::to_string(double(cy)) +
                               ") leaves the simplex");
    }
}

/// Builds the orbit. Apart from spirals, a whole, nonzero number of turns gives a closed
/// trajectory (last point identical to the first); turns == 0 repeats the
/// start point.
template <typename Scalar>
Trajectory<Scalar> generate(const GeneratorSpec<Scalar>& spec, std::string treatment_id = "synthetic",
                            std::string block_id = "B1") {
    validate(spec);
    const auto steps = static_cast<Index>(std::lround(std::abs(spec.turns) * spec.points_per_turn));
    const Index n_points = std::max<Index>(steps, 1) + 1;
    const bool closed =
        spec.kind != GeneratorKind::kSpiral && steps > 0 && spec.turns == std::round(spec.turns);
    const Scalar sweep = Scalar(2 * std::numbers::pi) * spec.turns;

    GaussianJitter jitter(spec.seed);
    const bool noisy = spec.kind == GeneratorKind::kNoisyLoop || spec.kind == GeneratorKind::kDiscretePopulation;

    Trajectory<Scalar> out{Points2<Scalar>(2, n_points), std::move(block_id), std::move(treatment_id)};
    for (Index k = 0; k < n_points; ++k) {
        const Scalar frac = steps > 0 ? Scalar(k) / Scalar(steps) : Scalar(0);
        Scalar r = spec.radius;
        if (spec.kind == GeneratorKind::kSpiral) {
            const Scalar floor = std::min<Scalar>(spec.radius, Scalar(kSpiralMinRadius));
            r = spec.radius - (spec.radius - floor) * frac;
        }
        const Scalar theta = sweep * frac;
        Point2<Scalar> p = spec.center + r * Point2<Scalar>(std::cos(theta), std::sin(theta));
        if (noisy && spec.noise > 0) {
            const Scalar dx = Scalar(jitter());
            const Scalar dy = Scalar(jitter());
            p += spec.noise * Point2<Scalar>(dx, dy);
        }
        p = detail::project_to_simplex(p);
        if (spec.kind == GeneratorKind::kDiscretePopulation) {
            p = detail::snap_to_population(p, spec.population_n);
        }
        out.points.col(k) = p;
    }
    if (closed) {
        out.points.col(n_points - 1) = out.points.col(0);
    }
    return out;
}

/// Sum of signed angles subtended at `point` by each transit, in turns.
/// Requires a closed trajectory that does not pass through `point`; the
/// result is snapped to the nearest integer when within 1e-9 of it.
template <typename Scalar>
Scalar winding_number(const Trajectory<Scalar>& trajectory, const Point2<Scalar>& point) {
    const Index n = trajectory.size();
    if (n < 2 || trajectory.points.col(0) != trajectory.points.col(n - 1)) {
        throw OpenTrajectory("winding number needs a closed trajectory (first point == last point)");
    }
    Scalar total = 0;
    for (Index t = 0; t + 1 < n; ++t) {
        const Point2<Scalar> a = trajectory.points.col(t) - point;
        const Point2<Scalar> b = trajectory.points.col(t + 1) - point;
        const Scalar cross = a.x() * b.y() - a.y() * b.x();
        const Scalar dot = a.dot(b);
        if (cross == 0 && dot <= 0) {
            throw PointOnCurve("point lies on transit " + std::to_string(t));
        }
        total += std::atan2(cross, dot);
    }
    const Scalar turns = total / Scalar(2 * std::numbers::pi);
    const Scalar nearest = std::round(turns);
    return std::abs(turns - nearest) < Scalar(1e-9) ? nearest : turns;
}

inline std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::kCircle: return "circle";
        case GeneratorKind::kSpiral: return "spiral";
        case GeneratorKind::kNoisyLoop: return "noisy-loop";
        case GeneratorKind::kDiscretePopulation: return "discrete-population";
    }
    return "?";
}

inline GeneratorKind parse_generator_kind(std::string_view name) {
    if (name == "circle") return GeneratorKind::kCircle;
    if (name == "spiral") return GeneratorKind::kSpiral;
    if (name == "noisy-loop") return GeneratorKind::kNoisyLoop;
    if (name == "discrete-population") return GeneratorKind::kDiscretePopulation;
    throw ArgumentError("unknown generator kind '" + std::string(name) + "'");
}

}  // namespace rps
