#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "kmgwo/problems.hpp"

namespace kmgwo::problems {

namespace {

void require_four(std::span<const double> x, const char* what) {
    if (x.size() != 4)
        throw InputError(fmt::format("{}: expected 4 design variables, got {}", what, x.size()));
}

}  // namespace

Bounds pressure_vessel_bounds() {
    return Bounds({0.0, 0.0, 10.0, 10.0}, {99.0, 99.0, 200.0, 200.0});
}

double pv_objective(std::span<const double> x) {
    require_four(x, "pv_objective");
    const double ts = x[0], th = x[1], r = x[2], l = x[3];
    return 0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r;
}

ConstraintReport pv_constraints(std::span<const double> x, ConstraintSet set) {
    require_four(x, "pv_constraints");
    const double ts = x[0], th = x[1], r = x[2], l = x[3];
    constexpr double pi = std::numbers::pi;

    ConstraintReport rep;
    rep.g[0] = -ts + 0.0193 * r;
    rep.g[2] = -pi * r * r * l - (4.0 / 3.0) * pi * r * r * r + 1'296'000.0;
    if (set == ConstraintSet::standard) {
        rep.g[1] = -th + 0.00954 * r;
        rep.g[3] = l - 240.0;
    } else {
        rep.g[1] = -r + 0.00954 * r;
        rep.g[3] = l + 240.0;
    }
    rep.feasible = true;
    for (std::size_t i = 0; i < 4; ++i) {
        rep.violations[i] = std::max(0.0, rep.g[i]);
        if (rep.violations[i] > 0.0) rep.feasible = false;
    }
    return rep;
}

double pv_penalized_fitness(std::span<const double> x, double penalty_coefficient,
                            ConstraintSet set) {
    const double cost = pv_objective(x);
    const auto rep = pv_constraints(x, set);
    if (rep.feasible) return cost;
    double squared = 0.0;
    for (double v : rep.violations) squared += v * v;
    return cost + penalty_coefficient * squared;
}

Problem make_pressure_vessel(double penalty_coefficient, ConstraintSet set) {
    if (!(penalty_coefficient >= 0.0))
        throw ConfigError(fmt::format("penalty coefficient must be nonnegative, got {}",
                                      penalty_coefficient));
    return Problem{
        set == ConstraintSet::standard ? "vessel" : "vessel-literal",
        pressure_vessel_bounds(),
        [penalty_coefficient, set](std::span<const double> x) {
            return pv_penalized_fitness(x, penalty_coefficient, set);
        },
    };
}

Problem make_sphere(std::size_t dimension, double limit) {
    return Problem{
        "sphere",
        Bounds::uniform(dimension, -limit, limit),
        [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        },
    };
}

}  // namespace kmgwo::problems
