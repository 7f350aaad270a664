#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kmgwo/core.hpp"

namespace kmgwo::problems {

// ---------------------------------------------------------------------------------------------
// Pressure vessel design. x = [Ts, Th, R, L], cost minimized subject to g_i(x) <= 0.
// ---------------------------------------------------------------------------------------------

/// Which constraint set to evaluate.
///
/// `standard` is the usual formulation: g2 = -x2 + 0.00954 x3, g4 = x4 - 240.
/// `paper_literal` is the alternative g2 = -x3 + 0.00954 x3, g4 = x4 + 240. Its g4 can never
/// be satisfied inside the variable limits; it exists for audit only.
enum class ConstraintSet { standard, paper_literal };

inline constexpr double default_penalty = 1e6;

struct ConstraintReport {
    std::array<double, 4> g{};
    std::array<double, 4> violations{};
    bool feasible = false;

    double total_violation() const noexcept {
        return violations[0] + violations[1] + violations[2] + violations[3];
    }
};

Bounds pressure_vessel_bounds();

double pv_objective(std::span<const double> x);
ConstraintReport pv_constraints(std::span<const double> x,
                                ConstraintSet set = ConstraintSet::standard);
/// Cost plus penalty * sum(max(0, g_i)^2).
double pv_penalized_fitness(std::span<const double> x, double penalty_coefficient = default_penalty,
                            ConstraintSet set = ConstraintSet::standard);

Problem make_pressure_vessel(double penalty_coefficient = default_penalty,
                             ConstraintSet set = ConstraintSet::standard);

// ---------------------------------------------------------------------------------------------
// CEC2019 "100-Digit Challenge" suite, F1..F10.
// ---------------------------------------------------------------------------------------------

struct Cec2019Info {
    int id;
    std::size_t dimension;
    double lower;
    double upper;
    const char* name;
};

/// Fixed suite table: dimensions and search limits per function id.
const Cec2019Info& cec2019_info(int id);

/// Shift vector and row-major rotation matrix of one shifted-rotated function.
struct ShiftRotation {
    Vector shift;
    Vector rotation;  // dimension * dimension, row-major
};

/// Immutable table of F4..F10 data, keyed by function id.
using Cec2019Data = std::map<int, ShiftRotation>;

std::string cec2019_shift_filename(int id);
std::string cec2019_rotation_filename(int id);

/// Whitespace-separated decimal numbers. Throws DataError with line:column on bad tokens.
Vector parse_numbers(std::string_view text, const std::string& source);
Vector read_numbers(const std::filesystem::path& file);

/// Reads shift_data_<id>.txt and M_<id>_D10.txt for F4..F10 from `directory`.
///
/// Shift files may carry more values than the dimension (the official distribution pads them to
/// 100); the leading `dimension` values are used. Rotation files must hold exactly
/// dimension^2 values.
Cec2019Data load_cec2019_data(const std::filesystem::path& directory);

class Cec2019Function {
public:
    /// F1..F3 need no data; F4..F10 need the entry for their id from `data`.
    Cec2019Function(int id, const Cec2019Data* data = nullptr);

    int id() const noexcept { return id_; }
    std::size_t dimension() const noexcept { return info_->dimension; }
    Bounds bounds() const;
    const Vector& shift() const noexcept { return shift_; }
    const Vector& rotation() const noexcept { return rotation_; }

    double operator()(std::span<const double> x) const;

private:
    int id_;
    const Cec2019Info* info_;
    Vector shift_;
    Vector rotation_;
};

double evaluate_cec2019(const Cec2019Function& function, std::span<const double> x);

Problem make_cec2019_problem(int id, const Cec2019Data* data = nullptr);

// Suite base functions on already transformed input; exposed for testing.
namespace base {
double chebyshev(std::span<const double> x);
double inverse_hilbert(std::span<const double> x);
double lennard_jones(std::span<const double> x);
double rastrigin(std::span<const double> z);
double griewank(std::span<const double> z);
double weierstrass(std::span<const double> z);
double modified_schwefel(std::span<const double> z);
double expanded_schaffer_f6(std::span<const double> z);
double happy_cat(std::span<const double> z);
double ackley(std::span<const double> z);
}  // namespace base

// ---------------------------------------------------------------------------------------------

Problem make_sphere(std::size_t dimension = 10, double limit = 100.0);

}  // namespace kmgwo::problems
