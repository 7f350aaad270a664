#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <unistd.h>

#include <fmt/core.h>

#include "kmgwo/problems.hpp"

using namespace kmgwo;
using namespace kmgwo::problems;

namespace fs = std::filesystem;

namespace {

const fs::path data_dir = KMGWO_TEST_DATA_DIR;

const Vector literature_design{0.8125, 0.4375, 42.0984, 176.6366};

// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / fmt::format("kmgwo-{}-{}", tag, ::getpid())) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

void copy_data(const fs::path& to) {
    for (const auto& e : fs::directory_iterator(data_dir)) fs::copy_file(e.path(), to / e.path().filename());
}

Vector random_point(const Bounds& b, RandomStream& rng) {
    Vector x(b.size());
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(b.lower()[d], b.upper()[d]);
    return x;
}

}  // namespace

TEST_CASE("vessel objective") {
    // 0.6224*0.8125*42.0984*176.6366 + 1.7781*0.4375*42.0984^2 + 3.1661*0.8125^2*176.6366
    // + 19.84*0.8125^2*42.0984, evaluated separately in double precision: 6059.706775750789
    CHECK(std::abs(pv_objective(literature_design) - 6059.71) <= 0.05);
    CHECK(pv_objective(literature_design) == doctest::Approx(6059.706775750789).epsilon(1e-13));
    CHECK(pv_objective(Vector{1, 1, 10, 10}) == doctest::Approx(470.111).epsilon(1e-12));
    CHECK(pv_objective(Vector{0, 0, 10, 10}) == 0.0);
    CHECK_THROWS_AS(pv_objective(Vector{1, 2, 3}), InputError);
}

TEST_CASE("vessel constraints") {
    SUBCASE("literature design") {
        const auto r = pv_constraints(literature_design);
        CHECK(std::abs(r.g[0]) < 1e-3);
        CHECK(r.g[1] == doctest::Approx(-0.035881264).epsilon(1e-9));
        CHECK(r.g[3] == doctest::Approx(-63.3634).epsilon(1e-12));
        // Rounding R and L to four decimals leaves the volume constraint about 3.12 short.
        CHECK(r.g[2] == doctest::Approx(3.1226749981).epsilon(1e-6));
        CHECK_FALSE(r.feasible);
        const auto longer = pv_constraints(Vector{0.8125, 0.4375, 42.0984, 176.64});
        CHECK(longer.feasible);
        CHECK(longer.total_violation() == 0.0);
    }
    SUBCASE("corner points") {
        const auto low = pv_constraints(Vector{0, 0, 10, 10});
        CHECK(low.g[0] == doctest::Approx(0.193));
        CHECK(low.violations[0] == doctest::Approx(0.193));
        CHECK_FALSE(low.feasible);
        const auto high = pv_constraints(Vector{99, 99, 10, 10});
        CHECK(high.g[0] == doctest::Approx(-98.807));
        CHECK(high.g[3] == -230.0);
        CHECK(high.violations[0] == 0.0);
    }
    SUBCASE("literal variant") {
        const auto r = pv_constraints(Vector{1, 1, 50, 100}, ConstraintSet::paper_literal);
        CHECK(r.g[1] == doctest::Approx(-50.0 + 0.477));
        CHECK(r.g[3] == 340.0);
        CHECK_FALSE(r.feasible);
    }
    CHECK_THROWS_AS(pv_constraints(Vector{1, 2, 3, 4, 5}), InputError);
}

TEST_CASE("vessel penalty") {
    const Vector feasible{0.8125, 0.4375, 42.0984, 176.64};
    CHECK(pv_penalized_fitness(feasible, 1e6) == pv_objective(feasible));

    const double g3 = -std::numbers::pi * 100.0 * 10.0 - 4.0 / 3.0 * std::numbers::pi * 1000.0 + 1296000.0;
    const double expected = 1e6 * (0.193 * 0.193 + 0.0954 * 0.0954 + g3 * g3);
    CHECK(pv_penalized_fitness(Vector{0, 0, 10, 10}, 1e6) == doctest::Approx(expected).epsilon(1e-12));

    RandomStream rng(31);
    const Bounds b = pressure_vessel_bounds();
    for (int i = 0; i < 2000; ++i) {
        const Vector x = random_point(b, rng);
        const double f = pv_objective(x);
        const double p1 = pv_penalized_fitness(x, 1e6);
        const double p2 = pv_penalized_fitness(x, 2e6);
        const bool ok = pv_constraints(x).feasible;
        CHECK(p1 >= f);
        CHECK((p1 == f) == ok);
        CHECK(p2 - f == doctest::Approx(2.0 * (p1 - f)).epsilon(1e-9));
    }
}

TEST_CASE("vessel objective grows with every coordinate") {
    RandomStream rng(8);
    const Bounds b = pressure_vessel_bounds();
    for (int i = 0; i < 2000; ++i) {
        Vector x = random_point(b, rng);
        const double before = pv_objective(x);
        const std::size_t d = rng.index(4);
        x[d] += rng.uniform(1e-3, 5.0);
        CHECK(pv_objective(x) > before);
    }
}

TEST_CASE("vessel problem definition") {
    const Bounds b = pressure_vessel_bounds();
    CHECK(b.lower() == Vector{0, 0, 10, 10});
    CHECK(b.upper() == Vector{99, 99, 200, 200});
    const Problem p = make_pressure_vessel();
    CHECK(p.name == "vessel");
    CHECK(p.dimension() == 4);
    CHECK(p.objective(Vector{0, 0, 10, 10}) == pv_penalized_fitness(Vector{0, 0, 10, 10}, 1e6));
    CHECK(make_pressure_vessel(1e6, ConstraintSet::paper_literal).name == "vessel-literal");
}

TEST_CASE("CEC2019 dimensions and bounds") {
    const int dims[] = {9, 16, 18, 10, 10, 10, 10, 10, 10, 10};
    const double limits[] = {8192, 16384, 4, 100, 100, 100, 100, 100, 100, 100};
    for (int id = 1; id <= 10; ++id) {
        const auto& info = cec2019_info(id);
        CHECK(info.dimension == static_cast<std::size_t>(dims[id - 1]));
        CHECK(info.lower == -limits[id - 1]);
        CHECK(info.upper == limits[id - 1]);
    }
    CHECK_THROWS_AS(cec2019_info(0), InputError);
    CHECK_THROWS_AS(cec2019_info(11), InputError);
    CHECK(cec2019_rotation_filename(7) == "M_7_D10.txt");
    CHECK(cec2019_shift_filename(7) == "shift_data_7.txt");
}

TEST_CASE("CEC2019 data loading") {
    const Cec2019Data data = load_cec2019_data(data_dir);
    CHECK(data.size() == 7);
    for (const auto& [id, entry] : data) {
        CHECK(id >= 4);
        CHECK(entry.shift.size() == 10);
        CHECK(entry.rotation.size() == 100);
    }

    SUBCASE("empty directory names F4 and its file") {
        TempDir dir("empty");
        CHECK_THROWS_WITH_AS(load_cec2019_data(dir.path), doctest::Contains("F4: missing shift file 'shift_data_4.txt'"),
                             DataError);
    }
    SUBCASE("short rotation file") {
        TempDir dir("short");
        copy_data(dir.path);
        std::string text;
        for (int i = 0; i < 99; ++i) text += "0.5 ";
        write_text(dir.path / "M_6_D10.txt", text);
        CHECK_THROWS_WITH_AS(load_cec2019_data(dir.path), doctest::Contains("F6"), DataError);
    }
    SUBCASE("malformed token reports line and column") {
        TempDir dir("bad");
        copy_data(dir.path);
        write_text(dir.path / "shift_data_5.txt", "1.0 2.0\n  3.0 x4 5\n");
        CHECK_THROWS_WITH_AS(load_cec2019_data(dir.path), doctest::Contains("shift_data_5.txt:2:7"),
                             DataError);
    }
    SUBCASE("short shift file") {
        TempDir dir("shift");
        copy_data(dir.path);
        write_text(dir.path / "shift_data_9.txt", "1 2 3");
        CHECK_THROWS_AS(load_cec2019_data(dir.path), DataError);
    }
    SUBCASE("parsed values survive a text round trip") {
        for (const auto& [id, entry] : data) {
            std::string text;
            for (std::size_t i = 0; i < entry.rotation.size(); ++i)
                text += fmt::format("{:.17g}{}", entry.rotation[i], (i + 1) % 10 ? " " : "\n");
            CHECK(parse_numbers(text, "roundtrip") == entry.rotation);
        }
    }
    CHECK(parse_numbers("+1.5e2\t-3\r\n", "signs") == Vector{150.0, -3.0});
}

TEST_CASE("CEC2019 functions need their data") {
    CHECK_THROWS_AS(Cec2019Function(4), DataError);
    CHECK_NOTHROW(Cec2019Function(2));
    const Cec2019Data data = load_cec2019_data(data_dir);
    const Cec2019Function f5(5, &data);
    CHECK_THROWS_AS(f5(Vector(9, 0.0)), InputError);
    CHECK(make_cec2019_problem(5, &data).name == "cec19:f5");
}

TEST_CASE("CEC2019 values at known optima") {
    const Cec2019Data data = load_cec2019_data(data_dir);
    for (int id = 4; id <= 10; ++id) {
        const Cec2019Function f(id, &data);
        CAPTURE(id);
        CHECK(std::abs(f(f.shift()) - 1.0) <= 1e-9);
    }

    // Coefficients of the Chebyshev polynomial T8 stay within [-1, 1] on [-1, 1].
    const Vector t8{128, 0, -256, 0, 160, 0, -32, 0, 1};
    CHECK(std::abs(Cec2019Function(1)(t8) - 1.0) <= 1e-9);

    // Integer inverse of the 4x4 Hilbert matrix.
    const Vector h_inv{16,   -120,  240,   -140,  -120, 1200,  -2700, 1680,
                       240,  -2700, 6480,  -4200, -140, 1680,  -4200, 2800};
    CHECK(std::abs(Cec2019Function(2)(h_inv) - 1.0) <= 1e-9);

    // Regular octahedron: 12 edges of length s and 3 diagonals of length s*sqrt(2), so
    // E(s) = (12 + 3/64) s^-12 - (24 + 3/4) s^-6, minimized at s^-6 = 24.75 / (2 * 12.046875).
    const double s = std::pow(24.75 / (2.0 * 12.046875), -1.0 / 6.0);
    const double r = s / std::sqrt(2.0);
    const Vector octahedron{r, 0, 0, -r, 0, 0, 0, r, 0, 0, -r, 0, 0, 0, r, 0, 0, -r};
    CHECK(std::abs(Cec2019Function(3)(octahedron) - 1.0) <= 1e-9);
}

TEST_CASE("CEC2019 values never fall below one on random points") {
    const Cec2019Data data = load_cec2019_data(data_dir);
    RandomStream rng(2019);
    for (int id = 1; id <= 10; ++id) {
        const Cec2019Function f(id, id >= 4 ? &data : nullptr);
        const Bounds b = f.bounds();
        double lowest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 5000; ++i) lowest = std::min(lowest, f(random_point(b, rng)));
        CAPTURE(id);
        CHECK(lowest >= 1.0);
    }
}

TEST_CASE("F3 on random points sits well above its minimum") {
    RandomStream rng(3);
    const Cec2019Function f(3);
    double lowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) lowest = std::min(lowest, f(random_point(f.bounds(), rng)));
    CHECK(lowest >= 1.0);
    CHECK(lowest < 14.0);
}

TEST_CASE("base functions vanish at the origin") {
    const Vector zero(10, 0.0);
    CHECK(base::rastrigin(zero) == 0.0);
    CHECK(base::griewank(zero) == 0.0);
    CHECK(base::weierstrass(zero) == doctest::Approx(0.0));
    CHECK(std::abs(base::modified_schwefel(zero)) < 1e-9);
    CHECK(base::expanded_schaffer_f6(zero) == 0.0);
    CHECK(std::abs(base::happy_cat(zero)) < 1e-12);
    CHECK(std::abs(base::ackley(zero)) < 1e-12);
    CHECK(base::rastrigin(Vector{1.0}) == doctest::Approx(1.0));
    CHECK(base::rastrigin(Vector{0.5}) == doctest::Approx(20.25));
}

TEST_CASE("sphere helper") {
    const Problem p = make_sphere(3, 5.0);
    CHECK(p.dimension() == 3);
    CHECK(p.objective(Vector{1, 2, 2}) == 9.0);
    CHECK(p.bounds.upper() == Vector{5, 5, 5});
}
