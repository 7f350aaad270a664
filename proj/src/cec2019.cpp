// CEC2019 "100-Digit Challenge" functions, following the competition's reference C code:
// shift, scale, rotate (F4..F10), then the base function, then +1 so every minimum is 1.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/core.h>

#include "kmgwo/problems.hpp"

namespace kmgwo::problems {

namespace {

constexpr double pi = std::numbers::pi;

constexpr std::array<Cec2019Info, 10> suite{{
    {1, 9, -8192.0, 8192.0, "Storn's Chebyshev polynomial fitting"},
    {2, 16, -16384.0, 16384.0, "Inverse Hilbert matrix"},
    {3, 18, -4.0, 4.0, "Lennard-Jones minimum energy cluster"},
    {4, 10, -100.0, 100.0, "Shifted rotated Rastrigin"},
    {5, 10, -100.0, 100.0, "Shifted rotated Griewank"},
    {6, 10, -100.0, 100.0, "Shifted rotated Weierstrass"},
    {7, 10, -100.0, 100.0, "Shifted rotated modified Schwefel"},
    {8, 10, -100.0, 100.0, "Shifted rotated expanded Schaffer F6"},
    {9, 10, -100.0, 100.0, "Shifted rotated Happy Cat"},
    {10, 10, -100.0, 100.0, "Shifted rotated Ackley"},
}};

// Pre-rotation scale applied to (x - o), per function id 4..10.
double shift_scale(int id) {
    switch (id) {
        case 4: return 5.12 / 100.0;
        case 5: return 600.0 / 100.0;
        case 6: return 0.5 / 100.0;
        case 7: return 1000.0 / 100.0;
        case 9: return 5.0 / 100.0;
        default: return 1.0;
    }
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", file.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const Cec2019Info& cec2019_info(int id) {
    if (id < 1 || id > 10) throw InputError(fmt::format("CEC2019 function id {} not in 1..10", id));
    return suite[static_cast<std::size_t>(id - 1)];
}

std::string cec2019_shift_filename(int id) { return fmt::format("shift_data_{}.txt", id); }

std::string cec2019_rotation_filename(int id) {
    return fmt::format("M_{}_D{}.txt", id, cec2019_info(id).dimension);
}

Vector parse_numbers(std::string_view text, const std::string& source) {
    Vector out;
    std::size_t line = 1, col = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++col;
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        const std::string_view token = text.substr(i, end - i);
        // from_chars rejects a leading '+', which some writers emit.
        const std::size_t skip = token.front() == '+' ? 1 : 0;
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(token.data() + skip, token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
            throw DataError(fmt::format("{}:{}:{}: malformed number '{}'", source, line, col, token));
        out.push_back(value);
        col += end - i;
        i = end;
    }
    return out;
}

Vector read_numbers(const std::filesystem::path& file) {
    return parse_numbers(read_file(file), file.string());
}

Cec2019Data load_cec2019_data(const std::filesystem::path& directory) {
    Cec2019Data data;
    for (int id = 4; id <= 10; ++id) {
        const std::size_t dim = cec2019_info(id).dimension;
        ShiftRotation entry;
        for (const bool rotation : {false, true}) {
            const std::string name =
                rotation ? cec2019_rotation_filename(id) : cec2019_shift_filename(id);
            const auto path = directory / name;
            if (!std::filesystem::is_regular_file(path))
                throw DataError(fmt::format("F{}: missing {} file '{}' in '{}'", id,
                                            rotation ? "rotation" : "shift", name,
                                            directory.string()));
            Vector values = read_numbers(path);
            if (rotation) {
                if (values.size() != dim * dim)
                    throw DataError(fmt::format("F{}: '{}' holds {} values, a {}x{} matrix needs {}",
                                                id, name, values.size(), dim, dim, dim * dim));
                entry.rotation = std::move(values);
            } else {
                if (values.size() < dim)
                    throw DataError(fmt::format("F{}: '{}' holds {} values, need at least {}", id,
                                                name, values.size(), dim));
                values.resize(dim);
                entry.shift = std::move(values);
            }
        }
        data.emplace(id, std::move(entry));
    }
    return data;
}

// ---------------------------------------------------------------------------------------------

namespace base {

double chebyshev(std::span<const double> x) {
    const std::size_t n = x.size();
    double a = 1.0, b = 1.2, dx = 0.0;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        dx = 2.4 * b - a;
        a = b;
        b = dx;
    }
    const int sample = 32 * static_cast<int>(n);
    const double dy = 2.0 / static_cast<double>(sample);

    double sum = 0.0, y = -1.0;
    for (int i = 0; i <= sample; ++i) {
        double px = x[0];
        for (std::size_t j = 1; j < n; ++j) px = y * px + x[j];
        if (px < -1.0 || px > 1.0) sum += (1.0 - std::abs(px)) * (1.0 - std::abs(px));
        y += dy;
    }
    // The reference code evaluates the 1.2 end twice (loop over i = -1, 1).
    for (int twice = 0; twice < 2; ++twice) {
        double px = x[0];
        for (std::size_t j = 1; j < n; ++j) px = 1.2 * px + x[j];
        if (px < dx) sum += px * px;
    }
    return sum;
}

double inverse_hilbert(std::span<const double> x) {
    const auto b = static_cast<std::size_t>(std::sqrt(static_cast<double>(x.size())));
    long double sum = 0.0L;
    for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t k = 0; k < b; ++k) {
            long double y = 0.0L;
            for (std::size_t i = 0; i < b; ++i)
                y += (1.0L / static_cast<long double>(j + i + 1)) * x[k + b * i];
            sum += j == k ? std::fabs(y - 1.0L) : std::fabs(y);
        }
    }
    return static_cast<double>(sum);
}

double lennard_jones(std::span<const double> x) {
    std::size_t atoms = x.size() / 3;
    long double sum = 0.0L;
    for (std::size_t i = 0; i + 1 < atoms; ++i) {
        for (std::size_t j = i + 1; j < atoms; ++j) {
            const std::size_t a = 3 * i, c = 3 * j;
            const long double xd = x[a] - x[c];
            const long double yd = x[a + 1] - x[c + 1];
            const long double zd = x[a + 2] - x[c + 2];
            const long double ed = xd * xd + yd * yd + zd * zd;
            const long double ud = ed * ed * ed;
            if (ud > 1.0e-10L)
                sum += (1.0L / ud - 2.0L) / ud;
            else
                sum += 1.0e20L;
        }
    }
    // Known 6-atom minimum, so the optimum maps to 0.
    return static_cast<double>(sum) + 12.7120622568;
}

double rastrigin(std::span<const double> z) {
    double f = 0.0;
    for (double v : z) f += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
    return f;
}

double griewank(std::span<const double> z) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        s += z[i] * z[i];
        p *= std::cos(z[i] / std::sqrt(1.0 + static_cast<double>(i)));
    }
    return 1.0 + s / 4000.0 - p;
}

double weierstrass(std::span<const double> z) {
    constexpr double a = 0.5, b = 3.0;
    constexpr int k_max = 20;
    double f = 0.0, offset = 0.0;
    for (double v : z) {
        double sum = 0.0;
        offset = 0.0;
        for (int j = 0; j <= k_max; ++j) {
            sum += std::pow(a, j) * std::cos(2.0 * pi * std::pow(b, j) * (v + 0.5));
            offset += std::pow(a, j) * std::cos(2.0 * pi * std::pow(b, j) * 0.5);
        }
        f += sum;
    }
    return f - static_cast<double>(z.size()) * offset;
}

double modified_schwefel(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double f = 0.0;
    for (double v : z) {
        const double zi = v + 4.209687462275036e+002;
        if (zi > 500.0) {
            const double m = 500.0 - std::fmod(zi, 500.0);
            f -= m * std::sin(std::sqrt(m));
            const double t = (zi - 500.0) / 100.0;
            f += t * t / n;
        } else if (zi < -500.0) {
            const double m = std::fmod(std::abs(zi), 500.0);
            f -= (-500.0 + m) * std::sin(std::sqrt(500.0 - m));
            const double t = (zi + 500.0) / 100.0;
            f += t * t / n;
        } else {
            f -= zi * std::sin(std::sqrt(std::abs(zi)));
        }
    }
    return f + 4.189828872724338e+002 * n;
}

double expanded_schaffer_f6(std::span<const double> z) {
    const std::size_t n = z.size();
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = z[i], b = z[(i + 1) % n];
        const double r2 = a * a + b * b;
        double s = std::sin(std::sqrt(r2));
        s *= s;
        const double t = 1.0 + 0.001 * r2;
        f += 0.5 + (s - 0.5) / (t * t);
    }
    return f;
}

double happy_cat(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double r2 = 0.0, sum_z = 0.0;
    for (double v : z) {
        const double w = v - 1.0;
        r2 += w * w;
        sum_z += w;
    }
    return std::pow(std::abs(r2 - n), 2.0 * (1.0 / 8.0)) + (0.5 * r2 + sum_z) / n + 0.5;
}

double ackley(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double s1 = 0.0, s2 = 0.0;
    for (double v : z) {
        s1 += v * v;
        s2 += std::cos(2.0 * pi * v);
    }
    return std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(s1 / n)) - std::exp(s2 / n) + 20.0;
}

}  // namespace base

// ---------------------------------------------------------------------------------------------

Cec2019Function::Cec2019Function(int id, const Cec2019Data* data)
    : id_(id), info_(&cec2019_info(id)) {
    if (id < 4) return;
    if (data == nullptr)
        throw DataError(fmt::format("F{} needs shift/rotation data; none was loaded", id));
    const auto it = data->find(id);
    if (it == data->end()) throw DataError(fmt::format("F{}: no data entry loaded", id));
    const std::size_t dim = info_->dimension;
    if (it->second.shift.size() != dim || it->second.rotation.size() != dim * dim)
        throw DataError(fmt::format("F{}: data has shift {} / rotation {} values, need {} / {}", id,
                                    it->second.shift.size(), it->second.rotation.size(), dim,
                                    dim * dim));
    shift_ = it->second.shift;
    rotation_ = it->second.rotation;
}

Bounds Cec2019Function::bounds() const {
    return Bounds::uniform(info_->dimension, info_->lower, info_->upper);
}

double Cec2019Function::operator()(std::span<const double> x) const {
    const std::size_t n = info_->dimension;
    if (x.size() != n)
        throw InputError(fmt::format("F{}: expected {} variables, got {}", id_, n, x.size()));

    switch (id_) {
        case 1: return base::chebyshev(x) + 1.0;
        case 2: return base::inverse_hilbert(x) + 1.0;
        case 3: return base::lennard_jones(x) + 1.0;
        default: break;
    }

    std::array<double, 10> y{}, z{};
    const double scale = shift_scale(id_);
    for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - shift_[i]) * scale;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += y[j] * rotation_[i * n + j];
        z[i] = acc;
    }
    const std::span<const double> zs(z.data(), n);

    double f = 0.0;
    switch (id_) {
        case 4: f = base::rastrigin(zs); break;
        case 5: f = base::griewank(zs); break;
        case 6: f = base::weierstrass(zs); break;
        case 7: f = base::modified_schwefel(zs); break;
        case 8: f = base::expanded_schaffer_f6(zs); break;
        case 9: f = base::happy_cat(zs); break;
        case 10: f = base::ackley(zs); break;
    }
    return f + 1.0;
}

double evaluate_cec2019(const Cec2019Function& function, std::span<const double> x) {
    return function(x);
}

Problem make_cec2019_problem(int id, const Cec2019Data* data) {
    Cec2019Function fn(id, data);
    auto bounds = fn.bounds();
    return Problem{fmt::format("cec19:f{}", id), std::move(bounds),
                   [fn = std::move(fn)](std::span<const double> x) { return fn(x); }};
}

}  // namespace kmgwo::problems
