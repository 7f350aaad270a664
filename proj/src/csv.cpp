#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/core.h>

#include "kmgwo/harness.hpp"

namespace kmgwo::harness {

namespace {

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << quote(fields[i]);
    }
    os << "\r\n";
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw RuntimeFailure(fmt::format("cannot open '{}' for writing", path.string()));
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw RuntimeFailure(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw DataError(fmt::format("CSV has no column '{}'", name));
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    auto os = open_for_write(path);
    write_row(os, table.header);
    for (const auto& row : table.rows) write_row(os, row);
    finish(os, path);
}

void export_summaries_csv(std::span<const ExperimentSummary> summaries,
                          const std::filesystem::path& path) {
    CsvTable t;
    t.header = {"algorithm", "problem", "repetitions", "avg", "std", "best", "gate_cluster_rate"};
    for (const auto& s : summaries) {
        const auto rate = s.gate_cluster_rate();
        t.rows.push_back({std::string(to_string(s.algorithm)), s.problem,
                          std::to_string(s.repetitions()), format_number(s.avg),
                          format_number(s.std_dev), format_number(s.best),
                          rate ? format_number(*rate) : std::string()});
    }
    write_csv(t, path);
}

void export_run_records_csv(std::span<const ExperimentSummary> summaries,
                            const std::filesystem::path& path) {
    auto os = open_for_write(path);
    write_row(os, {"algorithm", "problem", "seed", "iteration", "best_fitness"});
    for (const auto& s : summaries) {
        const std::string algo(to_string(s.algorithm));
        const std::string problem = quote(s.problem);
        for (std::size_t r = 0; r < s.runs.size(); ++r) {
            const auto& curve = s.runs[r].best_per_iteration;
            for (std::size_t i = 0; i < curve.size(); ++i)
                os << algo << ',' << problem << ',' << s.seeds[r] << ',' << i << ','
                   << format_number(curve[i]) << "\r\n";
        }
    }
    finish(os, path);
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false, field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started || !field.empty())
                    throw DataError(fmt::format("CSV line {}: stray quote", line));
                in_quotes = true;
                field_started = true;
                break;
            case ',': end_field(); break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                break;
            default: field += c; field_started = true;
        }
    }
    if (in_quotes) throw DataError("CSV ends inside a quoted field");
    if (field_started || !row.empty()) end_record();

    CsvTable t;
    if (records.empty()) return t;
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            throw DataError(fmt::format("CSV record {} has {} fields, header has {}", r + 1,
                                        records[r].size(), t.header.size()));
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const DataError& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

Vector final_bests_from_run_records(const CsvTable& table) {
    const std::size_t algo_col = table.column("algorithm");
    const std::size_t problem_col = table.column("problem");
    const std::size_t seed_col = table.column("seed");
    const std::size_t iter_col = table.column("iteration");
    const std::size_t fit_col = table.column("best_fitness");

    std::vector<std::string> order;
    std::unordered_map<std::string, std::pair<std::uint64_t, double>> last;
    for (const auto& row : table.rows) {
        std::uint64_t iteration;
        double value;
        try {
            iteration = parse_u64("iteration", row[iter_col]);
            value = parse_real("best_fitness", row[fit_col]);
        } catch (const ConfigError& e) {
            throw DataError(fmt::format("run-record CSV: {}", e.what()));
        }
        // gwo and kmgwo share seeds, so a run is identified by all three columns
        std::string key = row[algo_col] + '\n' + row[problem_col] + '\n' + row[seed_col];
        auto [it, inserted] = last.try_emplace(key, iteration, value);
        if (inserted)
            order.push_back(std::move(key));
        else if (iteration >= it->second.first)
            it->second = {iteration, value};
    }
    Vector out;
    out.reserve(order.size());
    for (const auto& seed : order) out.push_back(last.at(seed).second);
    return out;
}

}  // namespace kmgwo::harness
