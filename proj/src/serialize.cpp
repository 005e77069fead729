#include "randlab/serialize.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace randlab {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t value = 0;
    const auto result = std::from_chars(s.data(), s.data() + s.size(), value);
    if (result.ec != std::errc{} || result.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("csv: bad ") + what + " field: '" + s + "'");
    return value;
}

} // namespace

namespace prng {

nlohmann::json to_json(const PeriodReport& report) {
    return {{"period", report.period}, {"tail", report.tail}, {"full_period", report.full_period}};
}

nlohmann::json to_json(const FullPeriodCheck& check) {
    return {{"coprime_ok", check.coprime_ok},
            {"prime_factor_ok", check.prime_factor_ok},
            {"four_ok", check.four_ok},
            {"predicted_full", check.predicted_full}};
}

std::string sequence_to_csv(std::span<const std::uint64_t> seq) {
    std::string out;
    for (std::uint64_t v : seq) {
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

nlohmann::json sequence_to_json(std::span<const std::uint64_t> seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint64_t v : seq)
        arr.push_back(v);
    return arr;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string out;
    out.reserve(bits.size());
    for (std::uint8_t b : bits)
        out.push_back(b ? '1' : '0');
    return out;
}

} // namespace prng

namespace randtests {

nlohmann::json to_json(const TestReport& report) {
    return {{"test_name", report.test_name},
            {"statistic", report.statistic},
            {"df", report.df},
            {"p_value", report.p_value},
            {"verdict", to_string(report.verdict)}};
}

nlohmann::json to_json(const BatteryReport& report) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : report.reports)
        reports.push_back(to_json(r));
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& s : report.skipped)
        skipped.push_back({{"test_name", s.test_name}, {"reason", s.reason}});
    return {{"reports", reports}, {"skipped", skipped}, {"overall", to_string(report.overall)}};
}

std::string to_csv(const TestReport& report) {
    std::string out = kReportCsvHeader;
    out += '\n';
    out += report.test_name + ',' + format_double(report.statistic) + ',' +
           std::to_string(report.df) + ',' + format_double(report.p_value) + ',' +
           to_string(report.verdict) + '\n';
    return out;
}

std::string to_csv(const BatteryReport& report) {
    std::string out = kReportCsvHeader;
    out += '\n';
    for (const auto& r : report.reports)
        out += r.test_name + ',' + format_double(r.statistic) + ',' + std::to_string(r.df) +
               ',' + format_double(r.p_value) + ',' + to_string(r.verdict) + '\n';
    return out;
}

std::vector<double> read_unit_values(std::istream& in) {
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        double v = 0.0;
        const auto result = std::from_chars(line.data(), line.data() + line.size(), v);
        if (result.ec != std::errc{} || result.ptr != line.data() + line.size())
            throw std::invalid_argument("sequence file: bad value '" + line + "'");
        values.push_back(v);
    }
    return values;
}

} // namespace randtests

namespace kolmo {

nlohmann::json to_json(const ExecOutcome& outcome) {
    nlohmann::json j{{"status", to_string(outcome.status)}};
    if (outcome.status == VmStatus::Halted) {
        j["output"] = outcome.output;
        j["steps_used"] = outcome.steps_used;
        j["bits_read"] = outcome.bits_read;
    } else if (outcome.status == VmStatus::Invalid) {
        j["reason"] = to_string(outcome.fault);
    }
    return j;
}

nlohmann::json to_json(const HaltingCatalog& catalog) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : catalog.entries)
        entries.push_back({{"program", e.program}, {"output", e.output}, {"steps", e.steps}});
    return {{"max_len", catalog.max_len},
            {"max_steps", catalog.max_steps},
            {"entries", entries}};
}

nlohmann::json to_json(const ComplexityRecord& record) {
    nlohmann::json j{{"target", record.target}};
    j["k_upper"] = record.k_upper ? nlohmann::json(*record.k_upper) : nlohmann::json(nullptr);
    j["witness"] = record.witness ? nlohmann::json(*record.witness) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const CensusResult& result) {
    return {{"n", result.n},
            {"producible", result.producible},
            {"bound", result.bound},
            {"at_least_half_incompressible", result.at_least_half_incompressible}};
}

nlohmann::json to_json(const OmegaEstimate& estimate) {
    return {{"numerator", estimate.numerator},
            {"scale", estimate.scale},
            {"value", estimate.value()},
            {"binary", estimate.binary_digits()},
            {"max_len", estimate.max_len},
            {"max_steps", estimate.max_steps}};
}

nlohmann::json to_json(const std::vector<CompressDemoRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"doublings", row.doublings},
                       {"target_length", row.target_length},
                       {"k_upper_constructive", row.k_upper_constructive},
                       {"program", row.program}});
    return arr;
}

} // namespace kolmo

namespace cexp {

std::string to_csv(const TrialTable& table) {
    std::string out = kTrialCsvHeader;
    out += '\n';
    for (const TrialRow& row : table.rows) {
        out += table.algorithm + ',' + std::to_string(row.n) + ',' + std::to_string(row.rep) +
               ',' + std::to_string(row.seed) + ',' + std::to_string(row.counters.comparisons) +
               ',' + std::to_string(row.counters.swaps) + ',' +
               std::to_string(row.counters.multiplications) + ',' +
               std::to_string(row.counters.additions) + ',';
        if (row.wall_ns)
            out += std::to_string(*row.wall_ns);
        out += '\n';
    }
    return out;
}

TrialTable trial_table_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("trial csv: empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kTrialCsvHeader)
        throw std::invalid_argument("trial csv: unexpected header '" + line + "'");

    TrialTable table;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 9)
            throw std::invalid_argument("trial csv: expected 9 fields, got " +
                                        std::to_string(fields.size()));
        if (table.rows.empty())
            table.algorithm = fields[0];
        else if (table.algorithm != fields[0])
            throw std::invalid_argument("trial csv: mixed algorithms in one table");

        TrialRow row;
        row.n = parse_u64(fields[1], "n");
        row.rep = static_cast<int>(parse_u64(fields[2], "rep"));
        row.seed = parse_u64(fields[3], "seed");
        row.counters.comparisons = parse_u64(fields[4], "comparisons");
        row.counters.swaps = parse_u64(fields[5], "swaps");
        row.counters.multiplications = parse_u64(fields[6], "mults");
        row.counters.additions = parse_u64(fields[7], "adds");
        if (!fields[8].empty())
            row.wall_ns = parse_u64(fields[8], "wall_ns");
        table.rows.push_back(row);
    }
    if (table.rows.empty())
        throw std::invalid_argument("trial csv: no data rows");
    return table;
}

nlohmann::json to_json(const TrialTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TrialRow& row : table.rows) {
        nlohmann::json r{{"n", row.n},
                         {"rep", row.rep},
                         {"seed", row.seed},
                         {"comparisons", row.counters.comparisons},
                         {"swaps", row.counters.swaps},
                         {"mults", row.counters.multiplications},
                         {"adds", row.counters.additions}};
        if (row.wall_ns)
            r["wall_ns"] = *row.wall_ns;
        rows.push_back(r);
    }
    return {{"algorithm", table.algorithm}, {"rows", rows}};
}

nlohmann::json to_json(const ClassificationReport& report) {
    nlohmann::json per_point = nlohmann::json::array();
    for (const auto& p : report.per_point)
        per_point.push_back({{"n", p.n}, {"mean", p.mean}, {"variance", p.variance}});
    return {{"response", report.response},
            {"per_point", per_point},
            {"label", to_string(report.label)}};
}

nlohmann::json to_json(const SurrogateFit& fit) {
    return {{"basis", fit.basis},
            {"coefficients", fit.coefficients},
            {"r_squared", fit.r_squared},
            {"residual_sd", fit.residual_sd}};
}

SurrogateFit surrogate_fit_from_json(const nlohmann::json& j) {
    SurrogateFit fit;
    fit.basis = j.at("basis").get<std::vector<std::string>>();
    fit.coefficients = j.at("coefficients").get<std::vector<double>>();
    fit.r_squared = j.at("r_squared").get<double>();
    fit.residual_sd = j.at("residual_sd").get<double>();
    if (fit.basis.size() != fit.coefficients.size())
        throw std::invalid_argument("surrogate fit: basis/coefficient size mismatch");
    return fit;
}

nlohmann::json to_json(const Prediction& prediction) {
    return {{"mean", prediction.mean}, {"band", prediction.band}};
}

} // namespace cexp

} // namespace randlab
