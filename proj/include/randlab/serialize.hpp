#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "randlab/cexp.hpp"
#include "randlab/kolmolab.hpp"
#include "randlab/prng.hpp"
#include "randlab/randtests.hpp"
#include "randlab/toyvm.hpp"

// JSON and CSV views of every report type. CSV is RFC-4180-style with LF
// line endings and '.' as the decimal separator regardless of locale;
// doubles are printed shortest-round-trip so equal values always render
// to equal bytes.

namespace randlab {

std::string format_double(double value);

namespace prng {

nlohmann::json to_json(const PeriodReport& report);
nlohmann::json to_json(const FullPeriodCheck& check);

std::string sequence_to_csv(std::span<const std::uint64_t> seq);
nlohmann::json sequence_to_json(std::span<const std::uint64_t> seq);

std::string bits_to_string(std::span<const std::uint8_t> bits);

} // namespace prng

namespace randtests {

nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const BatteryReport& report);

inline constexpr const char* kReportCsvHeader = "test,statistic,df,p_value,verdict";
std::string to_csv(const TestReport& report);
std::string to_csv(const BatteryReport& report);

// One value per line (a plain number column is also accepted as CSV).
std::vector<double> read_unit_values(std::istream& in);

} // namespace randtests

namespace kolmo {

nlohmann::json to_json(const ExecOutcome& outcome);
nlohmann::json to_json(const HaltingCatalog& catalog);
nlohmann::json to_json(const ComplexityRecord& record);
nlohmann::json to_json(const CensusResult& result);
nlohmann::json to_json(const OmegaEstimate& estimate);
nlohmann::json to_json(const std::vector<CompressDemoRow>& rows);

} // namespace kolmo

namespace cexp {

inline constexpr const char* kTrialCsvHeader =
    "algorithm,n,rep,seed,comparisons,swaps,mults,adds,wall_ns";

std::string to_csv(const TrialTable& table);
TrialTable trial_table_from_csv(std::istream& in);

nlohmann::json to_json(const TrialTable& table);
nlohmann::json to_json(const ClassificationReport& report);
nlohmann::json to_json(const SurrogateFit& fit);
SurrogateFit surrogate_fit_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Prediction& prediction);

} // namespace cexp

} // namespace randlab
