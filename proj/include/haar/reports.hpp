#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace haar {

// Flat row types mirroring the emitted tables. Exact quantities are carried
// as "num/den" strings so json and csv round-trip without loss; an empty
// string means the column does not apply to the row (a budget was exceeded,
// or no prediction exists). Counts of -1 mean not-applicable likewise.

struct WgRow {
    long n = 0;
    int p = 0;
    std::string cycle_type;   // parts joined by '+', e.g. "2+1"
    std::string exact;
    std::string asymptotic;
    std::string ratio;        // asymptotic / exact
};

struct MomentRow {
    std::string model;
    long n = 0, k = 0;
    std::string t;            // rational string, empty unless generalized
    int p = 0;
    std::string exact;
    std::string limit;
    double mc_mean = 0.0, mc_stderr = 0.0;
    long mc_samples = 0;      // 0 = no sampled column
    std::uint64_t seed = 0;
};

struct SpectrumRow {
    std::string model;
    long n = 0, k = 0;
    std::string t;
    int rank = 0;             // position in the descending eigenvalue order
    double eig_mean = 0.0, eig_spread = 0.0;
    std::string predicted;
    long hayden_pass = -1, hayden_total = -1;
    long samples = 0;
    std::uint64_t seed = 0;
};

struct CheckRow {
    std::string quantity;
    std::string exact;
    double mc_mean = 0.0, mc_stderr = 0.0;
    long mc_samples = 0;
    double sigmas = 0.0;      // |mc - exact| / stderr
    bool pass = false;        // within 4 standard errors
};

nlohmann::json to_json(const std::vector<WgRow>& rows);
nlohmann::json to_json(const std::vector<MomentRow>& rows);
nlohmann::json to_json(const std::vector<SpectrumRow>& rows);
nlohmann::json to_json(const std::vector<CheckRow>& rows);

std::vector<WgRow> wg_rows_from_json(const nlohmann::json& j);
std::vector<MomentRow> moment_rows_from_json(const nlohmann::json& j);
std::vector<SpectrumRow> spectrum_rows_from_json(const nlohmann::json& j);
std::vector<CheckRow> check_rows_from_json(const nlohmann::json& j);

std::string to_csv(const std::vector<WgRow>& rows);
std::string to_csv(const std::vector<MomentRow>& rows);
std::string to_csv(const std::vector<SpectrumRow>& rows);
std::string to_csv(const std::vector<CheckRow>& rows);

std::vector<WgRow> wg_rows_from_csv(const std::string& text);
std::vector<MomentRow> moment_rows_from_csv(const std::string& text);
std::vector<SpectrumRow> spectrum_rows_from_csv(const std::string& text);
std::vector<CheckRow> check_rows_from_csv(const std::string& text);

}  // namespace haar
