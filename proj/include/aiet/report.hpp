#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "aiet/mapfile.hpp"

namespace aiet {

using Json = nlohmann::ordered_json;

/// Tolerances and horizons echoed into every report.
struct ReportConfig {
    DynamicsConfig dynamics;
    double rho_tol = 1e-4;
    double bosh_tol = 1e-9;
    long drift_n = 20000;
};

inline constexpr int kSchemaVersion = 1;

/// Exit codes: 0 ok, 2 inconclusive, 3 validation error, 4 parse error.
struct CmdResult {
    Json report;
    int exit_code = 0;
};

Json scalar_json(const Scalar& s);
Json aiet_json(const Aiet& f);
Json interval_json(const Interval& i);
Json certificate_json(const Certificate& c);

CmdResult cmd_analyze(const MapFile& file, const std::string& map_name, const ReportConfig& cfg);
CmdResult cmd_normalize(const MapFile& file, const std::string& map_name, const ReportConfig& cfg);
CmdResult cmd_certify(const MapFile& file, const std::string& map_name,
                      const std::optional<std::string>& group_name, const ReportConfig& cfg);
CmdResult cmd_group_bs_check(const MapFile& file, const std::string& a, const std::string& b,
                             long m, long n, const ReportConfig& cfg);
CmdResult cmd_group_bs_obstruct(const MapFile& file, const std::string& a, const std::string& b,
                                long m, long n, long s_max, const ReportConfig& cfg);
CmdResult cmd_group_nilp_check(const MapFile& file, const std::string& u, const std::string& v,
                               long p, long q, const ReportConfig& cfg);
CmdResult cmd_group_word(const MapFile& file, const std::string& group_name,
                         const std::vector<int>& word, const ReportConfig& cfg);
CmdResult cmd_group_ball(const MapFile& file, const std::string& group_name, long radius,
                         const std::vector<std::string>& targets, const ReportConfig& cfg);

}  // namespace aiet
