#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ellcheck/estimates.hpp"

namespace ellcheck {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int hypothesis_failed = 2;
inline constexpr int usage = 64;
}  // namespace exit_code

using Value = std::variant<double, std::string>;
// Ordered fields; dotted keys nest in JSON ("bounds.lower").
using Record = std::vector<std::pair<std::string, Value>>;

struct ReportFit {
    std::string x;
    std::string y;
    FitResult fit;
};

struct RunReport {
    std::string command;
    Record config;
    std::vector<CheckRow> rows;  // estimate checks
    std::vector<Record> records; // everything else
    std::vector<ReportFit> fits;
    Record provenance;
    bool hypothesis_failed = false;
};

inline constexpr const char* csv_header = "param,M,r0,MR,lhs,rhs_core,implied_const,log_implied";

// 17 significant digits; inf and nan spelled out.
std::string format_number(double x);
std::string to_csv(const RunReport& report);
std::string to_json(const RunReport& report);

// Parses argv, runs one subcommand, writes the report to out; returns an exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellcheck
