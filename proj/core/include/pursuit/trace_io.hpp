#pragma once

#include <string>

#include "pursuit/engine.hpp"

namespace pursuit {

// One row per (tick, agent); header fixed; 9 significant digits; byte output
// deterministic for a deterministic result. RFC-4180 quoting.
std::string trace_csv(const SimResult& result);

void emit_trace_csv(const SimResult& result, const std::string& path);

// Per-trial batch rows; the CLI concatenates one header and the row blocks of
// every (policy, obstacle count) combination it ran.
std::string batch_csv_header();
std::string batch_csv_rows(const BatchStats& stats, const std::string& policy_name,
                           int obstacle_count);

const char* outcome_name(Outcome o);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pursuit
