#include "pursuit/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// RFC-4180: quote a field when it contains a comma, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::ostringstream& out, double t, int agent_id,
                const char* role, const FullState& st, Phase phase,
                int feasible, double d_e, double d_c) {
  out << num(t) << ',' << agent_id << ',' << csv_field(role) << ','
      << num(st.p.x) << ',' << num(st.p.y) << ',' << num(st.v.x) << ','
      << num(st.v.y) << ','
      << (phase == Phase::Capture ? "capture" : "encircle") << ',' << feasible
      << ',' << num(d_e) << ',' << num(d_c) << "\n";
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Captured: return "captured";
    case Outcome::Timeout: return "timeout";
    case Outcome::Escaped: return "escaped";
    case Outcome::Collision: return "collision";
  }
  return "unknown";
}

std::string trace_csv(const SimResult& result) {
  std::ostringstream out;
  out << "time_s,agent_id,role,x_m,y_m,vx,vy,phase,cell_feasible,d_e,d_c\n";
  for (const TickSnapshot& snap : result.trace) {
    for (std::size_t i = 0; i < snap.pursuers.size(); ++i) {
      append_row(out, snap.t, static_cast<int>(i), "pursuer", snap.pursuers[i],
                 snap.phase, snap.cell_feasible[i], snap.d_e, snap.d_c);
    }
    append_row(out, snap.t, static_cast<int>(snap.pursuers.size()), "evader",
               snap.evader, snap.phase, snap.evader_cell_feasible, snap.d_e,
               snap.d_c);
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing output file '" + path + "'");
}

void emit_trace_csv(const SimResult& result, const std::string& path) {
  write_text_file(path, trace_csv(result));
}

std::string batch_csv_header() {
  return "policy,obstacle_count,trial,seed,outcome,t_e_s,t_c_s,d_mo_m,d_mp_m,"
         "violation_ticks,safety_events\n";
}

std::string batch_csv_rows(const BatchStats& stats, const std::string& policy_name,
                           int obstacle_count) {
  std::ostringstream out;
  for (std::size_t i = 0; i < stats.per_trial.size(); ++i) {
    const TrialResult& t = stats.per_trial[i];
    out << csv_field(policy_name) << ',' << obstacle_count << ',' << i << ','
        << t.seed << ',' << outcome_name(t.outcome) << ','
        << (t.t_e ? num(*t.t_e) : "") << ',' << (t.t_c ? num(*t.t_c) : "") << ','
        << num(t.d_mo) << ',' << num(t.d_mp) << ',' << t.violation_ticks << ','
        << t.safety_events << "\n";
  }
  return out.str();
}

}  // namespace pursuit
