#pragma once

#include <nlohmann/json.hpp>

#include "powerflow/railopt.hpp"

// Profile documents (ingestion, validation, serialization), schedule tables,
// the synthetic-instance generator, and the bundled profile templates.

namespace powerflow {

using Json = nlohmann::json;

// A complete solver input: the workload plus the model defaults that travel
// with it. JSON field names match the struct members one-to-one; docs/ ships
// the schema.
struct ProfileDocument {
  std::string schema_version = "powerflow-profile-1";
  VoltageMenu menu;
  TransitionModel transition;
  Nanowatt idle_power_nw = 0;
  DutyConfig duty;
  WorkloadProfile workload;
};

// Strict parse: unknown fields, wrong types, non-integer numbers, and every
// schema invariant violation raise ValidationError naming the field. File
//-level parse failures carry line/column context.
ProfileDocument load_profile(const std::string& path);
ProfileDocument parse_profile(const Json& j);
Json profile_to_json(const ProfileDocument& doc);
void save_profile(const ProfileDocument& doc, const std::string& path);

// Deadline for a target inference rate (frames/s, exact rational):
// t_max = floor(1e12 / rate) ps, idle power and duty from the document.
DeadlineSpec make_deadline(const ProfileDocument& doc, const Rational& rate_fps);

// Static schedule table: per-layer rows (assignment, op and incoming
// transition costs), terminal idle row, totals. Re-evaluating the table
// against its profile reproduces E_tot and T_infer exactly.
Json emit_schedule_table(const ProfileDocument& doc, const DeadlineSpec& dl, const Schedule& s);

struct ScheduleTable {
  RailSet rails;
  DeadlineSpec deadline;
  std::vector<LayerAssignment> assignment;
  Femtojoule e_tot_fj = 0;   // totals as read from the document
  Picosecond t_infer_ps = 0;
};
ScheduleTable load_schedule_table(const Json& j);

// Deterministic synthetic instances. Same config -> identical document.
struct GenConfig {
  u64 seed = 1;
  int layers = 8;
  int dvfs_domains = 2;
  int banks = 0;
  int menu_levels = 4;             // menu = 900 + 50k mV, k < menu_levels
  i64 leak_dyn_spread_ppm = kPpm;  // widens the leakage-vs-dynamic contrast across domains
  i64 trap_rate_ppm = 0;           // chance a layer flips its critical domain (rail traps)
  i64 bank_density_ppm = 500'000;  // chance a (layer, bank) pair idles with gating windows
  i64 trap_switch_boost = 1;       // multiplies the base switch energy
  std::string name;                // default "gen-<seed>"
};
ProfileDocument generate_random_instance(const GenConfig& cfg);

// Bundled profile templates ("squeezenet-like", "mobilenetv3-like",
// "resnet18-like", "mobilevit-like"): fixed synthetic approximations of
// well-known edge networks. Layer counts follow the published layer totals;
// magnitudes are plausible 40nm-class values, not measurements.
ProfileDocument make_template_profile(const std::string& kind);
const std::vector<std::string>& template_names();

// RFC-4180 CSV: fields quoted only when needed, CRLF-free (LF rows).
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace powerflow
