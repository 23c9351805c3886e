// Command-line driver. Everything goes through the C interface of the shared
// library; this translation unit deliberately includes no library-internal
// headers.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "octplane.h"

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string field = "q";
  std::string polarity = "all";
  int samples = 1000;
  uint64_t seed = 42;
  std::vector<std::string> checks;
  std::string out;
  int jobs = 1;
  bool fault_adjoint = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--field", o.field, "Ground field: q | qsqrt2 | f2t")->capture_default_str();
  cmd->add_option("--polarity", o.polarity, "Polarity type: i | ii | iii | iv | all")
      ->capture_default_str();
  cmd->add_option("--samples", o.samples, "Base sample count per check")->capture_default_str();
  cmd->add_option("--seed", o.seed, "64-bit seed of the SplitMix64 generator")
      ->capture_default_str();
  cmd->add_option("--checks", o.checks, "Subset of checks to run (others report as skipped)")
      ->delimiter(',');
  cmd->add_option("--out", o.out, "Write the report to this file (atomically)");
  cmd->add_option("--jobs", o.jobs, "Worker threads across independent checks")
      ->capture_default_str();
  cmd->add_flag("--inject-adjoint-fault", o.fault_adjoint,
                "Testing hook: flip one sign in the adjoint formula")
      ->group("");  // hidden
}

std::string config_json(const CommonOpts& o) {
  json j{{"field", o.field},   {"polarity", o.polarity}, {"samples", o.samples},
         {"seed", o.seed},     {"jobs", o.jobs},         {"fault_adjoint", o.fault_adjoint}};
  if (!o.checks.empty()) j["checks"] = o.checks;
  return j.dump();
}

int exit_code_of(octplane_status st) {
  switch (st) {
    case OCTPLANE_OK: return 0;
    case OCTPLANE_ERR_CHECKS_FAILED: return 1;
    case OCTPLANE_ERR_CONFIG: return 2;
    default: return 3;
  }
}

// Writes through a temporary file and renames into place.
bool write_atomically(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return false;
    f << text;
    if (!f.good()) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  if (!write_atomically(out_path, text + "\n")) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 3;
  }
  return 0;
}

void print_summary(const std::string& report_text) {
  json report = json::parse(report_text, nullptr, false);
  if (report.is_discarded()) return;
  for (const auto& r : report["results"]) {
    std::string status = r.value("skipped", false)
                             ? "skip (" + r.value("reason", std::string()) + ")"
                             : (r["pass"].get<bool>() ? "pass" : "FAIL");
    std::cerr << "  " << r["check"].get<std::string>() << ": " << status << "\n";
  }
}

struct CtxGuard {
  octplane_ctx* ctx = nullptr;
  ~CtxGuard() { octplane_ctx_destroy(ctx); }
};

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { octplane_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of octonion plane polarities and their Moufang sets"};
  app.require_subcommand(1);

  CommonOpts verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Run the configured check suites");
  add_common(verify, verify_opts);

  CommonOpts points_opts;
  int count = 10;
  CLI::App* points =
      app.add_subcommand("absolute-points", "Emit absolute points of the polarity");
  add_common(points, points_opts);
  points->add_option("--count", count, "How many distinct points to emit")
      ->capture_default_str();

  std::string table_field = "q";
  std::string table_out;
  CLI::App* table = app.add_subcommand("table", "Export the structure-constant table as CSV");
  table->add_option("--field", table_field, "Ground field: q | qsqrt2 | f2t")
      ->capture_default_str();
  table->add_option("--out", table_out, "Write the CSV to this file (atomically)");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    CtxGuard ctx;
    octplane_status st = octplane_ctx_create(config_json(verify_opts).c_str(), &ctx.ctx);
    if (st != OCTPLANE_OK) {
      std::cerr << "error: " << octplane_last_error(nullptr) << "\n";
      return exit_code_of(st);
    }
    StrGuard report;
    st = octplane_run_checks(ctx.ctx, &report.s);
    if (st != OCTPLANE_OK && st != OCTPLANE_ERR_CHECKS_FAILED) {
      std::cerr << "error: " << octplane_last_error(ctx.ctx) << "\n";
      return exit_code_of(st);
    }
    print_summary(report.s);
    int rc = emit(report.s, verify_opts.out);
    return rc != 0 ? rc : exit_code_of(st);
  }

  if (points->parsed()) {
    CtxGuard ctx;
    octplane_status st = octplane_ctx_create(config_json(points_opts).c_str(), &ctx.ctx);
    if (st != OCTPLANE_OK) {
      std::cerr << "error: " << octplane_last_error(nullptr) << "\n";
      return exit_code_of(st);
    }
    StrGuard out;
    st = octplane_absolute_points(ctx.ctx, uint32_t(count), &out.s);
    if (st != OCTPLANE_OK) {
      std::cerr << "error: " << octplane_last_error(ctx.ctx) << "\n";
      return exit_code_of(st);
    }
    return emit(out.s, points_opts.out);
  }

  if (table->parsed()) {
    StrGuard csv;
    octplane_status st = octplane_structure_table_csv(table_field.c_str(), &csv.s);
    if (st != OCTPLANE_OK) {
      std::cerr << "error: " << octplane_last_error(nullptr) << "\n";
      return exit_code_of(st);
    }
    return emit(csv.s, table_out);
  }

  return 2;
}
