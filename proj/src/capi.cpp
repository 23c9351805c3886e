#include "octplane.h"

#include <cstring>
#include <string>

#include "octplane/verify.hpp"

using namespace octplane;
using json = nlohmann::json;

struct octplane_ctx {
  RunConfig config;
  std::string last_error;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(octplane_ctx* ctx, const std::string& msg) {
  if (ctx)
    ctx->last_error = msg;
  else
    t_last_error = msg;
}

octplane_status status_of(const Error& e) {
  switch (e.code()) {
    case Err::ConfigError: return OCTPLANE_ERR_CONFIG;
    case Err::BadInput: return OCTPLANE_ERR_BAD_INPUT;
    case Err::DivisionByZero:
    case Err::OutsideDomain:
    case Err::ZeroElement:
    case Err::OutsideSubspace:
    case Err::WrongType:
    case Err::UnsupportedField:
    case Err::AlgebraMismatch:
    case Err::FieldMismatch:
    case Err::FrameMismatch: return OCTPLANE_ERR_DOMAIN;
    default: return OCTPLANE_ERR_INTERNAL;
  }
}

template <typename Fn>
octplane_status guarded(octplane_ctx* ctx, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    set_error(ctx, e.what());
    return status_of(e);
  } catch (const json::exception& e) {
    set_error(ctx, std::string("bad json: ") + e.what());
    return OCTPLANE_ERR_BAD_INPUT;
  } catch (const std::exception& e) {
    set_error(ctx, e.what());
    return OCTPLANE_ERR_INTERNAL;
  }
}

RunConfig config_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(Err::ConfigError, "configuration must be a JSON object");
  if (!j.contains("field")) fail(Err::ConfigError, "configuration needs a 'field'");
  std::vector<std::string> checks;
  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) checks.push_back(c.get<std::string>());
  }
  RunConfig cfg = RunConfig::make(
      j.at("field").get<std::string>(), j.value("polarity", std::string("all")),
      j.value("samples", 1000), j.value("seed", uint64_t(42)), checks, j.value("jobs", 1));
  cfg.fault_adjoint = j.value("fault_adjoint", false);
  return cfg;
}

}  // namespace

extern "C" {

const char* octplane_version(void) { return "0.1.0"; }

octplane_status octplane_ctx_create(const char* config_json, octplane_ctx** out_ctx) {
  if (!config_json || !out_ctx) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  *out_ctx = nullptr;
  return guarded(nullptr, [&] {
    auto ctx = std::make_unique<octplane_ctx>();
    ctx->config = config_from_json(config_json);
    *out_ctx = ctx.release();
    return OCTPLANE_OK;
  });
}

void octplane_ctx_destroy(octplane_ctx* ctx) { delete ctx; }

const char* octplane_last_error(const octplane_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : t_last_error.c_str();
}

octplane_status octplane_run_checks(octplane_ctx* ctx, char** out_report_json) {
  if (!ctx || !out_report_json) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(ctx, [&] {
    json report = run_verify(ctx->config);
    *out_report_json = dup_string(report.dump(2));
    if (!report_all_passed(report)) {
      ctx->last_error = "one or more checks failed";
      return OCTPLANE_ERR_CHECKS_FAILED;
    }
    return OCTPLANE_OK;
  });
}

octplane_status octplane_absolute_points(octplane_ctx* ctx, uint32_t count, char** out_json) {
  if (!ctx || !out_json) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(ctx, [&] {
    json points = absolute_points(ctx->config, int(count));
    *out_json = dup_string(points.dump(2));
    return OCTPLANE_OK;
  });
}

octplane_status octplane_octonion_multiply(const char* x_json, const char* y_json,
                                           char** out_json) {
  if (!x_json || !y_json || !out_json) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(nullptr, [&] {
    Octonion x = Octonion::from_json(json::parse(x_json));
    Octonion y = Octonion::from_json(json::parse(y_json));
    *out_json = dup_string((x * y).to_json().dump());
    return OCTPLANE_OK;
  });
}

octplane_status octplane_polarity_apply_point(octplane_ctx* ctx, const char* point_json,
                                              char** out_line_json) {
  if (!ctx || !point_json || !out_line_json) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(ctx, [&] {
    if (ctx->config.types.empty())
      fail(Err::ConfigError, "no polarity type applies to this field");
    Polarity psi =
        Polarity::of_type(ctx->config.types.front(), Algebra::for_field(ctx->config.field));
    PlanePoint p = PlanePoint::from_json(json::parse(point_json));
    *out_line_json = dup_string(psi.apply(p).to_json().dump());
    return OCTPLANE_OK;
  });
}

octplane_status octplane_polarity_apply_line(octplane_ctx* ctx, const char* line_json,
                                             char** out_point_json) {
  if (!ctx || !line_json || !out_point_json) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(ctx, [&] {
    if (ctx->config.types.empty())
      fail(Err::ConfigError, "no polarity type applies to this field");
    Polarity psi =
        Polarity::of_type(ctx->config.types.front(), Algebra::for_field(ctx->config.field));
    PlaneLine line = PlaneLine::from_json(json::parse(line_json));
    *out_point_json = dup_string(psi.apply(line).to_json().dump());
    return OCTPLANE_OK;
  });
}

octplane_status octplane_structure_table_csv(const char* field, char** out_csv) {
  if (!field || !out_csv) {
    t_last_error = "null argument";
    return OCTPLANE_ERR_BAD_INPUT;
  }
  return guarded(nullptr, [&] {
    AlgebraPtr alg = Algebra::for_field(field_from_name(field));
    *out_csv = dup_string(alg->table_csv());
    return OCTPLANE_OK;
  });
}

void octplane_string_free(char* s) { std::free(s); }

}  // extern "C"
