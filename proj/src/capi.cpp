#include "hypstrip/hypstrip.h"

#include <string>

#include "hypstrip/error.hpp"
#include "hypstrip/harness.hpp"

struct hs_surface {
  hypstrip::MarkedSurface s;
};

struct hs_config {
  hypstrip::ExperimentConfig c;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_report;

hs_status to_status(hypstrip::Errc e) {
  // Errc and hs_status list the codes in the same order, offset by HS_OK.
  return static_cast<hs_status>(static_cast<int>(e) + 1);
}

template <typename F>
hs_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return HS_OK;
  } catch (const hypstrip::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return HS_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return HS_INTERNAL_ERROR;
  }
}

hs_status null_argument(const char* what) {
  last_error = std::string("InvalidArgument: null ") + what;
  return HS_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* hs_status_name(hs_status status) {
  if (status == HS_OK) return "Ok";
  if (status == HS_INTERNAL_ERROR) return "InternalError";
  if (status < HS_OK || status > HS_INTERNAL_ERROR) return "Unknown";
  return hypstrip::errc_name(static_cast<hypstrip::Errc>(static_cast<int>(status) - 1));
}

const char* hs_last_error(void) { return last_error.c_str(); }

const char* hs_version(void) { return "0.1.0"; }

hs_status hs_pants_create(double l1, double l2, double l3, hs_surface** out) {
  if (!out) return null_argument("output pointer");
  return guard([&] { *out = new hs_surface{hypstrip::pants_from_lengths(l1, l2, l3)}; });
}

hs_status hs_torus_create(double x, double y, double z, hs_surface** out) {
  if (!out) return null_argument("output pointer");
  return guard([&] { *out = new hs_surface{hypstrip::torus_from_traces(x, y, z)}; });
}

void hs_surface_free(hs_surface* s) { delete s; }

hs_status hs_surface_label(const hs_surface* s, const char** label) {
  if (!s || !label) return null_argument("argument");
  *label = s->s.label().c_str();
  return HS_OK;
}

hs_status hs_curve_length(const hs_surface* s, const char* word, double* length) {
  if (!s || !word || !length) return null_argument("argument");
  return guard([&] { *length = hypstrip::curve_length(s->s, hypstrip::GroupWord::parse(word)); });
}

hs_status hs_arc_length(const hs_surface* s, const char* arc, double* length) {
  if (!s || !arc || !length) return null_argument("argument");
  return guard([&] { *length = hypstrip::arc_length(s->s, hypstrip::arc_by_name(s->s.topology(), arc)); });
}

hs_status hs_peel(const hs_surface* s, const char* const* arcs, size_t n_arcs, double eps, int wall_radius,
                  hs_surface** out) {
  if (!s || (!arcs && n_arcs > 0) || !out) return null_argument("argument");
  return guard([&] {
    std::vector<hypstrip::ArcClass> list;
    for (size_t i = 0; i < n_arcs; ++i) {
      if (!arcs[i]) throw hypstrip::Error(hypstrip::Errc::InvalidArgument, "null arc name");
      list.push_back(hypstrip::arc_by_name(s->s.topology(), arcs[i]));
    }
    if (list.empty()) throw hypstrip::Error(hypstrip::Errc::InvalidArgument, "no arcs to peel");
    hypstrip::PeelConfig cfg;
    cfg.eps = eps;
    cfg.wall_radius = wall_radius;
    *out = new hs_surface{hypstrip::peel(s->s, list, cfg)};
  });
}

hs_status hs_weak_metric(const hs_surface* x, const hs_surface* y, char kind, int bound, double* value) {
  if (!x || !y || !value) return null_argument("argument");
  return guard([&] {
    const auto k = hypstrip::parse_metric_kind(std::string(1, kind));
    *value = hypstrip::weak_metric(x->s, y->s, k, hypstrip::EnumerationBound(bound)).value;
  });
}

hs_status hs_config_load(const char* path, hs_config** out) {
  if (!path || !out) return null_argument("argument");
  return guard([&] { *out = new hs_config{hypstrip::load_config(path)}; });
}

hs_status hs_config_parse(const char* json, hs_config** out) {
  if (!json || !out) return null_argument("argument");
  return guard([&] { *out = new hs_config{hypstrip::parse_config(json)}; });
}

void hs_config_free(hs_config* c) { delete c; }

hs_status hs_config_set_out(hs_config* c, const char* dir) {
  if (!c || !dir) return null_argument("argument");
  c->c.out = dir;
  return HS_OK;
}

hs_status hs_config_set_seed(hs_config* c, uint64_t seed) {
  if (!c) return null_argument("config");
  c->c.seed = seed;
  return HS_OK;
}

hs_status hs_config_set_bound(hs_config* c, int bound) {
  if (!c) return null_argument("config");
  if (bound < 1) {
    last_error = "ConfigError: field 'bound': must be >= 1";
    return HS_CONFIG_ERROR;
  }
  c->c.bound = bound;
  return HS_OK;
}

hs_status hs_config_set_eps(hs_config* c, double eps) {
  if (!c) return null_argument("config");
  if (!(eps > 0)) {
    last_error = "ConfigError: field 'peel.eps': must be positive";
    return HS_CONFIG_ERROR;
  }
  c->c.peel.eps = eps;
  return HS_OK;
}

hs_status hs_run(const char* command, const hs_config* c, int* exit_code) {
  if (!command || !c || !exit_code) return null_argument("argument");
  last_report.clear();
  *exit_code = 1;
  return guard([&] {
    const hypstrip::RunResult r = hypstrip::run(command, c->c);
    last_report = r.report;
    *exit_code = static_cast<int>(r.exit_code);
  });
}

const char* hs_last_report(void) { return last_report.c_str(); }

}  // extern "C"
