#include "sopifrnn.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "sopf/error.hpp"
#include "sopf/harness.hpp"

struct sopifrnn_config {
  sopf::ExperimentConfig inner;
};

struct sopifrnn_report {
  sopf::RunReport inner;
  std::vector<std::pair<std::string, double>> fvals;  // stable iteration order
};

namespace {

thread_local std::string g_last_error;

sopifrnn_status to_status(sopf::ErrorCode code) {
  switch (code) {
    case sopf::ErrorCode::invalid_argument: return SOPIFRNN_INVALID_ARGUMENT;
    case sopf::ErrorCode::unsupported_order: return SOPIFRNN_UNSUPPORTED_ORDER;
    case sopf::ErrorCode::resource_limit: return SOPIFRNN_RESOURCE_LIMIT;
    case sopf::ErrorCode::sampling_failure: return SOPIFRNN_SAMPLING_FAILURE;
    case sopf::ErrorCode::degenerate_reference: return SOPIFRNN_DEGENERATE_REFERENCE;
    case sopf::ErrorCode::divergence: return SOPIFRNN_DIVERGENCE;
    case sopf::ErrorCode::io_error: return SOPIFRNN_IO_ERROR;
  }
  return SOPIFRNN_UNKNOWN;
}

template <typename Fn>
sopifrnn_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SOPIFRNN_OK;
  } catch (const sopf::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SOPIFRNN_UNKNOWN;
  }
}

sopifrnn_status require_arg(bool ok, const char* what) {
  if (ok) return SOPIFRNN_OK;
  g_last_error = what;
  return SOPIFRNN_INVALID_ARGUMENT;
}

sopifrnn_report* wrap_report(sopf::RunReport&& report) {
  auto* out = new sopifrnn_report{std::move(report), {}};
  for (const auto& [key, value] : out->inner.fvals) out->fvals.push_back({key, value});
  return out;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sopifrnn_last_error(void) { return g_last_error.c_str(); }

sopifrnn_status sopifrnn_config_load(const char* path, sopifrnn_config** out) {
  if (auto s = require_arg(path && out, "null path or out pointer")) return s;
  return guarded([&] {
    *out = new sopifrnn_config{sopf::ExperimentConfig::from_json_file(path)};
  });
}

sopifrnn_status sopifrnn_config_parse(const char* json_text, sopifrnn_config** out) {
  if (auto s = require_arg(json_text && out, "null text or out pointer")) return s;
  return guarded([&] {
    *out = new sopifrnn_config{sopf::ExperimentConfig::from_json_string(json_text)};
  });
}

void sopifrnn_config_free(sopifrnn_config* config) { delete config; }

sopifrnn_status sopifrnn_config_set_seed(sopifrnn_config* config, uint64_t seed) {
  if (auto s = require_arg(config != nullptr, "null config")) return s;
  config->inner.outer_seed = seed;
  config->inner.inner_seed = seed;
  return SOPIFRNN_OK;
}

sopifrnn_status sopifrnn_config_set_output_dir(sopifrnn_config* config, const char* dir) {
  if (auto s = require_arg(config && dir, "null config or dir")) return s;
  config->inner.out_dir = dir;
  return SOPIFRNN_OK;
}

sopifrnn_status sopifrnn_config_to_json(const sopifrnn_config* config, char** out) {
  if (auto s = require_arg(config && out, "null config or out pointer")) return s;
  return guarded([&] { *out = copy_string(config->inner.to_json_string()); });
}

void sopifrnn_string_free(char* text) { delete[] text; }

sopifrnn_status sopifrnn_run_solve(const sopifrnn_config* config, sopifrnn_report** out) {
  if (auto s = require_arg(config && out, "null config or out pointer")) return s;
  return guarded([&] { *out = wrap_report(sopf::run_solve(config->inner)); });
}

sopifrnn_status sopifrnn_run_optimize(const sopifrnn_config* config, sopifrnn_report** out) {
  if (auto s = require_arg(config && out, "null config or out pointer")) return s;
  return guarded([&] { *out = wrap_report(sopf::run_optimize(config->inner)); });
}

sopifrnn_status sopifrnn_run_sweep(const sopifrnn_config* config, sopifrnn_report** out) {
  if (auto s = require_arg(config && out, "null config or out pointer")) return s;
  return guarded([&] { *out = wrap_report(sopf::run_sweep(config->inner)); });
}

sopifrnn_status sopifrnn_run_dbench(const sopifrnn_config* config, sopifrnn_report** out) {
  if (auto s = require_arg(config && out, "null config or out pointer")) return s;
  return guarded([&] { *out = wrap_report(sopf::run_derivative_bench(config->inner)); });
}

void sopifrnn_report_free(sopifrnn_report* report) { delete report; }

size_t sopifrnn_report_num_fvals(const sopifrnn_report* report) {
  return report ? report->fvals.size() : 0;
}

const char* sopifrnn_report_fval_key(const sopifrnn_report* report, size_t index) {
  if (!report || index >= report->fvals.size()) return nullptr;
  return report->fvals[index].first.c_str();
}

double sopifrnn_report_fval(const sopifrnn_report* report, size_t index) {
  if (!report || index >= report->fvals.size()) return 0.0 / 0.0;
  return report->fvals[index].second;
}

double sopifrnn_report_residual_norm(const sopifrnn_report* report) {
  return report ? report->inner.residual_norm : 0.0 / 0.0;
}

double sopifrnn_report_wall_seconds(const sopifrnn_report* report) {
  return report ? report->inner.wall_seconds : 0.0 / 0.0;
}

size_t sopifrnn_report_num_artifacts(const sopifrnn_report* report) {
  return report ? report->inner.artifacts.size() : 0;
}

const char* sopifrnn_report_artifact(const sopifrnn_report* report, size_t index) {
  if (!report || index >= report->inner.artifacts.size()) return nullptr;
  return report->inner.artifacts[index].c_str();
}

sopifrnn_status sopifrnn_report_to_json(const sopifrnn_report* report, char** out) {
  if (auto s = require_arg(report && out, "null report or out pointer")) return s;
  return guarded([&] {
    std::ostringstream json;
    json.precision(17);
    json << "{\n  \"fvals\": {";
    for (size_t i = 0; i < report->fvals.size(); ++i) {
      json << (i ? ", " : "") << "\"" << report->fvals[i].first
           << "\": " << report->fvals[i].second;
    }
    json << "},\n  \"residual_norm\": " << report->inner.residual_norm
         << ",\n  \"wall_seconds\": " << report->inner.wall_seconds << "\n}";
    *out = copy_string(json.str());
  });
}

}  // extern "C"
