#include "lfsr/lfsr.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "config.hpp"
#include "degrade.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "io.hpp"
#include "pipeline.hpp"
#include "warp.hpp"

struct lfsr_lightfield {
  lfsr::Dataset data;
};

struct lfsr_config {
  lfsr::RunConfig cfg;
};

struct lfsr_report {
  lfsr::SolveReport report;
};

struct lfsr_psnr {
  lfsr::PsnrReport report;
};

namespace {

thread_local std::string last_error;

lfsr_status fail(lfsr_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
lfsr_status guarded(Fn&& fn) {
  try {
    fn();
    return LFSR_OK;
  } catch (const lfsr::DomainError& e) {
    return fail(LFSR_ERR_DOMAIN, e.what());
  } catch (const lfsr::ConfigError& e) {
    return fail(LFSR_ERR_CONFIG, e.what());
  } catch (const lfsr::IoError& e) {
    return fail(LFSR_ERR_IO, e.what());
  } catch (const lfsr::NumericalError& e) {
    return fail(LFSR_ERR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LFSR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LFSR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LFSR_ERR_INTERNAL, "unknown error");
  }
}

lfsr_status null_argument(const char* what) {
  return fail(LFSR_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

lfsr_status copy_string(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || capacity < s.size() + 1)
    return buf ? fail(LFSR_ERR_INVALID_ARGUMENT, "buffer too small") : LFSR_OK;
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return LFSR_OK;
}

}  // namespace

extern "C" {

const char* lfsr_last_error(void) { return last_error.c_str(); }

const char* lfsr_status_string(lfsr_status status) {
  switch (status) {
    case LFSR_OK: return "ok";
    case LFSR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LFSR_ERR_DOMAIN: return "domain error";
    case LFSR_ERR_CONFIG: return "configuration error";
    case LFSR_ERR_IO: return "I/O error";
    case LFSR_ERR_NUMERICAL: return "numerical error";
    case LFSR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

lfsr_status lfsr_lightfield_load(const char* dir, lfsr_lightfield** out) {
  if (!dir || !out) return null_argument("dir and out");
  return guarded([&] { *out = new lfsr_lightfield{lfsr::load_lightfield(dir)}; });
}

lfsr_status lfsr_lightfield_save(const lfsr_lightfield* lf, const char* dir) {
  if (!lf || !dir) return null_argument("lf and dir");
  return guarded([&] { lfsr::save_lightfield(lf->data, dir); });
}

lfsr_status lfsr_lightfield_create(int M, int rows, int cols, int channels, int bit_depth,
                                   const double* data, lfsr_lightfield** out) {
  if (!data || !out) return null_argument("data and out");
  return guarded([&] {
    if (channels != 1 && channels != 3) throw lfsr::DomainError("channels must be 1 or 3");
    if (bit_depth != 8 && bit_depth != 16) throw lfsr::DomainError("bit_depth must be 8 or 16");
    const lfsr::LightFieldShape shape{M, rows, cols};
    if (M < 1 || rows < 1 || cols < 1) throw lfsr::DomainError("dimensions must be positive");
    lfsr::Dataset ds;
    ds.bit_depth = bit_depth;
    for (int c = 0; c < channels; ++c) {
      const double* begin = data + c * shape.size();
      lfsr::LightField lf(shape, std::vector<double>(begin, begin + shape.size()));
      lf.validate_unit_range();
      ds.channels.push_back(std::move(lf));
    }
    *out = new lfsr_lightfield{std::move(ds)};
  });
}

lfsr_status lfsr_lightfield_shape(const lfsr_lightfield* lf, int* M, int* rows, int* cols,
                                  int* channels) {
  if (!lf) return null_argument("lf");
  const auto& s = lf->data.shape();
  if (M) *M = s.M;
  if (rows) *rows = s.rows;
  if (cols) *cols = s.cols;
  if (channels) *channels = static_cast<int>(lf->data.channels.size());
  return LFSR_OK;
}

lfsr_status lfsr_lightfield_bit_depth(const lfsr_lightfield* lf, int* bit_depth) {
  if (!lf || !bit_depth) return null_argument("lf and bit_depth");
  *bit_depth = lf->data.bit_depth;
  return LFSR_OK;
}

lfsr_status lfsr_lightfield_copy_data(const lfsr_lightfield* lf, double* data, size_t capacity) {
  if (!lf || !data) return null_argument("lf and data");
  const std::size_t n = lf->data.shape().size();
  if (capacity < n * lf->data.channels.size())
    return fail(LFSR_ERR_INVALID_ARGUMENT, "buffer too small");
  for (std::size_t c = 0; c < lf->data.channels.size(); ++c)
    std::memcpy(data + c * n, lf->data.channels[c].data().data(), n * sizeof(double));
  return LFSR_OK;
}

void lfsr_lightfield_free(lfsr_lightfield* lf) { delete lf; }

lfsr_status lfsr_degrade(const lfsr_lightfield* lf, int alpha, lfsr_lightfield** out) {
  if (!lf || !out) return null_argument("lf and out");
  return guarded([&] {
    lfsr::Dataset ds;
    ds.bit_depth = lf->data.bit_depth;
    for (const auto& ch : lf->data.channels) ds.channels.push_back(lfsr::degrade_lightfield(ch, alpha));
    *out = new lfsr_lightfield{std::move(ds)};
  });
}

lfsr_status lfsr_config_create(lfsr_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new lfsr_config{}; });
}

lfsr_status lfsr_config_load(const char* path, lfsr_config** out) {
  if (!path || !out) return null_argument("path and out");
  return guarded([&] { *out = new lfsr_config{lfsr::load_run_config(path)}; });
}

lfsr_status lfsr_config_set(lfsr_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_argument("cfg, key and value");
  return guarded([&] {
    lfsr::RunConfig next = cfg->cfg;
    lfsr::set_config_value(next, key, value);
    next.resolved().validate();
    cfg->cfg = std::move(next);
  });
}

lfsr_status lfsr_config_get(const lfsr_config* cfg, const char* key, char* buf, size_t capacity,
                            size_t* needed) {
  if (!cfg || !key) return null_argument("cfg and key");
  std::string value;
  const auto st = guarded([&] { value = lfsr::get_config_value(cfg->cfg, key); });
  if (st != LFSR_OK) return st;
  return copy_string(value, buf, capacity, needed);
}

void lfsr_config_free(lfsr_config* cfg) { delete cfg; }

lfsr_status lfsr_super_resolve(const lfsr_lightfield* lo, const lfsr_config* cfg,
                               lfsr_lightfield** out, lfsr_report** report) {
  if (!lo || !cfg || !out) return null_argument("lo, cfg and out");
  return guarded([&] {
    const auto pipeline = cfg->cfg.resolved();
    lfsr::SolveReport rep;
    lfsr::Dataset ds;
    ds.bit_depth = lo->data.bit_depth;
    if (lo->data.channels.size() == 1) {
      ds.channels.push_back(lfsr::super_resolve_tiled(lo->data.channels[0], pipeline, &rep));
    } else {
      auto color = lfsr::super_resolve_color(lo->data.color(), pipeline, &rep);
      for (auto& ch : color.rgb) ds.channels.push_back(std::move(ch));
    }
    *out = new lfsr_lightfield{std::move(ds)};
    if (report) *report = new lfsr_report{std::move(rep)};
  });
}

lfsr_status lfsr_report_write(const lfsr_report* report, const char* path) {
  if (!report || !path) return null_argument("report and path");
  return guarded([&] {
    std::ofstream out(path);
    out << report->report.to_text();
    if (!out) throw lfsr::IoError(std::string("cannot write ") + path);
  });
}

lfsr_status lfsr_report_summary(const lfsr_report* report, int* ppa_steps,
                                int* total_cg_iterations, double* final_residual) {
  if (!report) return null_argument("report");
  const auto counts = report->report.cg_iteration_counts();
  if (ppa_steps) *ppa_steps = static_cast<int>(counts.size());
  if (total_cg_iterations) {
    int total = 0;
    for (int c : counts) total += c;
    *total_cg_iterations = total;
  }
  if (final_residual) *final_residual = report->report.final_residual;
  return LFSR_OK;
}

void lfsr_report_free(lfsr_report* report) { delete report; }

lfsr_status lfsr_evaluate(const lfsr_lightfield* recon, const lfsr_lightfield* truth, int crop,
                          lfsr_psnr** out) {
  if (!recon || !truth || !out) return null_argument("recon, truth and out");
  return guarded([&] {
    *out = new lfsr_psnr{lfsr::evaluate_psnr(recon->data.luma(), truth->data.luma(), crop)};
  });
}

lfsr_status lfsr_psnr_view_count(const lfsr_psnr* psnr, int* count) {
  if (!psnr || !count) return null_argument("psnr and count");
  *count = static_cast<int>(psnr->report.views.size());
  return LFSR_OK;
}

lfsr_status lfsr_psnr_view(const lfsr_psnr* psnr, int index, int* s, int* t, double* value) {
  if (!psnr) return null_argument("psnr");
  if (index < 0 || index >= static_cast<int>(psnr->report.views.size()))
    return fail(LFSR_ERR_DOMAIN, "PSNR view index out of range");
  const auto& v = psnr->report.views[index];
  if (s) *s = v.s;
  if (t) *t = v.t;
  if (value) *value = v.psnr;
  return LFSR_OK;
}

lfsr_status lfsr_psnr_stats(const lfsr_psnr* psnr, double* mean, double* variance) {
  if (!psnr) return null_argument("psnr");
  if (mean) *mean = psnr->report.mean;
  if (variance) *variance = psnr->report.variance;
  return LFSR_OK;
}

lfsr_status lfsr_psnr_csv(const lfsr_psnr* psnr, char* buf, size_t capacity, size_t* needed) {
  if (!psnr) return null_argument("psnr");
  return copy_string(psnr->report.to_csv(), buf, capacity, needed);
}

void lfsr_psnr_free(lfsr_psnr* psnr) { delete psnr; }

lfsr_status lfsr_epi_write(const lfsr_lightfield* lf, int s, int x, const char* path) {
  if (!lf || !path) return null_argument("lf and path");
  return guarded([&] {
    const auto epi = lfsr::extract_epi(lf->data.luma(), s, x);
    lfsr::write_png(path, {epi.matrix}, lf->data.bit_depth);
  });
}

lfsr_status lfsr_delta_dump(const lfsr_lightfield* lf, const lfsr_config* cfg, const char* path) {
  if (!lf || !cfg || !path) return null_argument("lf, cfg and path");
  return guarded([&] {
    const auto luma = lf->data.luma();
    const auto& params = cfg->cfg.pipeline.graph;
    params.validate();
    const lfsr::PatchComparator patches(luma, params.patch_side);
    std::vector<lfsr::DeltaField> fields;
    for (int k = 0; k < static_cast<int>(luma.shape().num_views()); ++k)
      fields.push_back(lfsr::estimate_delta(patches, k, params));
    std::ofstream out(path);
    lfsr::write_delta_fields(out, luma.shape(), fields);
    if (!out) throw lfsr::IoError(std::string("cannot write ") + path);
  });
}

}  // extern "C"
