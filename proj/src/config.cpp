#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "errors.hpp"

namespace lfsr {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("invalid integer for " + key + ": '" + value + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  double out = 0.0;
  if (!(in >> out) || !(in >> std::ws).eof())
    throw ConfigError("invalid number for " + key + ": '" + value + "'");
  return out;
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

PipelineConfig RunConfig::resolved() const {
  PipelineConfig out = pipeline;
  out.tile_side = tile_side.value_or(default_tile_side(pipeline.alpha));
  return out;
}

WarpVariant parse_variant(const std::string& name) {
  if (name == "sq" || name == "SQ") return WarpVariant::SQ;
  if (name == "dr" || name == "DR") return WarpVariant::DR;
  throw ConfigError("variant must be 'sq' or 'dr', got '" + name + "'");
}

const char* variant_name(WarpVariant v) { return v == WarpVariant::SQ ? "sq" : "dr"; }

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto& p = cfg.pipeline;
  if (key == "alpha") p.alpha = parse_int(key, value);
  else if (key == "lambda2") p.solver.lambda2 = parse_double(key, value);
  else if (key == "lambda3") p.solver.lambda3 = parse_double(key, value);
  else if (key == "beta") p.solver.beta = parse_double(key, value);
  else if (key == "window") p.graph.window = parse_int(key, value);
  else if (key == "patch_side") p.graph.patch_side = parse_int(key, value);
  else if (key == "sigma") p.graph.sigma = parse_double(key, value);
  else if (key == "outer_iters") p.solver.outer_iters = parse_int(key, value);
  else if (key == "ppa_iters") p.solver.ppa_iters = parse_int(key, value);
  else if (key == "ppa_tol") p.solver.ppa_tol = parse_double(key, value);
  else if (key == "cg_tol") p.solver.cg_tol = parse_double(key, value);
  else if (key == "cg_max_iters") p.solver.cg_max_iters = parse_int(key, value);
  else if (key == "tile_side") cfg.tile_side = parse_int(key, value);
  else if (key == "tile_overlap") p.tile_overlap = parse_int(key, value);
  else if (key == "variant") p.variant = parse_variant(value);
  else if (key == "crop_border") cfg.crop_border = parse_int(key, value);
  else if (key == "threads") p.solver.threads = parse_int(key, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

std::string get_config_value(const RunConfig& cfg, const std::string& key) {
  const auto& p = cfg.pipeline;
  if (key == "alpha") return std::to_string(p.alpha);
  if (key == "lambda2") return format_double(p.solver.lambda2);
  if (key == "lambda3") return format_double(p.solver.lambda3);
  if (key == "beta") return format_double(p.solver.beta);
  if (key == "window") return std::to_string(p.graph.window);
  if (key == "patch_side") return std::to_string(p.graph.patch_side);
  if (key == "sigma") return format_double(p.graph.sigma);
  if (key == "outer_iters") return std::to_string(p.solver.outer_iters);
  if (key == "ppa_iters") return std::to_string(p.solver.ppa_iters);
  if (key == "ppa_tol") return format_double(p.solver.ppa_tol);
  if (key == "cg_tol") return format_double(p.solver.cg_tol);
  if (key == "cg_max_iters") return std::to_string(p.solver.cg_max_iters);
  if (key == "tile_side") return std::to_string(cfg.resolved().tile_side);
  if (key == "tile_overlap") return std::to_string(p.tile_overlap);
  if (key == "variant") return variant_name(p.variant);
  if (key == "crop_border") return std::to_string(cfg.crop_border);
  if (key == "threads") return std::to_string(p.solver.threads);
  throw ConfigError("unknown configuration key '" + key + "'");
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    try {
      set_config_value(cfg, trim(std::string_view(body).substr(0, eq)),
                       trim(std::string_view(body).substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.resolved().validate();
  if (cfg.crop_border < 0) throw ConfigError("crop_border must be >= 0");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration " + path.string());
  try {
    return parse_run_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_text(const RunConfig& cfg) {
  static const char* keys[] = {"alpha",     "lambda2",     "lambda3",      "beta",
                               "window",    "patch_side",  "sigma",        "outer_iters",
                               "ppa_iters", "ppa_tol",     "cg_tol",       "cg_max_iters",
                               "tile_side", "tile_overlap", "variant",     "crop_border"};
  std::string out;
  for (const char* k : keys) out += std::string(k) + " = " + get_config_value(cfg, k) + "\n";
  return out;
}

}  // namespace lfsr
