#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pipeline.hpp"

namespace lfsr {

// Settings of the `sr` and `eval` commands. Defaults follow the published
// experimental setup.
struct RunConfig {
  PipelineConfig pipeline;
  std::optional<int> tile_side;  // unset: default_tile_side(alpha)
  int crop_border = 15;

  // PipelineConfig with tile_side resolved.
  PipelineConfig resolved() const;
};

// Parses `key = value` lines; `#` starts a comment. Unknown keys and
// malformed values raise ConfigError with the line number.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

// Applies one setting; throws ConfigError for an unknown key or bad value.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& cfg, const std::string& key);

std::string to_text(const RunConfig& cfg);

WarpVariant parse_variant(const std::string& name);
const char* variant_name(WarpVariant v);

}  // namespace lfsr
