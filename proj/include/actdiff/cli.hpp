#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace actdiff {

/// Flag-level overrides applied onto the config JSON before parsing and
/// hashing (flags win over file keys).
struct CliOverrides {
  std::optional<std::int64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<bool> denoise_last;
  std::optional<double> dt;       // mapped to sampler.n_steps = round(t_f / dt)
  std::optional<int> n_steps;
  std::optional<int> threads;
};

nlohmann::json apply_overrides(nlohmann::json config, const CliOverrides& o);

void cmd_gen_data(const nlohmann::json& config_json);
void cmd_train(const nlohmann::json& config_json, const std::optional<std::string>& resume_from);
void cmd_sample(const nlohmann::json& config_json, bool analytic,
                const std::optional<std::string>& checkpoint_path);
void cmd_eval(const nlohmann::json& config_json, const std::vector<std::string>& sample_paths,
              const std::vector<std::string>& reference_paths);
void cmd_theory(const nlohmann::json& config_json);

}  // namespace actdiff
