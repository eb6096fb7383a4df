#pragma once

#include <map>
#include <string>

#include "teleopt/runner.hpp"

namespace teleopt {

/// 9 significant digits, the precision every CSV uses.
std::string format_real(double v);

/// Apply one "key=value" setting; throws a descriptive error naming the key
/// on unknown keys or out-of-range values.
void apply_config_entry(SweepConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value file, '#' comments; missing keys keep their defaults.
SweepConfig parse_config_file(const std::string& path);

/// Header noise,placement,variant,p,f_baseline,f_optimized,seed,iterations
/// plus the 27 parameter columns; UTF-8, LF, 9 significant digits.
void write_csv(const ScenarioResult& result, const std::string& path);

void write_baseline_csv(const std::vector<std::pair<double, double>>& curve,
                        const std::string& path);

void write_compare_csv(const std::vector<CompareRow>& rows, const std::string& path);
void write_compare_text(const std::vector<CompareRow>& rows, const std::string& path);

void write_reconstruct_csv(const std::vector<ReconRow>& rows, const std::string& path);

/// Reproducibility metadata emitted alongside every sweep.
void write_manifest(const ScenarioResult& result, const std::string& path);

}  // namespace teleopt
