#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "marketreg/diagnostics.hpp"
#include "marketreg/ingest.hpp"

namespace marketreg::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitEmptyInput = 2,     // nothing left after filtering, or a degenerate model
  kExitBadInput = 3,       // unreadable file, schema or parse error
  kExitNoConforming = 4,   // elimination could not reach the significance level
};

enum class ReportFormat { text, json, both };

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  double alpha = 0.1;
  BreuschPaganVariant bp_variant = BreuschPaganVariant::koenker;
  FilterConfig filter;
  ReportFormat format = ReportFormat::both;
  double confidence = 0.95;
  bool select = false;  // diagnose the eliminated model instead of the full one
  std::optional<std::uint64_t> seed;
  std::size_t n = 105;
};

// Each command computes everything before writing any file, so a failing
// run leaves the output directory untouched.
int cmd_fit(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_select(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_diagnose(const PipelineConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const PipelineConfig& config, std::ostream& out, std::ostream& err);

// Parses `marketreg <fit|select|diagnose|synth> [flags]` and dispatches.
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace marketreg::cli
