#include "marketreg/cli/commands.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "marketreg/cli/report.hpp"
#include "marketreg/cli/synth.hpp"
#include "marketreg/errors.hpp"
#include "marketreg/features.hpp"
#include "marketreg/ols.hpp"
#include "marketreg/selection.hpp"

namespace marketreg::cli {
namespace {

// Output files keyed by name; written together once a command has succeeded.
using Outputs = std::map<std::string, std::string>;

struct Prepared {
  std::vector<PlayerRecord> records;
  FilterResult filtered;
  EncodedDataset data;
};

// Raised for conditions that map straight to an exit code.
struct CommandFailure {
  int code;
  std::string message;
};

Prepared prepare(const PipelineConfig& config) {
  std::ifstream in(config.input, std::ios::binary);
  if (!in) throw CommandFailure{kExitBadInput, "cannot open input file " + config.input.string()};
  Prepared p;
  p.records = parse_players_csv(in);
  p.filtered = apply_filters(p.records, config.filter);
  if (p.filtered.accepted.empty())
    throw CommandFailure{kExitEmptyInput, "no records remain after filtering"};
  if (p.filtered.accepted.size() < 2)
    throw CommandFailure{kExitEmptyInput, "only one record remains after filtering"};
  p.data = encode_dataset(p.filtered.accepted);
  return p;
}

FitOptions fit_options(const PipelineConfig& config) {
  FitOptions o;
  o.confidence_level = config.confidence;
  return o;
}

void write_outputs(const std::filesystem::path& dir, const Outputs& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << content;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_fit_outputs(Outputs& files, const PipelineConfig& config, const Prepared& p,
                     const FitResult& fit) {
  if (config.format != ReportFormat::json) files["summary.txt"] = render_summary(fit);
  if (config.format != ReportFormat::text) {
    Json j;
    j["input"] = exclusions_to_json(p.records, p.filtered);
    j["design"] = columns_to_json(p.data);
    j["fit"] = fit_to_json(fit);
    files["fit.json"] = dump(j);
  }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const OutOfRange& e) {
    err << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DegenerateModel& e) {
    err << "degenerate model: " << e.what() << '\n';
    return kExitEmptyInput;
  } catch (const InferenceUnavailable& e) {
    err << "degenerate model: " << e.what() << '\n';
    return kExitEmptyInput;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitEmptyInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cmd_fit(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Prepared p = prepare(config);
    const FitResult fit = fit_ols(p.data, fit_options(config));
    Outputs files;
    add_fit_outputs(files, config, p, fit);
    write_outputs(config.out_dir, files);
    out << render_summary(fit);
    return int{kExitOk};
  });
}

int cmd_select(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Prepared p = prepare(config);
    const EliminationTrace trace = backward_eliminate(p.data, config.alpha, fit_options(config));
    Outputs files;
    add_fit_outputs(files, config, p, trace.final_fit);
    files["trace.json"] = dump(trace_to_json(trace));
    write_outputs(config.out_dir, files);
    out << render_summary(trace.final_fit);
    out << "Backward elimination at alpha = " << format_general(config.alpha, 3) << ": "
        << trace.steps.size() << " column(s) removed, " << trace.final_columns.size()
        << " retained\n";
    if (trace.no_conforming_model) {
      err << "no conforming model: the last remaining column has p > alpha\n";
      return int{kExitNoConforming};
    }
    return int{kExitOk};
  });
}

int cmd_diagnose(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Prepared p = prepare(config);
    EncodedDataset data = p.data;
    FitResult fit;
    bool no_conforming = false;
    Json model;
    if (config.select) {
      const EliminationTrace trace =
          backward_eliminate(p.data, config.alpha, fit_options(config));
      data = p.data.select_columns(trace.final_columns);
      fit = trace.final_fit;
      no_conforming = trace.no_conforming_model;
      model["selected"] = true;
      model["alpha"] = config.alpha;
    } else {
      fit = fit_ols(data, fit_options(config));
      model["selected"] = false;
      model["alpha"] = nullptr;
    }
    Json names = Json::array();
    for (std::size_t c : fit.retained_columns()) names.push_back(fit.column_names[c]);
    model["columns"] = std::move(names);
    model["n_obs"] = fit.n_obs;
    model["r_squared"] = fit.r_squared;

    Json j;
    j["model"] = std::move(model);
    Json bp;
    bp["selected_variant"] = to_string(config.bp_variant);
    std::optional<BreuschPaganResult> chosen;
    if (fit.inference_available && fit.rss > 0.0) {
      for (auto v : {BreuschPaganVariant::koenker, BreuschPaganVariant::original}) {
        const BreuschPaganResult r = breusch_pagan(fit, data, v);
        bp[to_string(v)] = breusch_pagan_to_json(r);
        if (v == config.bp_variant) chosen = r;
      }
    } else {
      bp["koenker"] = nullptr;
      bp["original"] = nullptr;
    }
    j["breusch_pagan"] = std::move(bp);

    std::size_t non_bias = 0;
    for (const auto& c : data.columns) non_bias += c.kind != ColumnKind::bias;
    const std::optional<VifReport> vifs =
        non_bias >= 2 ? std::optional<VifReport>(vif(data)) : std::nullopt;
    j["vif"] = vifs ? vif_to_json(*vifs) : Json(nullptr);

    const MapeValue m = mape(fit.response, fit.fitted);
    j["mape"] = {{"percent", m.percent}};

    const PlotSeries series = plot_series(fit);
    Outputs files;
    files["diagnostics.json"] = dump(j);
    files["residuals.csv"] = residuals_csv(series);
    files["measured_predicted.csv"] = measured_predicted_csv(series);
    write_outputs(config.out_dir, files);

    if (chosen) {
      out << "Breusch-Pagan (" << to_string(chosen->variant)
          << "): LM = " << format_fixed(chosen->lm_statistic, 4) << ", df = " << chosen->df
          << ", p = " << format_fixed(chosen->p_value, 4) << '\n';
    } else {
      out << "Breusch-Pagan: unavailable (exact fit or no residual degrees of freedom)\n";
    }
    out << "MAPE: " << format_fixed(m.percent, 2) << "%\n";
    if (vifs) {
      std::size_t high = 0;
      for (const auto& e : vifs->entries) high += e.band == VifBand::high;
      out << "VIF: " << high << " of " << vifs->entries.size() << " column(s) above 5\n";
    }
    if (no_conforming) {
      err << "no conforming model: the last remaining column has p > alpha\n";
      return int{kExitNoConforming};
    }
    return int{kExitOk};
  });
}

int cmd_synth(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.seed) throw CommandFailure{kExitEmptyInput, "synth requires --seed"};
    if (config.n < kMinSynthRows)
      throw CommandFailure{kExitEmptyInput,
                           "synth requires --n >= " + std::to_string(kMinSynthRows)};
    const SynthOutput synth = generate_synthetic(*config.seed, config.n);
    std::ostringstream csv;
    write_players_csv(csv, synth.records);
    Outputs files;
    files["synth.csv"] = csv.str();
    files["synth_truth.json"] = dump(truth_to_json(synth));
    write_outputs(config.out_dir, files);
    out << "wrote " << synth.records.size() << " synthetic players to "
        << (config.out_dir / "synth.csv").string() << '\n';
    return int{kExitOk};
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Market-value regression pipeline for forward players", "marketreg"};
  app.require_subcommand(1);

  PipelineConfig config;
  std::string bp_variant = "koenker";
  std::string format = "both";
  bool keep_mid_season = false;
  std::uint64_t seed = 0;

  auto add_pipeline_flags = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "Player CSV")->required();
    sub->add_option("--out", config.out_dir, "Output directory");
    sub->add_option("--alpha", config.alpha, "Significance level for elimination");
    sub->add_option("--bp-variant", bp_variant, "koenker|original")
        ->check(CLI::IsMember({"koenker", "original"}));
    sub->add_option("--confidence", config.confidence, "Confidence level for intervals");
    sub->add_option("--min-minutes", config.filter.min_minutes, "Minimum minutes played");
    sub->add_option("--min-value", config.filter.min_market_value_m_eur,
                    "Minimum market value (million EUR)");
    sub->add_option("--age-min", config.filter.min_age, "Minimum age");
    sub->add_option("--age-max", config.filter.max_age, "Maximum age");
    sub->add_flag("--keep-mid-season", keep_mid_season, "Keep mid-season transfers");
    sub->add_option("--format", format, "text|json|both")
        ->check(CLI::IsMember({"text", "json", "both"}));
  };

  CLI::App* fit = app.add_subcommand("fit", "Fit OLS on the filtered, encoded data");
  CLI::App* select = app.add_subcommand("select", "Backward elimination at --alpha");
  CLI::App* diagnose = app.add_subcommand("diagnose", "Breusch-Pagan, VIF, MAPE and plot data");
  CLI::App* synth = app.add_subcommand("synth", "Write a seeded synthetic player CSV");
  add_pipeline_flags(fit);
  add_pipeline_flags(select);
  add_pipeline_flags(diagnose);
  diagnose->add_flag("--select", config.select, "Diagnose the model selected at --alpha");
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--n", config.n, "Number of players");
  synth->add_option("--out", config.out_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (synth->parsed() && synth->count("--seed") > 0) config.seed = seed;
  config.bp_variant = parse_bp_variant(bp_variant);
  config.format = format == "text" ? ReportFormat::text
                  : format == "json" ? ReportFormat::json
                                     : ReportFormat::both;
  config.filter.exclude_mid_season_transfers = !keep_mid_season;

  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    err << "error: --alpha must lie in (0, 1)\n";
    return kExitUsage;
  }
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    err << "error: --confidence must lie in (0, 1)\n";
    return kExitUsage;
  }
  try {
    config.filter.validate();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (fit->parsed()) return cmd_fit(config, out, err);
  if (select->parsed()) return cmd_select(config, out, err);
  if (diagnose->parsed()) return cmd_diagnose(config, out, err);
  return cmd_synth(config, out, err);
}

}  // namespace marketreg::cli
