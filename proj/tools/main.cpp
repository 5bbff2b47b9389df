// Copyright 2026 The diaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diaudit/curve.hpp"
#include "diaudit/dataset.hpp"
#include "diaudit/report.hpp"
#include "diaudit/synthetic.hpp"

namespace {

std::vector<std::string> canonical_metrics(
    const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& token : tokens) {
    if (token == "mean") {
      out.push_back("MeanDI");
    } else if (token == "median") {
      out.push_back("MedDI");
    } else if (token == "thresh") {
      out.push_back("ThreshDI");
    } else if (token == "auc") {
      out.push_back("AucDI");
    } else if (token == "pf") {
      out.push_back("PfDI");
    } else if (token == "ks") {
      out.push_back("KS");
    } else {
      throw std::runtime_error(
          "unknown metric '" + token +
          "' (use mean, median, thresh, auc, pf or ks)");
    }
  }
  return out;
}

diaudit::ProportionPrior parse_prior(const std::string& spec) {
  if (spec == "flat") return diaudit::ProportionPrior::flat();
  if (spec.rfind("delta:", 0) == 0) {
    std::size_t consumed = 0;
    const std::string arg = spec.substr(6);
    double p_star = 0.0;
    try {
      p_star = std::stod(arg, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error("cannot parse delta prior location: " + spec);
    }
    if (consumed != arg.size()) {
      throw std::runtime_error("cannot parse delta prior location: " + spec);
    }
    return diaudit::ProportionPrior::delta(p_star);
  }
  // Anything else names a file of 100 weights.
  std::ifstream in(spec);
  if (!in) {
    throw std::runtime_error("cannot open prior weight file " + spec);
  }
  std::vector<double> weights;
  double w = 0.0;
  while (in >> w) weights.push_back(w);
  return diaudit::ProportionPrior::custom(std::move(weights));
}

void write_output(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file " + out_path);
  }
  out << payload;
}

bool has_metric(const std::vector<std::string>& metrics,
                const std::string& name) {
  return std::find(metrics.begin(), metrics.end(), name) != metrics.end();
}

struct IngestArgs {
  std::string input;
  std::string score_col;
  std::vector<std::string> attrs;
  bool intersect = false;
  std::size_t min_group = 1;
};

struct AuditArgs {
  IngestArgs data;
  std::vector<std::string> metric_tokens = {"mean", "median", "auc", "pf"};
  std::string prior_spec = "flat";
  double bound = 0.8;
  std::optional<double> threshold;
  std::string format = "text";
  std::string out;
};

int run_audit(const AuditArgs& args) {
  diaudit::AuditOptions options;
  options.metrics = canonical_metrics(args.metric_tokens);
  options.prior = parse_prior(args.prior_spec);
  options.fairness_bound = args.bound;
  options.threshold = args.threshold;
  options.input = args.data.input;
  options.score_column = args.data.score_col;
  const bool wants_thresh = has_metric(options.metrics, "ThreshDI");
  if (wants_thresh && !options.threshold) {
    throw std::runtime_error("the thresh metric requires --threshold");
  }
  if (!wants_thresh && options.threshold) {
    throw std::runtime_error("--threshold is only used by the thresh metric");
  }

  const auto ds =
      diaudit::ingest_csv(args.data.input, args.data.score_col, args.data.attrs);
  // One report per attribute; --intersect audits the joint subgroups instead.
  std::vector<std::vector<std::string>> specs;
  if (args.data.intersect || args.data.attrs.size() == 1) {
    specs.push_back(args.data.attrs);
  } else {
    for (const auto& attr : args.data.attrs) specs.push_back({attr});
  }
  std::vector<diaudit::AuditReport> reports;
  for (const auto& spec : specs) {
    const auto part = diaudit::partition(ds, spec, args.data.min_group);
    reports.push_back(diaudit::build_audit_report(ds, part, options));
  }
  write_output(diaudit::render_all(reports, diaudit::parse_format(args.format)),
               args.out);
  for (const auto& report : reports) {
    if (report.any_flagged()) return 2;
  }
  return 0;
}

struct CurveArgs {
  IngestArgs data;
  int example = 0;
  double parameter = 0.0;
  std::string mode = "analytic";
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_curve(const CurveArgs& args, bool from_example) {
  diaudit::DiCurve curve;
  if (from_example) {
    const auto spec = diaudit::example_spec(args.example, args.parameter);
    if (args.mode == "analytic") {
      curve = diaudit::analytic_curve(spec);
    } else if (args.mode == "sampled") {
      curve = diaudit::di_curve(diaudit::sample(spec, args.n, args.seed));
    } else {
      throw std::runtime_error("unknown mode '" + args.mode +
                               "' (use analytic or sampled)");
    }
  } else {
    if (!args.data.intersect && args.data.attrs.size() > 1) {
      throw std::runtime_error(
          "curve exports one partition; pass a single attribute or "
          "--intersect");
    }
    const auto ds = diaudit::ingest_csv(args.data.input, args.data.score_col,
                                        args.data.attrs);
    const auto part =
        diaudit::partition(ds, args.data.attrs, args.data.min_group);
    curve = diaudit::di_curve(part);
  }
  std::ostringstream payload;
  diaudit::write_curve_csv(payload, curve);
  write_output(payload.str(), args.out);
  return 0;
}

struct SweepArgs {
  int example = 0;
  std::string mode = "analytic";
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  std::vector<std::string> metric_tokens = {"mean", "median", "auc", "pf"};
  std::string prior_spec = "flat";
  double bound = 0.8;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  diaudit::SweepOptions options;
  if (args.mode == "analytic") {
    options.mode = diaudit::SweepMode::kAnalytic;
  } else if (args.mode == "sampled") {
    options.mode = diaudit::SweepMode::kSampled;
  } else {
    throw std::runtime_error("unknown mode '" + args.mode +
                             "' (use analytic or sampled)");
  }
  options.metrics = canonical_metrics(args.metric_tokens);
  options.n_per_group = args.n;
  options.seed = args.seed;
  options.prior = parse_prior(args.prior_spec);
  options.fairness_bound = args.bound;
  const auto params = diaudit::example_parameter_range(args.example);
  const auto rows = diaudit::sweep(args.example, params, options);
  std::ostringstream payload;
  diaudit::write_sweep_csv(payload, rows);
  write_output(payload.str(), args.out);
  return 0;
}

void add_ingest_options(CLI::App* cmd, IngestArgs* args, bool required) {
  auto* input =
      cmd->add_option("--input", args->input, "Scored-candidate CSV file");
  auto* score =
      cmd->add_option("--score-col", args->score_col, "Score column name");
  auto* attrs = cmd->add_option("--attrs", args->attrs,
                                "Protected attribute columns (comma separated)")
                    ->delimiter(',');
  if (required) {
    input->required();
    score->required();
    attrs->required();
  }
  cmd->add_flag("--intersect", args->intersect,
                "Audit the intersectional subgroups of all attributes");
  cmd->add_option("--min-group", args->min_group,
                  "Exclude groups smaller than this from the metrics");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disparate-impact audit of continuous scoring tools"};
  app.set_config("--config", "",
                 "INI file with [audit]/[curve]/[sweep] sections; command-line "
                 "flags win on conflict");
  app.require_subcommand(1);

  AuditArgs audit_args;
  auto* audit = app.add_subcommand(
      "audit", "Compute bias metrics with four-fifths flagging");
  add_ingest_options(audit, &audit_args.data, /*required=*/true);
  audit->add_option("--metrics", audit_args.metric_tokens,
                    "Subset of mean,median,thresh,auc,pf,ks")
      ->delimiter(',');
  audit->add_option("--prior", audit_args.prior_spec,
                    "flat | delta:<p> | file of 100 weights");
  audit->add_option("--bound", audit_args.bound,
                    "Fairness bound for flagging (and inside pf)");
  double threshold_value = 0.0;
  auto* threshold_opt = audit->add_option(
      "--threshold", threshold_value, "Raw-score threshold for the thresh metric");
  audit->add_option("--format", audit_args.format, "json | csv | text");
  audit->add_option("--out", audit_args.out, "Output path (default stdout)");

  CurveArgs curve_args;
  auto* curve =
      app.add_subcommand("curve", "Export the per-group BinDI curve as CSV");
  add_ingest_options(curve, &curve_args.data, /*required=*/false);
  auto* curve_example = curve->add_option(
      "--example", curve_args.example,
      "Built-in example id instead of --input (needs --param)");
  auto* curve_param = curve->add_option("--param", curve_args.parameter,
                                        "Example parameter (delta or sigma)");
  curve->add_option("--mode", curve_args.mode,
                    "analytic | sampled (with --example)");
  curve->add_option("--n", curve_args.n, "Samples per group (sampled mode)");
  curve->add_option("--seed", curve_args.seed, "RNG seed (sampled mode)");
  curve->add_option("--out", curve_args.out, "Output path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Metric-vs-parameter table for the built-in examples");
  sweep->add_option("--example", sweep_args.example, "Example id (1, 2 or 3)")
      ->required();
  sweep->add_option("--mode", sweep_args.mode, "analytic | sampled");
  sweep->add_option("--n", sweep_args.n, "Samples per group (sampled mode)");
  sweep->add_option("--seed", sweep_args.seed, "RNG seed (sampled mode)");
  sweep->add_option("--metrics", sweep_args.metric_tokens,
                    "Subset of mean,median,auc,pf")
      ->delimiter(',');
  sweep->add_option("--prior", sweep_args.prior_spec,
                    "flat | delta:<p> | file of 100 weights");
  sweep->add_option("--bound", sweep_args.bound, "Fairness bound inside pf");
  sweep->add_option("--out", sweep_args.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (audit->parsed()) {
      if (threshold_opt->count() > 0) audit_args.threshold = threshold_value;
      return run_audit(audit_args);
    }
    if (curve->parsed()) {
      const bool from_example = curve_example->count() > 0;
      if (from_example == !curve_args.data.input.empty()) {
        throw std::runtime_error("curve takes either --input or --example");
      }
      if (from_example && curve_param->count() == 0) {
        throw std::runtime_error("--example needs --param");
      }
      if (!from_example &&
          (curve_args.data.score_col.empty() || curve_args.data.attrs.empty())) {
        throw std::runtime_error("--input needs --score-col and --attrs");
      }
      return run_curve(curve_args, from_example);
    }
    return run_sweep(sweep_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
