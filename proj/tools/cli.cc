/*
 * Copyright 2026 Google LLC
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsc/aggregator.h"
#include "dpsc/attacks.h"
#include "dpsc/audit.h"
#include "dpsc/audit_targets.h"
#include "dpsc/overhead.h"
#include "dpsc/positive_laplace.h"
#include "dpsc/records_io.h"
#include "dpsc/status.h"

namespace dpsc::cli {
namespace {

struct AttackArgs {
  std::string kind;
  bool mitigated = false;
  double epsilon = 1.0;
  double delta = 1e-4;
  int64_t trials = 1000;
  uint64_t seed = 0;
  std::string tau_mode = "bespoke";
};

struct OverheadArgs {
  std::vector<double> epsilons = {0.5, 1.0, 2.0};
  std::vector<int64_t> groups = {256, 512, 1024, 2048};
  double delta = 1e-4;
  int64_t runs = 40;
  uint64_t seed = 0;
  std::string tau_mode = "bespoke";
  std::string output;
};

struct AuditArgs {
  std::string target;
  double epsilon = 1.0;
  double delta = 1e-4;
  int64_t trials = 100000;
  uint64_t seed = 0;
  bool sabotage = false;
  int threads = 1;
};

struct PipelineArgs {
  std::string input;
  std::string config;
  uint64_t seed = 0;
  std::string output = "released.csv";
  std::string trace = "trace.jsonl";
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << contents;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("error writing ", path));
  return absl::OkStatus();
}

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return kExitFailure;
}

int RunAttack(const AttackArgs& args, std::ostream& out, std::ostream& err) {
  absl::StatusOr<TauMode> mode = ParseTauMode(args.tau_mode);
  if (!mode.ok()) return Fail(err, mode.status());
  AttackOptions options;
  options.mitigated = args.mitigated;
  options.epsilon = args.epsilon;
  options.delta = args.delta;
  options.trials = args.trials;
  options.seed = args.seed;
  options.tau_mode = *mode;
  absl::StatusOr<AttackResult> result =
      args.kind == "length"
          ? MessageLengthAttack(SybilLengthPair(), options)
          : AllocationAttack(SybilAllocationPair(), options);
  if (!result.ok()) return Fail(err, result.status());
  out << absl::StrFormat("kind=%s mitigated=%s epsilon=%.6g delta=%.6g seed=%d\n",
                         args.kind, args.mitigated ? "true" : "false",
                         args.epsilon, args.delta, args.seed);
  out << result->ToText();
  return kExitOk;
}

int RunOverheadCommand(const OverheadArgs& args, std::ostream& out,
                       std::ostream& err) {
  absl::StatusOr<TauMode> mode = ParseTauMode(args.tau_mode);
  if (!mode.ok()) return Fail(err, mode.status());
  OverheadOptions options;
  options.epsilons = args.epsilons;
  options.group_counts = args.groups;
  options.delta = args.delta;
  options.runs = args.runs;
  options.seed = args.seed;
  options.tau_mode = *mode;
  absl::StatusOr<std::vector<OverheadRow>> rows = RunOverhead(options);
  if (!rows.ok()) return Fail(err, rows.status());
  const std::string csv = FormatOverheadCsv(*rows);
  if (args.output.empty()) {
    out << csv;
    return kExitOk;
  }
  if (absl::Status s = WriteFile(args.output, csv); !s.ok()) return Fail(err, s);
  out << "wrote " << rows->size() << " rows to " << args.output << "\n";
  return kExitOk;
}

int RunAuditCommand(const AuditArgs& args, std::ostream& out,
                    std::ostream& err) {
  absl::StatusOr<AuditTarget> target = ParseAuditTarget(args.target);
  if (!target.ok()) return Fail(err, target.status());
  TargetAuditOptions options;
  options.epsilon = args.epsilon;
  options.delta = args.delta;
  options.trials = args.trials;
  options.seed = args.seed;
  options.sabotage = args.sabotage;
  options.threads = args.threads;
  absl::StatusOr<AuditReport> report = RunTargetAudit(*target, options);
  if (!report.ok()) return Fail(err, report.status());
  out << report->ToText();
  return report->passed() ? kExitOk : kExitFailure;
}

int RunPipelineCommand(const PipelineArgs& args, bool seed_given,
                       std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::string> records_text = ReadFile(args.input);
  if (!records_text.ok()) return Fail(err, records_text.status());
  absl::StatusOr<std::string> config_text = ReadFile(args.config);
  if (!config_text.ok()) return Fail(err, config_text.status());

  absl::StatusOr<RecordSet> records = ParseRecordsCsv(*records_text);
  if (!records.ok()) {
    return Fail(err, absl::Status(records.status().code(),
                                  absl::StrCat(args.input, ": ",
                                               records.status().message())));
  }
  absl::StatusOr<PipelineConfig> config =
      ParseConfig(*config_text, records->schema);
  if (!config.ok()) {
    return Fail(err, absl::Status(config.status().code(),
                                  absl::StrCat(args.config, ": ",
                                               config.status().message())));
  }
  if (seed_given) config->seed = args.seed;

  absl::StatusOr<PipelineResult> result =
      RunPipeline(records->contributions, *config);
  if (!result.ok()) return Fail(err, result.status());

  if (absl::Status s = WriteFile(args.output, FormatTableCsv(result->released));
      !s.ok()) {
    return Fail(err, s);
  }
  if (absl::Status s = WriteFile(args.trace, result->trace.ToJsonLines());
      !s.ok()) {
    return Fail(err, s);
  }
  out << "clients " << records->contributions.size() << "\n"
      << "groups " << result->released.size() << "\n"
      << "messages " << result->trace.MessageLengths().size() << "\n"
      << "total_bytes " << result->trace.TotalMessageBytes() << "\n"
      << "epsilon_spent " << FormatDouble(result->budget.epsilon) << "\n"
      << "delta_spent " << FormatDouble(result->budget.delta) << "\n"
      << "released " << args.output << "\n"
      << "trace " << args.trace << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"dpsc: side-channel resistant DP aggregation tools", "dpsc"};
  app.require_subcommand(1);

  AttackArgs attack;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "Run the message-length or allocation attack");
  attack_cmd->add_option("kind", attack.kind, "length or allocation")
      ->required()
      ->check(CLI::IsMember({"length", "allocation"}));
  attack_cmd->add_flag("--mitigated", attack.mitigated,
                       "Enable padding and private resizing");
  CLI::Option* attack_eps =
      attack_cmd->add_option("--epsilon", attack.epsilon,
                             "Budget of the attacked stage")
          ->check(CLI::PositiveNumber);
  attack_cmd->add_option("--delta", attack.delta, "Delta of the attacked stage")
      ->capture_default_str();
  attack_cmd->add_option("--trials", attack.trials, "Trials per dataset")
      ->capture_default_str()
      ->check(CLI::Range(int64_t{2}, int64_t{100000000}));
  attack_cmd->add_option("--seed", attack.seed, "Master seed")->capture_default_str();
  attack_cmd->add_option("--tau-mode", attack.tau_mode, "simple or bespoke")
      ->check(CLI::IsMember({"simple", "bespoke"}));

  OverheadArgs overhead;
  CLI::App* overhead_cmd =
      app.add_subcommand("overhead", "Padding overhead by epsilon and group count");
  overhead_cmd->add_option("--epsilons", overhead.epsilons)
      ->delimiter(',')
      ->capture_default_str();
  overhead_cmd->add_option("--groups", overhead.groups)
      ->delimiter(',')
      ->capture_default_str();
  overhead_cmd->add_option("--delta", overhead.delta)->capture_default_str();
  overhead_cmd->add_option("--runs", overhead.runs, "Paddings per cell (>= 10)")
      ->capture_default_str()
      ->check(CLI::Range(int64_t{10}, int64_t{100000000}));
  overhead_cmd->add_option("--seed", overhead.seed)->capture_default_str();
  overhead_cmd->add_option("--tau-mode", overhead.tau_mode)
      ->check(CLI::IsMember({"simple", "bespoke"}));
  overhead_cmd->add_option("--output", overhead.output,
                           "CSV path (default: standard output)");

  AuditArgs audit;
  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "Monte-Carlo DP audit of a mechanism on its worst-case fixture");
  audit_cmd->add_option("target", audit.target,
                        "positive-laplace, uds, strict-uds, dp-map, padding or "
                        "release")
      ->required();
  audit_cmd->add_option("--epsilon", audit.epsilon)->capture_default_str();
  audit_cmd->add_option("--delta", audit.delta)->capture_default_str();
  audit_cmd->add_option("--trials", audit.trials)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--seed", audit.seed)->capture_default_str();
  audit_cmd->add_flag("--sabotage", audit.sabotage,
                      "Halve every noise scale of the audited mechanism");
  audit_cmd->add_option("--threads", audit.threads)
      ->capture_default_str()
      ->check(CLI::Range(1, 256));

  PipelineArgs pipeline;
  CLI::App* pipeline_cmd =
      app.add_subcommand("pipeline", "Run the aggregation pipeline on a records file");
  pipeline_cmd->add_option("--input", pipeline.input, "Records CSV")->required();
  pipeline_cmd->add_option("--config", pipeline.config, "key=value config")
      ->required();
  CLI::Option* pipeline_seed =
      pipeline_cmd->add_option("--seed", pipeline.seed, "Overrides config seed");
  pipeline_cmd->add_option("--output", pipeline.output, "Released histogram CSV")
      ->capture_default_str();
  pipeline_cmd->add_option("--trace", pipeline.trace, "Observation trace JSONL")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
    if (attack_cmd->parsed() && attack.mitigated && attack_eps->count() == 0) {
      throw CLI::ValidationError("--epsilon",
                                 "is required with --mitigated=true");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run 'dpsc --help' for usage\n";
    return kExitUsage;
  }

  if (attack_cmd->parsed()) return RunAttack(attack, out, err);
  if (overhead_cmd->parsed()) return RunOverheadCommand(overhead, out, err);
  if (audit_cmd->parsed()) return RunAuditCommand(audit, out, err);
  return RunPipelineCommand(pipeline, pipeline_seed->count() > 0, out, err);
}

}  // namespace dpsc::cli
