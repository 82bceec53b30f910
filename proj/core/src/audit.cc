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

#include "dpsc/audit.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "boost/math/special_functions/beta.hpp"
#include "dpsc/noise_source.h"
#include "dpsc/status.h"

namespace dpsc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr uint64_t kPilotStream = uint64_t{0x9e3779b97f4a7c15};

double DirectionalEpsilon(double p1, double p2, double delta) {
  if (p1 <= delta) return 0.0;
  if (p2 <= 0) return kInf;
  return std::max(0.0, std::log((p1 - delta) / p2));
}

std::string FormatNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.6g", x);
}

struct Counts {
  std::vector<int64_t> d;
  std::vector<int64_t> d_prime;
};

void CountRange(const Sampler& sampler_d, const Sampler& sampler_d_prime,
                const std::vector<AuditEvent>& events, uint64_t seed,
                int64_t begin, int64_t end, Counts* counts) {
  counts->d.assign(events.size(), 0);
  counts->d_prime.assign(events.size(), 0);
  for (int64_t t = begin; t < end; ++t) {
    const uint64_t u = static_cast<uint64_t>(t);
    const double x = sampler_d(DeriveSeed(seed, 2 * u));
    const double y = sampler_d_prime(DeriveSeed(seed, 2 * u + 1));
    for (size_t e = 0; e < events.size(); ++e) {
      if (events[e].contains(x)) ++counts->d[e];
      if (events[e].contains(y)) ++counts->d_prime[e];
    }
  }
}

}  // namespace

std::vector<AuditEvent> ExactOutcomeEvents(std::span<const double> outcomes) {
  std::vector<AuditEvent> events;
  for (double v : outcomes) {
    events.push_back({absl::StrCat("X==", FormatNumber(v)),
                      [v](double x) { return x == v; }});
  }
  return events;
}

std::vector<AuditEvent> ThresholdEvents(std::span<const double> pilot,
                                        int cuts) {
  std::vector<double> sorted(pilot.begin(), pilot.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> points;
  if (!sorted.empty() && cuts > 0) {
    for (int j = 1; j <= cuts; ++j) {
      const size_t i = std::min(
          sorted.size() - 1,
          static_cast<size_t>(static_cast<double>(j) * sorted.size() /
                              (cuts + 1)));
      points.push_back(sorted[i]);
    }
  }
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<AuditEvent> events;
  for (double c : points) {
    events.push_back({absl::StrCat("X<=", FormatNumber(c)),
                      [c](double x) { return x <= c; }});
    events.push_back({absl::StrCat("X>", FormatNumber(c)),
                      [c](double x) { return x > c; }});
  }
  return events;
}

Interval ClopperPearson(int64_t successes, int64_t trials) {
  const double alpha = 1.0 - kAuditConfidence;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  Interval out{0.0, 1.0};
  if (successes > 0) {
    out.lo = boost::math::ibeta_inv(k, n - k + 1, alpha / 2);
  }
  if (successes < trials) {
    out.hi = boost::math::ibeta_inv(k + 1, n - k, 1 - alpha / 2);
  }
  return out;
}

bool AuditReport::passed() const {
  return std::none_of(events.begin(), events.end(),
                      [](const EventRecord& e) { return e.violation; });
}

double AuditReport::worst_epsilon_hat() const {
  double worst = 0;
  for (const EventRecord& e : events) worst = std::max(worst, e.epsilon_hat);
  return worst;
}

double AuditReport::worst_epsilon_lower() const {
  double worst = 0;
  for (const EventRecord& e : events) worst = std::max(worst, e.epsilon_lower);
  return worst;
}

std::string AuditReport::worst_event() const {
  const EventRecord* worst = nullptr;
  for (const EventRecord& e : events) {
    if (worst == nullptr || e.epsilon_lower > worst->epsilon_lower) worst = &e;
  }
  return worst == nullptr ? "" : worst->name;
}

std::string AuditReport::ToText() const {
  std::string out = absl::StrCat(
      "audit target=", target, " epsilon=", FormatNumber(epsilon),
      " delta=", FormatNumber(delta), " trials=", trials, " seed=", seed,
      " ci=", ci_method, " events=", events.size(), "\n");
  for (const EventRecord& e : events) {
    absl::StrAppend(
        &out, "event name=", e.name, " n_d=", e.count_d,
        " n_d_prime=", e.count_d_prime, " p_d=", FormatNumber(e.p_d),
        " p_d_prime=", FormatNumber(e.p_d_prime), " ci_d=[",
        FormatNumber(e.ci_d.lo), ",", FormatNumber(e.ci_d.hi),
        "] ci_d_prime=[", FormatNumber(e.ci_d_prime.lo), ",",
        FormatNumber(e.ci_d_prime.hi),
        "] eps_hat=", FormatNumber(e.epsilon_hat),
        " eps_lower=", FormatNumber(e.epsilon_lower),
        e.violation ? " VIOLATION" : " ok", "\n");
  }
  absl::StrAppend(&out, "result ", passed() ? "PASS" : "FAIL",
                  " worst_eps_hat=", FormatNumber(worst_epsilon_hat()),
                  " worst_eps_lower=", FormatNumber(worst_epsilon_lower()),
                  " worst_event=", worst_event(), "\n");
  return out;
}

AuditReport MergeReports(std::string target,
                         std::span<const AuditReport> parts) {
  AuditReport merged;
  merged.target = std::move(target);
  for (const AuditReport& part : parts) {
    merged.epsilon = part.epsilon;
    merged.delta = part.delta;
    merged.trials = part.trials;
    merged.seed = part.seed;
    for (EventRecord e : part.events) {
      e.name = absl::StrCat(part.target, ":", e.name);
      merged.events.push_back(std::move(e));
    }
  }
  return merged;
}

int64_t MinimumTrials(double epsilon, double delta) {
  const double alpha = 1.0 - kAuditConfidence;
  const double ratio = (std::exp(epsilon) + delta) / (1.0 + std::exp(epsilon));
  if (!(ratio < 1.0)) return std::numeric_limits<int64_t>::max();
  // Need (alpha/2)^(1/n) > ratio.
  const double bound = std::log(alpha / 2) / std::log(ratio);
  int64_t n = static_cast<int64_t>(std::floor(bound)) + 1;
  while (n > 1) {
    Interval hit = ClopperPearson(n - 1, n - 1);
    Interval miss = ClopperPearson(0, n - 1);
    if (!(hit.lo > std::exp(epsilon) * miss.hi + delta)) break;
    --n;
  }
  return n;
}

absl::StatusOr<AuditReport> DpAudit(const Sampler& sampler_d,
                                    const Sampler& sampler_d_prime,
                                    const EventFamily& family, double epsilon,
                                    double delta, int64_t trials, uint64_t seed,
                                    const AuditOptions& options) {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("audit epsilon must be finite and >= 0, got ", epsilon));
  }
  if (!(delta >= 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("audit delta must be in [0, 1), got ", delta));
  }
  const int64_t minimum = MinimumTrials(epsilon, delta);
  if (trials < minimum) {
    return InsufficientTrialsError(absl::StrCat(
        trials, " trials cannot certify any violation at epsilon=",
        FormatNumber(epsilon), " delta=", FormatNumber(delta),
        "; use at least ", minimum, " (suggested ", 100 * minimum, ")"));
  }

  std::vector<AuditEvent> events;
  if (const auto* explicit_events = std::get_if<std::vector<AuditEvent>>(&family)) {
    events = *explicit_events;
  } else {
    const ThresholdFamily& threshold = std::get<ThresholdFamily>(family);
    const uint64_t pilot_seed = DeriveSeed(seed, kPilotStream);
    std::vector<double> pilot;
    pilot.reserve(2 * threshold.pilot_trials);
    for (int64_t t = 0; t < threshold.pilot_trials; ++t) {
      const uint64_t u = static_cast<uint64_t>(t);
      pilot.push_back(sampler_d(DeriveSeed(pilot_seed, 2 * u)));
      pilot.push_back(sampler_d_prime(DeriveSeed(pilot_seed, 2 * u + 1)));
    }
    events = ThresholdEvents(pilot, threshold.cuts);
  }
  if (events.empty()) {
    return absl::InvalidArgumentError("audit needs at least one event");
  }

  const int threads = static_cast<int>(
      std::clamp<int64_t>(options.threads, 1, std::max<int64_t>(1, trials)));
  std::vector<Counts> partial(threads);
  if (threads == 1) {
    CountRange(sampler_d, sampler_d_prime, events, seed, 0, trials, &partial[0]);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      const int64_t begin = trials * w / threads;
      const int64_t end = trials * (w + 1) / threads;
      workers.emplace_back(CountRange, std::cref(sampler_d),
                           std::cref(sampler_d_prime), std::cref(events), seed,
                           begin, end, &partial[w]);
    }
    for (std::thread& worker : workers) worker.join();
  }

  AuditReport report;
  report.epsilon = epsilon;
  report.delta = delta;
  report.trials = trials;
  report.seed = seed;
  const double e_eps = std::exp(epsilon);
  const double n = static_cast<double>(trials);
  for (size_t e = 0; e < events.size(); ++e) {
    EventRecord record;
    record.name = events[e].name;
    for (const Counts& c : partial) {
      record.count_d += c.d[e];
      record.count_d_prime += c.d_prime[e];
    }
    record.p_d = record.count_d / n;
    record.p_d_prime = record.count_d_prime / n;
    record.ci_d = ClopperPearson(record.count_d, trials);
    record.ci_d_prime = ClopperPearson(record.count_d_prime, trials);
    record.epsilon_hat =
        std::max(DirectionalEpsilon(record.p_d, record.p_d_prime, delta),
                 DirectionalEpsilon(record.p_d_prime, record.p_d, delta));
    record.epsilon_lower = std::max(
        DirectionalEpsilon(record.ci_d.lo, record.ci_d_prime.hi, delta),
        DirectionalEpsilon(record.ci_d_prime.lo, record.ci_d.hi, delta));
    record.violation =
        record.ci_d.lo > e_eps * record.ci_d_prime.hi + delta ||
        record.ci_d_prime.lo > e_eps * record.ci_d.hi + delta;
    report.events.push_back(std::move(record));
  }
  return report;
}

}  // namespace dpsc
