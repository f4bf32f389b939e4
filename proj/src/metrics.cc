// src/metrics.cc

// Copyright 2026  SDSV Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sdsv/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "sdsv/binary-io.h"

namespace sdsv {

namespace {

struct OperatingPoints {
  // Ascending distinct thresholds with P_fa / P_miss for the rule
  // "accept iff score >= threshold"; the -inf and +inf corners included.
  std::vector<double> thresholds;
  std::vector<double> p_fa, p_miss;
};

OperatingPoints BuildOperatingPoints(const std::vector<double> &scores,
                                     const std::vector<bool> &is_target) {
  Require(scores.size() == is_target.size(), "score/flag count mismatch");
  int64_t n_target = 0, n_impostor = 0;
  std::vector<double> targets, impostors;
  for (size_t i = 0; i < scores.size(); ++i) {
    Require(std::isfinite(scores[i]), "scores must be finite");
    if (is_target[i]) {
      targets.push_back(scores[i]);
      ++n_target;
    } else {
      impostors.push_back(scores[i]);
      ++n_impostor;
    }
  }
  Require(n_target >= 1, "no target trials");
  Require(n_impostor >= 1, "no impostor trials");
  std::sort(targets.begin(), targets.end());
  std::sort(impostors.begin(), impostors.end());

  std::vector<double> distinct(scores);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  const double inf = std::numeric_limits<double>::infinity();
  OperatingPoints op;
  op.thresholds.push_back(-inf);
  op.p_fa.push_back(1.0);
  op.p_miss.push_back(0.0);
  for (double th : distinct) {
    auto tgt_below = std::lower_bound(targets.begin(), targets.end(), th) - targets.begin();
    auto imp_at_or_above =
        impostors.end() - std::lower_bound(impostors.begin(), impostors.end(), th);
    op.thresholds.push_back(th);
    op.p_fa.push_back(static_cast<double>(imp_at_or_above) / static_cast<double>(n_impostor));
    op.p_miss.push_back(static_cast<double>(tgt_below) / static_cast<double>(n_target));
  }
  op.thresholds.push_back(inf);
  op.p_fa.push_back(0.0);
  op.p_miss.push_back(1.0);
  return op;
}

}  // namespace

EerResult ComputeEer(const std::vector<double> &scores, const std::vector<bool> &is_target) {
  OperatingPoints op = BuildOperatingPoints(scores, is_target);
  const size_t n = op.thresholds.size();
  // diff = P_miss - P_fa rises from -1 to +1; find the first non-negative
  // point and interpolate linearly inside the segment where the sign flips.
  size_t i = 0;
  while (i < n && op.p_miss[i] - op.p_fa[i] < 0.0) ++i;
  SDSV_ASSERT(i < n);
  EerResult result;
  if (op.p_miss[i] - op.p_fa[i] == 0.0) {
    result.eer = op.p_miss[i];
    result.threshold = std::isfinite(op.thresholds[i])
                           ? op.thresholds[i]
                           : op.thresholds[i > 0 ? i - 1 : i + 1];
    return result;
  }
  SDSV_ASSERT(i > 0);
  double x1 = op.p_fa[i - 1], y1 = op.p_miss[i - 1];
  double x2 = op.p_fa[i], y2 = op.p_miss[i];
  double denom = (y2 - y1) + (x1 - x2);
  double t = denom > 0 ? (x1 - y1) / denom : 0.0;
  result.eer = x1 + t * (x2 - x1);
  double th1 = op.thresholds[i - 1], th2 = op.thresholds[i];
  if (!std::isfinite(th1)) th1 = th2;
  if (!std::isfinite(th2)) th2 = th1;
  result.threshold = th1 + t * (th2 - th1);
  return result;
}

DcfResult ComputeMinDcf(const std::vector<double> &scores, const std::vector<bool> &is_target,
                        const DcfParams &params) {
  Require(params.p_target > 0 && params.p_target < 1, "p_target must be in (0, 1)");
  Require(params.c_miss > 0 && params.c_fa > 0, "DCF costs must be positive");
  OperatingPoints op = BuildOperatingPoints(scores, is_target);
  double norm = std::min(params.c_miss * params.p_target,
                         params.c_fa * (1.0 - params.p_target));
  // Thresholds between consecutive distinct scores hit the same operating
  // points as the scores themselves under the ">=" rule, so sweeping the
  // staircase covers every candidate.
  DcfResult result;
  result.min_dcf = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < op.thresholds.size(); ++i) {
    double dcf = params.c_miss * params.p_target * op.p_miss[i] +
                 params.c_fa * (1.0 - params.p_target) * op.p_fa[i];
    if (dcf < result.min_dcf) {
      result.min_dcf = dcf;
      result.threshold = op.thresholds[i];
    }
  }
  result.min_dcf /= norm;
  return result;
}

std::vector<std::pair<double, double>> DetPoints(const std::vector<double> &scores,
                                                 const std::vector<bool> &is_target) {
  OperatingPoints op = BuildOperatingPoints(scores, is_target);
  std::vector<std::pair<double, double>> points(op.thresholds.size());
  for (size_t i = 0; i < points.size(); ++i) points[i] = {op.p_fa[i], op.p_miss[i]};
  return points;
}

void WriteDetPoints(const std::string &path,
                    const std::vector<std::pair<double, double>> &points) {
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  char buf[80];
  for (const auto &[p_fa, p_miss] : points) {
    std::snprintf(buf, sizeof(buf), "%.6f %.6f", p_fa, p_miss);
    os << buf << "\n";
  }
  if (!os) throw SdsvError("write failed: " + path);
}

namespace {

ConditionMetrics MetricsFor(const std::vector<double> &tgt, const std::vector<double> &imp,
                            const DcfParams &params) {
  std::vector<double> scores(tgt);
  scores.insert(scores.end(), imp.begin(), imp.end());
  std::vector<bool> flags(tgt.size(), true);
  flags.insert(flags.end(), imp.size(), false);
  ConditionMetrics m;
  m.eer = ComputeEer(scores, flags).eer;
  m.min_dcf = ComputeMinDcf(scores, flags, params).min_dcf;
  m.n_target = static_cast<int64_t>(tgt.size());
  m.n_impostor = static_cast<int64_t>(imp.size());
  return m;
}

}  // namespace

ConditionReport ComputeConditionReport(const std::vector<Trial> &trials,
                                       const std::vector<double> &scores,
                                       const DcfParams &params) {
  Require(trials.size() == scores.size(), "trial/score count mismatch");
  std::vector<double> tc, tw, ic, iw;
  for (size_t i = 0; i < trials.size(); ++i) {
    switch (trials[i].condition) {
      case TrialCondition::kTC: tc.push_back(scores[i]); break;
      case TrialCondition::kTW: tw.push_back(scores[i]); break;
      case TrialCondition::kIC: ic.push_back(scores[i]); break;
      case TrialCondition::kIW: iw.push_back(scores[i]); break;
    }
  }
  Require(!tc.empty(), "no TC (genuine) trials in the set");

  ConditionReport report;
  std::vector<double> pooled_imp;
  auto add_condition = [&](const char *name, const std::vector<double> &imp,
                           std::optional<ConditionMetrics> *slot) {
    if (imp.empty()) {
      report.notices.push_back(std::string(name) + " absent; omitted");
      return;
    }
    *slot = MetricsFor(tc, imp, params);
    pooled_imp.insert(pooled_imp.end(), imp.begin(), imp.end());
  };
  add_condition("TW", tw, &report.tw);
  add_condition("IC", ic, &report.ic);
  add_condition("IW", iw, &report.iw);
  Require(!pooled_imp.empty(), "no impostor trials in the set");
  report.pooled = MetricsFor(tc, pooled_imp, params);

  int present = 0;
  for (const auto &m : {report.tw, report.ic, report.iw}) {
    if (m) {
      report.avg_eer += m->eer;
      report.avg_min_dcf += m->min_dcf;
      ++present;
    }
  }
  report.avg_eer /= present;
  report.avg_min_dcf /= present;
  return report;
}

namespace {
std::string Cell(const std::optional<ConditionMetrics> &m) {
  if (!m) return "   --   ";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%5.2f / %.3f", 100.0 * m->eer, m->min_dcf);
  return buf;
}
}  // namespace

std::string FormatReportTable(const ConditionReport &report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-14s %-14s %-14s %-14s %-14s\n", "TW", "IC", "IW",
                "Pooled", "Avg.");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-14s %-14s %-14s ", Cell(report.tw).c_str(),
                Cell(report.ic).c_str(), Cell(report.iw).c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf), "%5.2f / %.3f  %5.2f / %.3f\n",
                100.0 * report.pooled.eer, report.pooled.min_dcf, 100.0 * report.avg_eer,
                report.avg_min_dcf);
  out += buf;
  for (const auto &n : report.notices) out += "note: " + n + "\n";
  return out;
}

void WriteReportKeyValue(std::ostream &os, const ConditionReport &report) {
  char buf[64];
  auto emit = [&](const std::string &key, double value) {
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    os << key << " " << buf << "\n";
  };
  auto emit_cond = [&](const std::string &name, const std::optional<ConditionMetrics> &m) {
    if (!m) return;
    emit(name + ".eer", m->eer);
    emit(name + ".min_dcf", m->min_dcf);
  };
  emit_cond("tw", report.tw);
  emit_cond("ic", report.ic);
  emit_cond("iw", report.iw);
  emit("pooled.eer", report.pooled.eer);
  emit("pooled.min_dcf", report.pooled.min_dcf);
  emit("avg.eer", report.avg_eer);
  emit("avg.min_dcf", report.avg_min_dcf);
}

}  // namespace sdsv
