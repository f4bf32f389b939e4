// include/sdsv/metrics.h

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

#ifndef SDSV_METRICS_H_
#define SDSV_METRICS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdsv/trials.h"

namespace sdsv {

struct DcfParams {
  double p_target = 0.01;
  double c_miss = 10.0;
  double c_fa = 1.0;
};

struct EerResult {
  double eer = 0.0;        // fraction in [0, 0.5]
  double threshold = 0.0;  // operating point realizing the crossing
};

// Acceptance rule is score >= threshold.  The EER is found on the ROC
// staircase over the distinct scores with linear interpolation between
// adjacent operating points.
EerResult ComputeEer(const std::vector<double> &scores, const std::vector<bool> &is_target);

struct DcfResult {
  double min_dcf = 0.0;    // normalized by min(c_miss p_t, c_fa (1 - p_t))
  double threshold = 0.0;
};

// Minimizes c_miss p_t P_miss + c_fa (1-p_t) P_fa over thresholds placed
// between consecutive distinct scores plus the two extremes.
DcfResult ComputeMinDcf(const std::vector<double> &scores, const std::vector<bool> &is_target,
                        const DcfParams &params = {});

// One (P_fa, P_miss) point per distinct threshold, ordered by rising
// threshold, including the (1, 0) and (0, 1) corners.
std::vector<std::pair<double, double>> DetPoints(const std::vector<double> &scores,
                                                 const std::vector<bool> &is_target);

void WriteDetPoints(const std::string &path,
                    const std::vector<std::pair<double, double>> &points);

struct ConditionMetrics {
  double eer = 0.0;
  double min_dcf = 0.0;
  int64_t n_target = 0;
  int64_t n_impostor = 0;
};

// TC-vs-TW / TC-vs-IC / TC-vs-IW sub-conditions, the pooled TC-vs-all
// figures, and the unweighted average of the sub-conditions present.
struct ConditionReport {
  std::optional<ConditionMetrics> tw, ic, iw;
  ConditionMetrics pooled;
  double avg_eer = 0.0;
  double avg_min_dcf = 0.0;
  std::vector<std::string> notices;  // absent conditions, etc.
};

ConditionReport ComputeConditionReport(const std::vector<Trial> &trials,
                                       const std::vector<double> &scores,
                                       const DcfParams &params = {});

// Aligned text table with one row per metric set (EER in %, minDCF raw).
std::string FormatReportTable(const ConditionReport &report);

// Machine-readable "key value" lines.
void WriteReportKeyValue(std::ostream &os, const ConditionReport &report);

}  // namespace sdsv

#endif  // SDSV_METRICS_H_
