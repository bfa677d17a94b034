// Copyright 2026 The xmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XMC_EVAL_REPORT_H_
#define XMC_EVAL_REPORT_H_

#include <filesystem>
#include <span>
#include <string>

#include "xmc/eval/retrieval.h"

namespace xmc {

// JSON carries every metric in [0, 1] at full precision, plus the AP values
// scaled by 100 under "ap_*_pct" for display. Parsing reads the unscaled
// values, so ReportFromJson(ReportToJson(r)) == r.
std::string ReportToJson(const EvaluationReport& report);
EvaluationReport ReportFromJson(const std::string& text);

// One header line and one row per report. AP columns are scaled by 100.
std::string ReportsToCsv(std::span<const EvaluationReport> reports);

// Fixed-width results table with the same columns.
std::string FormatReportTable(std::span<const EvaluationReport> reports);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace xmc

#endif  // XMC_EVAL_REPORT_H_
