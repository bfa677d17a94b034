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

#include "xmc/eval/report.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "xmc/core/errors.h"

namespace xmc {
namespace {

using nlohmann::json;

constexpr char kReportFormat[] = "xmc-report";
constexpr int kReportVersion = 1;

json ApJson(const std::map<int, double>& ap, double scale) {
  json out = json::object();
  for (const auto& [pct, value] : ap) out[std::to_string(pct)] = value * scale;
  return out;
}

std::map<int, double> ApFromJson(const json& j) {
  std::map<int, double> out;
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<double>();
  return out;
}

std::string Shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ReportToJson(const EvaluationReport& r) {
  json root;
  root["format"] = kReportFormat;
  root["version"] = kReportVersion;
  root["test_set"] = r.TestSetTitle();
  root["corpus_id"] = r.corpus_id;
  root["target"] = ToString(r.target);
  root["strategy"] = r.strategy;
  root["strategy_label"] = r.strategy_label;
  root["seed"] = r.seed;
  root["subset"] = r.subset;
  root["scene_kind"] = r.scene_kind ? json(ToString(*r.scene_kind)) : json(nullptr);
  root["ap_mode"] = r.ap_mode;
  root["n_documents"] = r.n_documents;
  root["va"] = r.va;
  root["auc"] = r.auc;
  root["ap_clean"] = ApJson(r.ap_clean, 1.0);
  root["ap_tampered"] = ApJson(r.ap_tampered, 1.0);
  root["ap_clean_pct"] = ApJson(r.ap_clean, 100.0);
  root["ap_tampered_pct"] = ApJson(r.ap_tampered, 100.0);
  return root.dump(2) + "\n";
}

EvaluationReport ReportFromJson(const std::string& text) {
  try {
    const json root = json::parse(text);
    if (root.value("format", "") != kReportFormat) {
      throw InvalidArgument("not a report file");
    }
    EvaluationReport r;
    r.corpus_id = root.at("corpus_id").get<std::string>();
    const auto target = ParseTamperTarget(root.at("target").get<std::string>());
    if (!target) throw InvalidArgument("unknown report target");
    r.target = *target;
    r.strategy = root.at("strategy").get<std::string>();
    r.strategy_label = root.at("strategy_label").get<std::string>();
    r.seed = root.at("seed").get<std::uint64_t>();
    r.subset = root.at("subset").get<std::string>();
    if (!root.at("scene_kind").is_null()) {
      r.scene_kind = ParseSceneKind(root.at("scene_kind").get<std::string>());
    }
    r.ap_mode = root.at("ap_mode").get<std::string>();
    r.n_documents = root.at("n_documents").get<std::size_t>();
    r.va = root.at("va").get<double>();
    r.auc = root.at("auc").get<double>();
    r.ap_clean = ApFromJson(root.at("ap_clean"));
    r.ap_tampered = ApFromJson(root.at("ap_tampered"));
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

std::string ReportsToCsv(std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  out << "test_set,target,strategy,subset,n_documents,va,auc";
  for (const char* kind : {"ap_clean", "ap_tampered"}) {
    for (int pct : kRecallPercents) out << ',' << kind << '@' << pct;
  }
  out << '\n';
  for (const EvaluationReport& r : reports) {
    out << CsvField(r.TestSetTitle()) << ',' << ToString(r.target) << ','
        << CsvField(r.strategy) << ',' << r.subset << ',' << r.n_documents << ','
        << Shortest(r.va) << ',' << Shortest(r.auc);
    for (const auto* ap : {&r.ap_clean, &r.ap_tampered}) {
      for (int pct : kRecallPercents) {
        out << ',';
        if (auto it = ap->find(pct); it != ap->end()) out << Shortest(it->second * 100.0);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatReportTable(std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-32s %7s %5s %5s | %6s %6s %6s | %6s %6s %6s\n",
                "Test set", "|D|", "VA", "AUC", "C@25", "C@50", "C@100", "T@25",
                "T@50", "T@100");
  out << line;
  for (const EvaluationReport& r : reports) {
    auto ap = [](const std::map<int, double>& m, int pct) {
      auto it = m.find(pct);
      return it == m.end() ? std::string("   ---") : [&] {
        char b[16];
        std::snprintf(b, sizeof(b), "%6.2f", it->second * 100.0);
        return std::string(b);
      }();
    };
    std::snprintf(line, sizeof(line), "%-32s %7zu %5.2f %5.2f | %s %s %s | %s %s %s\n",
                  r.TestSetTitle().c_str(), r.n_documents, r.va, r.auc,
                  ap(r.ap_clean, 25).c_str(), ap(r.ap_clean, 50).c_str(),
                  ap(r.ap_clean, 100).c_str(), ap(r.ap_tampered, 25).c_str(),
                  ap(r.ap_tampered, 50).c_str(), ap(r.ap_tampered, 100).c_str());
    out << line;
  }
  return out.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace xmc
