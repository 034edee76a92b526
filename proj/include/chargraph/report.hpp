// CSV tables and a Markdown summary built from analyzed story graphs.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chargraph/analytics.hpp"
#include "chargraph/corpus.hpp"
#include "chargraph/stats.hpp"

namespace chargraph {

struct ReportOptions {
  stats::TTestOptions ttest;
  bool edge_types_by_weight = false;
  std::vector<GroupKey> groups{GroupKey::gender, GroupKey::age, GroupKey::age_gender, GroupKey::family,
                               GroupKey::role};
};

/// Group pairs compared with a t-test in group tables.
std::vector<std::pair<std::string, std::string>> tested_pairs(GroupKey key);

/// Test outcome or the reason it could not be computed.
struct TestCell {
  std::optional<stats::TTestResult> result;
  std::string reason;  // set when result is empty
};

TestCell run_test(std::span<const double> a, std::span<const double> b, const stats::TTestOptions& options);

/// File name -> contents. Throws AnalyticsError for an empty corpus.
std::map<std::string, std::string> build_report(const CorpusManifest& manifest,
                                                std::span<const AnalyzedStory> stories,
                                                const ReportOptions& options);

}  // namespace chargraph
