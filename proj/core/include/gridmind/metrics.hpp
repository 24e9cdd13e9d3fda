#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridmind/agent.hpp"

namespace gridmind {

// Post-learning recall for one series: CC counts steps whose re-predicted
// set exactly equals the actual outcome set; MF is missed features over
// features-to-predict; PE is wrong predictions over predicted features.
struct PostLearningRecord {
  int64_t series_end_step = 0;
  double cc_pct = 0.0;
  double mf_pct = 0.0;
  double pe_pct = 0.0;
  // raw counts, so per-trial records can be pooled exactly
  int64_t steps = 0;
  int64_t cc_steps = 0;
  int64_t features_to_predict = 0;
  int64_t missed = 0;
  int64_t predicted = 0;
  int64_t errors = 0;
};

std::vector<PostLearningRecord> post_learning_stats(
    const std::vector<StepRecord>& steps,
    const std::vector<int64_t>& series_ends);

// Pools raw counts across trials (records aligned by series).
std::vector<PostLearningRecord> pool_post_learning(
    const std::vector<std::vector<PostLearningRecord>>& per_trial);

// The seven pooled feature classes of the frozen-probe tables.
enum class FeatureClass : uint8_t { OK, KO, Fail, Wall, Cold, Sound, BoxName };
inline constexpr FeatureClass kAllFeatureClasses[] = {
    FeatureClass::OK,   FeatureClass::KO,   FeatureClass::Fail,
    FeatureClass::Wall, FeatureClass::Cold, FeatureClass::Sound,
    FeatureClass::BoxName};
std::string to_string(FeatureClass c);
std::optional<FeatureClass> classify_feature(Feature f);

struct HitCorrectnessRecord {
  int64_t series_end_step = 0;
  int room = 0;
  FeatureClass feature_class = FeatureClass::OK;
  // absent when the denominator is zero (never reported as 0.0)
  std::optional<double> hit_rate_pct;
  std::optional<double> correctness_pct;
  int64_t present = 0;
  int64_t predicted = 0;
  int64_t hits = 0;
};

struct OutcomeShareRecord {
  int64_t series_end_step = 0;
  std::string scope;  // "exploitation" or "room2_types"
  bool no_data = false;
  double ok_pct = 0.0;
  double ko_pct = 0.0;
  double failure_pct = 0.0;
  int64_t count = 0;
  int64_t ok_count = 0, ko_count = 0, failure_count = 0;
};

// Classifies the outcome of each Exploitation step of the series:
// Failure on a bump, KO when the arrival has KO, OK otherwise.
OutcomeShareRecord exploitation_outcome_stats(
    const std::vector<StepRecord>& steps, int64_t series_start_step,
    int64_t series_end_step);

struct SoundRuleRecord {
  int64_t series_end_step = 0;
  bool northwall_predicted = false;  // for a north move from "Sound only"
  bool southwall_predicted = false;  // for a south move
};

}  // namespace gridmind
