#include "gridmind/metrics.hpp"

namespace gridmind {

std::vector<PostLearningRecord> post_learning_stats(
    const std::vector<StepRecord>& steps,
    const std::vector<int64_t>& series_ends) {
  std::vector<PostLearningRecord> out;
  out.reserve(series_ends.size());
  size_t i = 0;
  for (int64_t end : series_ends) {
    PostLearningRecord rec;
    rec.series_end_step = end;
    for (; i < steps.size() && steps[i].step <= end; ++i) {
      const StepRecord& s = steps[i];
      if (!s.post_probe_valid) continue;
      ++rec.steps;
      const FeatureSet actual = s.actual;
      const FeatureSet predicted = s.post_predicted;
      if (predicted == actual) ++rec.cc_steps;
      rec.features_to_predict += actual.size();
      rec.missed += actual.set_minus(predicted).size();
      rec.predicted += predicted.size();
      rec.errors += predicted.set_minus(actual).size();
    }
    out.push_back(rec);
  }

  for (auto& rec : out) {
    rec.cc_pct = rec.steps ? 100.0 * rec.cc_steps / rec.steps : 0.0;
    rec.mf_pct = rec.features_to_predict
                     ? 100.0 * rec.missed / rec.features_to_predict
                     : 0.0;
    rec.pe_pct = rec.predicted ? 100.0 * rec.errors / rec.predicted : 0.0;
  }
  return out;
}

std::vector<PostLearningRecord> pool_post_learning(
    const std::vector<std::vector<PostLearningRecord>>& per_trial) {
  std::vector<PostLearningRecord> pooled;
  if (per_trial.empty()) return pooled;
  pooled = per_trial.front();
  for (size_t t = 1; t < per_trial.size(); ++t) {
    for (size_t i = 0; i < pooled.size(); ++i) {
      const auto& r = per_trial[t][i];
      pooled[i].steps += r.steps;
      pooled[i].cc_steps += r.cc_steps;
      pooled[i].features_to_predict += r.features_to_predict;
      pooled[i].missed += r.missed;
      pooled[i].predicted += r.predicted;
      pooled[i].errors += r.errors;
    }
  }
  for (auto& rec : pooled) {
    rec.cc_pct = rec.steps ? 100.0 * rec.cc_steps / rec.steps : 0.0;
    rec.mf_pct = rec.features_to_predict
                     ? 100.0 * rec.missed / rec.features_to_predict
                     : 0.0;
    rec.pe_pct = rec.predicted ? 100.0 * rec.errors / rec.predicted : 0.0;
  }
  return pooled;
}

std::string to_string(FeatureClass c) {
  switch (c) {
    case FeatureClass::OK: return "OK";
    case FeatureClass::KO: return "KO";
    case FeatureClass::Fail: return "Failure";
    case FeatureClass::Wall: return "Wall";
    case FeatureClass::Cold: return "Cold";
    case FeatureClass::Sound: return "Sound";
    case FeatureClass::BoxName: return "BoxName";
  }
  return "?";
}

std::optional<FeatureClass> classify_feature(Feature f) {
  if (f == Feature::OK) return FeatureClass::OK;
  if (f == Feature::KO) return FeatureClass::KO;
  if (f.is_failure()) return FeatureClass::Fail;
  if (f.is_wall()) return FeatureClass::Wall;
  if (f == Feature::Cold) return FeatureClass::Cold;
  if (f == Feature::Sound) return FeatureClass::Sound;
  if (f.is_name()) return FeatureClass::BoxName;
  return std::nullopt;
}

OutcomeShareRecord exploitation_outcome_stats(
    const std::vector<StepRecord>& steps, int64_t series_start_step,
    int64_t series_end_step) {
  OutcomeShareRecord rec;
  rec.series_end_step = series_end_step;
  rec.scope = "exploitation";
  for (const StepRecord& s : steps) {
    if (s.step < series_start_step || s.step > series_end_step) continue;
    if (s.mode != Mode::Exploitation) continue;
    ++rec.count;
    if (s.failure)
      ++rec.failure_count;
    else if (s.actual.contains(Feature::KO))
      ++rec.ko_count;
    else
      ++rec.ok_count;
  }
  if (rec.count == 0) {
    rec.no_data = true;
  } else {
    rec.ok_pct = 100.0 * rec.ok_count / rec.count;
    rec.ko_pct = 100.0 * rec.ko_count / rec.count;
    rec.failure_pct = 100.0 * rec.failure_count / rec.count;
  }
  return rec;
}

}  // namespace gridmind
