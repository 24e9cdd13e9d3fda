#include "gridmind/experiment.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gridmind {

std::vector<int64_t> experiment_schedule(int experiment_id) {
  std::vector<int64_t> schedule{1, 1};
  if (experiment_id == 3) {
    for (int64_t s = 2; s <= 1024; s *= 2) schedule.push_back(s);  // 2048 total
    schedule.insert(schedule.end(), 50, 100);
  } else {
    for (int64_t s = 2; s <= 32768; s *= 2) schedule.push_back(s);  // 65536
  }
  return schedule;
}

std::vector<WorldEvent> experiment_events(int experiment_id) {
  std::vector<WorldEvent> events;
  if (experiment_id >= 2) events.push_back(door_open_event(2048));
  if (experiment_id == 3)
    events.push_back(sound_move_event(2048 + 25 * 100 + 1));
  return events;
}

namespace {

namespace fs = std::filesystem;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct TrialOutput {
  std::vector<PostLearningRecord> post_learning;
  std::vector<std::vector<HitCorrectnessRecord>> hit_correctness;  // per series
  std::vector<OutcomeShareRecord> exploit_outcomes;
  std::vector<OutcomeShareRecord> room2_outcomes;
  std::vector<SoundRuleRecord> sound_rule;
  double wall_clock_s = 0.0;
};

TrialOutput run_one_trial(const ExperimentConfig& cfg, const WorldModel& base_world,
                          size_t trial_idx,
                          const std::vector<int64_t>& schedule) {
  TrialOutput out;
  RngStream rng = RngStream::for_trial(cfg.seed, trial_idx);
  RngStream probe_rng = RngStream::for_probe(cfg.seed, trial_idx);

  NetworkState net = init_network(cfg.params, rng);
  AgentState agent;
  const std::string world_text = base_world.serialize();
  const uint64_t world_checksum = base_world.checksum();

  auto snapshot_name = [&](int64_t step) {
    return (fs::path(cfg.out_dir) / ("snapshot_trial" +
                                     std::to_string(trial_idx) + "_step" +
                                     std::to_string(step) + ".txt"))
        .string();
  };

  auto probe = [&](size_t, int64_t end_step, const NetworkState& n,
                   const WorldModel& w, const AgentState& a) {
    out.hit_correctness.push_back(frozen_hit_correctness_probe(n, w, end_step));
    out.sound_rule.push_back(sound_rule_probe(n, end_step));
    out.room2_outcomes.push_back(
        room2_type_outcome_probe(n, w, end_step, probe_rng));
    if (cfg.snapshot_every > 0 && end_step % cfg.snapshot_every == 0)
      save_snapshot({n, a, rng.state(), world_checksum, world_text},
                    snapshot_name(end_step));
  };

  TrialResult trial = run_trial(base_world, schedule, net, agent, rng, probe);
  out.wall_clock_s = trial.wall_clock_seconds;
  out.post_learning = post_learning_stats(trial.steps, trial.series_ends);

  int64_t start = 1;
  for (int64_t end : trial.series_ends) {
    out.exploit_outcomes.push_back(
        exploitation_outcome_stats(trial.steps, start, end));
    start = end + 1;
  }

  if (cfg.snapshot_every > 0) {
    const int64_t final_step = trial.series_ends.back();
    if (final_step % cfg.snapshot_every != 0)
      save_snapshot({net, agent, rng.state(), world_checksum, world_text},
                    snapshot_name(final_step));
  }
  return out;
}

std::string hex_string(uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

void write_post_learning_csv(const std::string& path,
                             const std::vector<PostLearningRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "# cc_pct: share of probed steps whose re-predicted set equals the "
        "actual set\n";
  os << "# mf_pct: missed features over features to predict; pe_pct: wrong "
        "predictions over predicted features (0.0 when nothing predicted)\n";
  os << "series_end_step,cc_pct,mf_pct,pe_pct,steps,features_to_predict,"
        "predicted\n";
  for (const auto& r : records)
    os << r.series_end_step << "," << fixed(r.cc_pct) << "," << fixed(r.mf_pct)
       << "," << fixed(r.pe_pct) << "," << r.steps << ","
       << r.features_to_predict << "," << r.predicted << "\n";
}

void write_hit_correctness_csv(
    const std::string& path,
    const std::vector<HitCorrectnessRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "# empty hit_rate/correctness cells mean an undefined denominator\n";
  os << "series_end_step,room,feature_class,hit_rate_pct,correctness_pct,"
        "present,predicted,hits\n";
  for (const auto& r : records) {
    os << r.series_end_step << "," << r.room << ","
       << to_string(r.feature_class) << ",";
    if (r.hit_rate_pct) os << fixed(*r.hit_rate_pct);
    os << ",";
    if (r.correctness_pct) os << fixed(*r.correctness_pct);
    os << "," << r.present << "," << r.predicted << "," << r.hits << "\n";
  }
}

void write_outcomes_csv(const std::string& path,
                        const std::vector<OutcomeShareRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "series_end_step,scope,no_data,ok_pct,ko_pct,failure_pct,count\n";
  for (const auto& r : records) {
    os << r.series_end_step << "," << r.scope << "," << (r.no_data ? 1 : 0)
       << ",";
    if (!r.no_data)
      os << fixed(r.ok_pct) << "," << fixed(r.ko_pct) << ","
         << fixed(r.failure_pct);
    else
      os << ",,";
    os << "," << r.count << "\n";
  }
}

void write_sound_rule_csv(
    const std::string& path,
    const std::vector<ExperimentResult::SoundRulePoint>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "series_end_step,northwall_pred_pct,southwall_pred_pct\n";
  for (const auto& r : records)
    os << r.series_end_step << "," << fixed(r.northwall_pct) << ","
       << fixed(r.southwall_pct) << "\n";
}

Params load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read params file: " + path);
  nlohmann::json j;
  in >> j;
  Params p;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("n_o", p.n_o);
  get("n_a", p.n_a);
  get("ws_o", p.ws_o);
  get("ws_a", p.ws_a);
  get("stl", p.stl);
  get("st_fail", p.st_fail);
  get("sto_min", p.sto_min);
  get("sto_max", p.sto_max);
  get("learn_at", p.learn_at);
  get("noise_o", p.noise_o);
  get("noise_a", p.noise_a);
  get("tnb_fired_o", p.tnb_fired_o);
  get("tnb_learning_o", p.tnb_learning_o);
  get("tnb_query_o", p.tnb_query_o);
  get("tnb_fired_a", p.tnb_fired_a);
  get("tnb_learning_a", p.tnb_learning_a);
  get("tnb_query_a", p.tnb_query_a);
  get("boost_param_o", p.boost_param_o);
  get("boost_param_a", p.boost_param_a);
  get("last_spiked_o_init_max", p.last_spiked_o_init_max);
  get("last_spiked_a_init_max", p.last_spiked_a_init_max);
  get("sgr_lo_offset", p.sgr_lo_offset);
  get("sgr_lo_slope", p.sgr_lo_slope);
  get("sgr_lo_base", p.sgr_lo_base);
  get("sgr_a_offset", p.sgr_a_offset);
  get("sgr_a_slope", p.sgr_a_slope);
  get("sgr_a_base", p.sgr_a_base);
  get("min_coef_mod_cnx", p.min_coef_mod_cnx);
  get("max_coef_mod_cnx", p.max_coef_mod_cnx);
  return p;
}

WorldModel load_world_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read world file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_world(buf.str());
}

namespace {

nlohmann::json params_json(const Params& p) {
  return nlohmann::json{{"n_o", p.n_o},
                        {"n_a", p.n_a},
                        {"ws_o", p.ws_o},
                        {"ws_a", p.ws_a},
                        {"stl", p.stl},
                        {"st_fail", p.st_fail},
                        {"sto_min", p.sto_min},
                        {"sto_max", p.sto_max},
                        {"learn_at", p.learn_at},
                        {"noise_o", p.noise_o},
                        {"noise_a", p.noise_a},
                        {"tnb_fired_o", p.tnb_fired_o},
                        {"tnb_learning_o", p.tnb_learning_o},
                        {"tnb_query_o", p.tnb_query_o},
                        {"tnb_fired_a", p.tnb_fired_a},
                        {"tnb_learning_a", p.tnb_learning_a},
                        {"tnb_query_a", p.tnb_query_a},
                        {"boost_param_o", p.boost_param_o},
                        {"boost_param_a", p.boost_param_a},
                        {"last_spiked_o_init_max", p.last_spiked_o_init_max},
                        {"last_spiked_a_init_max", p.last_spiked_a_init_max},
                        {"sgr_lo_offset", p.sgr_lo_offset},
                        {"sgr_lo_slope", p.sgr_lo_slope},
                        {"sgr_lo_base", p.sgr_lo_base},
                        {"sgr_a_offset", p.sgr_a_offset},
                        {"sgr_a_slope", p.sgr_a_slope},
                        {"sgr_a_base", p.sgr_a_base},
                        {"min_coef_mod_cnx", p.min_coef_mod_cnx},
                        {"max_coef_mod_cnx", p.max_coef_mod_cnx}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment_id < 1 || cfg.experiment_id > 3)
    throw std::invalid_argument("experiment id must be 1, 2 or 3");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (auto err = validate_params(cfg.params); !err.empty())
    throw std::invalid_argument("invalid params: " + err);

  const std::vector<int64_t> schedule =
      cfg.schedule ? *cfg.schedule : experiment_schedule(cfg.experiment_id);

  WorldModel base_world = cfg.world_path
                              ? load_world_file(*cfg.world_path)
                              : load_world(default_world_text());
  {
    auto events = base_world.events();
    for (const WorldEvent& ev : experiment_events(cfg.experiment_id))
      events.push_back(ev);
    base_world.set_events(std::move(events));
  }

  fs::create_directories(cfg.out_dir);

  // worker pool over trials; slot-indexed outputs keep aggregation
  // independent of completion order
  std::vector<TrialOutput> outputs(cfg.trials);
  {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int n_threads =
        std::max(1, std::min(cfg.trials,
                             cfg.threads > 0 ? cfg.threads : std::max(1, hw)));
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n_threads);
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (int t = next.fetch_add(1); t < cfg.trials;
               t = next.fetch_add(1))
            outputs[t] = run_one_trial(cfg, base_world, t, schedule);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : workers) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.world_checksum = base_world.checksum();
  for (const auto& out : outputs)
    result.trial_wall_clock_s.push_back(out.wall_clock_s);

  {
    std::vector<std::vector<PostLearningRecord>> pl;
    for (const auto& o : outputs) pl.push_back(o.post_learning);
    result.post_learning = pool_post_learning(pl);
  }
  {
    // flatten per-series tables: pool across trials per series index
    const size_t n_series = outputs.front().hit_correctness.size();
    for (size_t s = 0; s < n_series; ++s) {
      std::vector<std::vector<HitCorrectnessRecord>> per_trial;
      for (const auto& o : outputs) per_trial.push_back(o.hit_correctness[s]);
      auto pooled = pool_hit_correctness(per_trial);
      result.hit_correctness.insert(result.hit_correctness.end(),
                                    pooled.begin(), pooled.end());
    }
  }
  {
    const size_t n_series = outputs.front().exploit_outcomes.size();
    for (size_t s = 0; s < n_series; ++s) {
      OutcomeShareRecord agg;
      agg.series_end_step = outputs.front().exploit_outcomes[s].series_end_step;
      agg.scope = "exploitation";
      for (const auto& o : outputs) {
        const auto& r = o.exploit_outcomes[s];
        agg.count += r.count;
        agg.ok_count += r.ok_count;
        agg.ko_count += r.ko_count;
        agg.failure_count += r.failure_count;
      }
      if (agg.count == 0) {
        agg.no_data = true;
      } else {
        agg.ok_pct = 100.0 * agg.ok_count / agg.count;
        agg.ko_pct = 100.0 * agg.ko_count / agg.count;
        agg.failure_pct = 100.0 * agg.failure_count / agg.count;
      }
      result.outcomes.push_back(agg);
    }
    for (size_t s = 0; s < n_series; ++s) {
      OutcomeShareRecord agg;
      agg.series_end_step = outputs.front().room2_outcomes[s].series_end_step;
      agg.scope = "room2_types";
      for (const auto& o : outputs) {
        const auto& r = o.room2_outcomes[s];
        agg.count += r.count;
        agg.ok_count += r.ok_count;
        agg.ko_count += r.ko_count;
        agg.failure_count += r.failure_count;
      }
      if (agg.count == 0) {
        agg.no_data = true;
      } else {
        agg.ok_pct = 100.0 * agg.ok_count / agg.count;
        agg.ko_pct = 100.0 * agg.ko_count / agg.count;
        agg.failure_pct = 100.0 * agg.failure_count / agg.count;
      }
      result.outcomes.push_back(agg);
    }
  }
  {
    const size_t n_series = outputs.front().sound_rule.size();
    for (size_t s = 0; s < n_series; ++s) {
      int north = 0, south = 0;
      for (const auto& o : outputs) {
        north += o.sound_rule[s].northwall_predicted ? 1 : 0;
        south += o.sound_rule[s].southwall_predicted ? 1 : 0;
      }
      result.sound_rule.push_back(
          {outputs.front().sound_rule[s].series_end_step,
           100.0 * north / cfg.trials, 100.0 * south / cfg.trials});
    }
  }

  const fs::path dir(cfg.out_dir);
  write_post_learning_csv((dir / "postlearning.csv").string(),
                          result.post_learning);
  write_hit_correctness_csv((dir / "hit_correctness.csv").string(),
                            result.hit_correctness);
  write_outcomes_csv((dir / "outcomes.csv").string(), result.outcomes);
  write_sound_rule_csv((dir / "soundrule.csv").string(), result.sound_rule);

  nlohmann::json manifest;
  manifest["experiment"] = cfg.experiment_id;
  manifest["seed"] = cfg.seed;
  manifest["trials"] = cfg.trials;
  manifest["schedule"] = schedule;
  manifest["world_checksum"] = hex_string(result.world_checksum);
  manifest["params"] = params_json(cfg.params);
  nlohmann::json events = nlohmann::json::array();
  for (const WorldEvent& ev : base_world.events()) {
    nlohmann::json e;
    e["at_step"] = ev.at_step;
    e["kind"] =
        ev.kind == WorldEvent::Kind::OpenDoor ? "open_door" : "move_feature";
    events.push_back(e);
  }
  manifest["events"] = events;
  manifest["trial_wall_clock_s"] = result.trial_wall_clock_s;
  double mean_clock = 0.0;
  for (double t : result.trial_wall_clock_s) mean_clock += t;
  mean_clock /= static_cast<double>(result.trial_wall_clock_s.size());
  manifest["mean_trial_wall_clock_s"] = mean_clock;
  manifest["format_versions"] = {{"snapshot", 1}, {"world", 1}, {"csv", 1}};
  std::ofstream mout((dir / "manifest.json").string(), std::ios::binary);
  if (!mout)
    throw std::runtime_error("cannot write manifest in " + cfg.out_dir);
  mout << manifest.dump(2) << "\n";

  return result;
}

}  // namespace gridmind
