#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridmind/object_memory.hpp"
#include "gridmind/world.hpp"

using namespace gridmind;

TEST_CASE("spike_o with no input fires nothing") {
  Params p;
  IntMat cnx(Feature::kLocationCount, p.n_o);
  std::vector<int32_t> sto(p.n_o, 25);
  auto res = spike_o({}, cnx, sto, p);
  CHECK(res.fired_o.empty());
  for (auto s : res.input_sum_o) CHECK(s == 0);
}

TEST_CASE("spike_o hand oracle: sums and threshold selection") {
  // two O-neurons: o0 (STO 25) weighted (20,20,0), o1 (STO 30) weighted
  // (5,5,30); input {l0,l1} gives sums (40,10) and only o0 fires
  Params p;
  p.n_o = 2;
  IntMat cnx(Feature::kLocationCount, 2);
  cnx(0, 0) = 20; cnx(1, 0) = 20;
  cnx(0, 1) = 5;  cnx(1, 1) = 5; cnx(2, 1) = 30;
  std::vector<int32_t> sto{25, 30};
  auto res = spike_o({0, 1}, cnx, sto, p);
  CHECK(res.input_sum_o == std::vector<int32_t>{40, 10});
  CHECK(res.fired_o == NeuronSet{0});
}

TEST_CASE("spike_o admits a whole tie class even past the target") {
  Params p;
  p.n_o = 13;
  IntMat cnx(Feature::kLocationCount, 13);
  for (int o = 0; o < 13; ++o) cnx(0, o) = 30;
  std::vector<int32_t> sto(13, 25);
  auto res = spike_o({0}, cnx, sto, p);
  CHECK(res.fired_o.size() == 13);  // tie class exceeds tnb_fired_o = 12
}

TEST_CASE("backward_spike_l retrieval, noise gating and inhibition") {
  Params p;
  p.n_o = 4;

  CHECK(backward_spike_l({}, IntMat(Feature::kLocationCount, 4), p).empty());

  // OK reachable at 80, KO at 60: both over threshold, OK fires first and
  // inhibits KO for the rest of the process
  IntMat cnx(Feature::kLocationCount, 4);
  const int ok = Feature::OK.location_index();
  const int ko = Feature::KO.location_index();
  cnx(ok, 0) = 40; cnx(ok, 1) = 40;
  cnx(ko, 0) = 30; cnx(ko, 1) = 30;
  auto fired = backward_spike_l({0, 1}, cnx, p);
  CHECK(set_contains(fired, ok));
  CHECK_FALSE(set_contains(fired, ko));

  // a connection at exactly noise_o transmits nothing
  IntMat cnx2(Feature::kLocationCount, 4);
  cnx2(5, 0) = 2;   // silent
  cnx2(5, 1) = 51;  // alone above stl
  auto fired2 = backward_spike_l({0, 1}, cnx2, p);
  CHECK(fired2 == NeuronSet{5});
  // without the over-noise connection the 51 drops to nothing
  auto fired3 = backward_spike_l({0}, cnx2, p);
  CHECK(fired3.empty());
}

TEST_CASE("backward_spike_l never returns mutually exclusive pairs, even on ties") {
  Params p;
  p.n_o = 4;
  IntMat cnx(Feature::kLocationCount, 4);
  const int ok = Feature::OK.location_index();
  const int ko = Feature::KO.location_index();
  cnx(ok, 0) = 60;
  cnx(ko, 1) = 60;  // exact tie with OK
  cnx(8, 2) = 60;   // #0
  cnx(9, 3) = 60;   // #1, tie with #0
  auto fired = backward_spike_l({0, 1, 2, 3}, cnx, p);
  CHECK_FALSE((set_contains(fired, ok) && set_contains(fired, ko)));
  int names = 0;
  for (int l : fired)
    if (Feature(l).is_name()) ++names;
  CHECK(names <= 1);
}

TEST_CASE("boost_input_lo follows the boost curve") {
  Params p;
  std::vector<int32_t> sums{10, 10, 10};
  std::vector<int64_t> last{0, 50, 100};
  auto boosted = boost_input_lo({}, sums, last, p);
  REQUIRE(boosted.size() == 3);
  CHECK(boosted[0].second == doctest::Approx(10.0));  // boost 1.0
  CHECK(boosted[1].second == doctest::Approx(20.0));  // boost 2.0
  CHECK(boosted[2].second == doctest::Approx(30.0));  // boost 3.0

  // learning neurons are excluded from the domain
  auto partial = boost_input_lo({1}, sums, last, p);
  REQUIRE(partial.size() == 2);
  CHECK(partial[0].first == 0);
  CHECK(partial[1].first == 2);
}

TEST_CASE("boost monotonicity: larger last-spike never ranks lower") {
  Params p;
  std::vector<int32_t> sums(10, 7);
  std::vector<int64_t> last(10);
  for (int i = 0; i < 10; ++i) last[i] = 1 + 13 * i;
  auto boosted = boost_input_lo({}, sums, last, p);
  for (size_t i = 1; i < boosted.size(); ++i)
    CHECK(boosted[i].second > boosted[i - 1].second);
}

TEST_CASE("learn_o branch A: no weight remains outside the observed input") {
  Params p;
  p.n_o = 3;
  p.ws_o = 52;
  // every neuron already encodes the observed pair (NorthWall, Cold)
  // strongly enough for a full backward retrieval; the pair must not be
  // mutually exclusive or retrieval inhibition would hide one of them
  IntMat cnx(Feature::kLocationCount, 3);
  for (int o = 0; o < 3; ++o) {
    cnx(2, o) = 26;
    cnx(6, o) = 20;
    cnx(7, o) = 6;
  }
  std::vector<int32_t> sto{22, 22, 22};
  std::vector<int64_t> last(3, 10);
  RngStream rng(3);

  auto fire = spike_o({2, 6}, cnx, sto, p);
  REQUIRE(fire.fired_o == NeuronSet{0, 1, 2});
  // retrieval: l2 gets 26*3 = 78, l6 gets 60, both above stl = 50
  REQUIRE(is_subset({2, 6}, backward_spike_l(fire.fired_o, cnx, p)));

  learn_o({2, 6}, fire.input_sum_o, fire.fired_o, cnx, last, p, rng);
  for (int o = 0; o < 3; ++o) {
    CHECK(cnx.column_sum(o) == 52);
    for (int l = 0; l < Feature::kLocationCount; ++l)
      if (l != 2 && l != 6) CHECK(cnx(l, o) == 0);
  }
}

TEST_CASE("learn_o branch B: novel input recruits six by boost, one relearns fully") {
  Params p;
  RngStream rng(17);
  NetworkState net = init_network(p, rng);

  const NeuronSet input_lo = {Feature::OK.location_index(),
                              Feature::name(12).location_index()};
  auto fire = spike_o(input_lo, net.cnx_lo, net.sto, p);
  REQUIRE(fire.fired_o.empty());  // untrained net, nothing crosses threshold

  IntMat before = net.cnx_lo;
  learn_o(input_lo, fire.input_sum_o, fire.fired_o, net.cnx_lo,
          net.last_spiked_o, p, rng);

  // exactly the boosted learners changed; count neurons fully concentrated
  int changed = 0, fully_on_input = 0;
  for (int o = 0; o < p.n_o; ++o) {
    bool diff = false;
    for (int l = 0; l < Feature::kLocationCount; ++l)
      if (net.cnx_lo(l, o) != before(l, o)) diff = true;
    if (diff) ++changed;
    int on_input = 0;
    for (int l : input_lo) on_input += net.cnx_lo(l, o);
    if (on_input == p.ws_o) ++fully_on_input;
    CHECK(net.cnx_lo.column_sum(o) == p.ws_o);
  }
  CHECK(changed >= 6);
  CHECK(fully_on_input >= 6);  // learners moved everything onto two inputs

  // one-shot encoding: re-observing now retrieves the full input
  auto fire2 = spike_o(input_lo, net.cnx_lo, net.sto, p);
  CHECK(fire2.fired_o.size() >= 1);
  CHECK(is_subset(input_lo, backward_spike_l(fire2.fired_o, net.cnx_lo, p)));
}

TEST_CASE("learn_o is deterministic for a fixed seed") {
  Params p;
  RngStream ra(55), rb(55);
  NetworkState na = init_network(p, ra);
  NetworkState nb = init_network(p, rb);
  const NeuronSet input_lo = {0, 4, 6};
  auto fa = spike_o(input_lo, na.cnx_lo, na.sto, p);
  auto fb = spike_o(input_lo, nb.cnx_lo, nb.sto, p);
  learn_o(input_lo, fa.input_sum_o, fa.fired_o, na.cnx_lo, na.last_spiked_o, p,
          ra);
  learn_o(input_lo, fb.input_sum_o, fb.fired_o, nb.cnx_lo, nb.last_spiked_o, p,
          rb);
  CHECK(na.cnx_lo == nb.cnx_lo);
}
