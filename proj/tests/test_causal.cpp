#include <cmath>
#include <string>
#include <vector>

#include "causalmt/causal.hpp"
#include "causalmt/rng.hpp"
#include "causalmt/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace causalmt;

namespace {

const Direction kDeEn = Direction::make(kDe, kEn);
const Direction kEnDe = Direction::make(kEn, kDe);

ScoreRecord rec(Direction task, const TrainSpec& spec, bool t1, double value) {
  ScoreRecord r;
  r.experiment_id = task.task_str() + "." + spec.str() + (t1 ? ".t1" : ".t2");
  r.task = task;
  r.train_spec = spec;
  r.test_half = t1 ? task : task.reversed();
  r.metric_name = "bleu";
  r.value = value;
  return r;
}

std::vector<ScoreRecord> matched_grid(Direction task, double c1, double c2, double a1,
                                      double a2) {
  return {rec(task, TrainSpec::of(TrainKind::matched_causal), true, c1),
          rec(task, TrainSpec::of(TrainKind::matched_causal), false, c2),
          rec(task, TrainSpec::of(TrainKind::matched_anticausal), true, a1),
          rec(task, TrainSpec::of(TrainKind::matched_anticausal), false, a2)};
}

std::vector<ScoreRecord> mixture_cells(Direction task, double h1, double h2, double z1,
                                       double z2) {
  return {rec(task, TrainSpec::mixture_of(100), true, h1),
          rec(task, TrainSpec::mixture_of(100), false, h2),
          rec(task, TrainSpec::mixture_of(0), true, z1),
          rec(task, TrainSpec::mixture_of(0), false, z2)};
}

}  // namespace

TEST_CASE("train specs parse and print") {
  CHECK(TrainSpec::parse("mixture:50") == TrainSpec::mixture_of(50));
  CHECK(TrainSpec::parse("mixture:0").alpha == 0);
  CHECK(TrainSpec::parse("mixture:100").alpha == 100);
  CHECK(TrainSpec::parse("matched_causal").kind == TrainKind::matched_causal);
  CHECK(TrainSpec::parse("matched_anticausal").kind == TrainKind::matched_anticausal);
  CHECK(TrainSpec::parse("supervised_equal_mix").kind == TrainKind::supervised_equal_mix);
  CHECK(TrainSpec::parse("+ST").kind == TrainKind::plus_st);
  CHECK(TrainSpec::parse("+BT").kind == TrainKind::plus_bt);

  for (const char* s : {"mixture:50", "matched_causal", "matched_anticausal",
                        "supervised_equal_mix", "+ST", "+BT"})
    CHECK(TrainSpec::parse(s).str() == s);

  CHECK_THROWS_AS(TrainSpec::parse("mixture:"), Error);
  CHECK_THROWS_AS(TrainSpec::parse("mixture:abc"), Error);
  CHECK_THROWS_AS(TrainSpec::parse("mixture:101"), Error);
  CHECK_THROWS_AS(TrainSpec::parse("mixture:0100"), Error);
  CHECK_THROWS_AS(TrainSpec::parse("bogus"), Error);
  CHECK_THROWS_AS(TrainSpec::of(TrainKind::mixture), Error);
  CHECK_THROWS_AS(TrainSpec::mixture_of(-1), Error);
  CHECK_THROWS_AS(TrainSpec::mixture_of(101), Error);
}

TEST_CASE("test halves are labeled relative to the task") {
  auto r1 = rec(kDeEn, TrainSpec::mixture_of(50), true, 1.0);
  CHECK(is_t1(r1));
  CHECK(half_label(r1) == "T1");
  auto r2 = rec(kDeEn, TrainSpec::mixture_of(50), false, 1.0);
  CHECK(r2.test_half == kEnDe);
  CHECK_FALSE(is_t1(r2));
  CHECK(half_label(r2) == "T2");
}

TEST_CASE("cell lookup finds exactly one value") {
  auto recs = mixture_cells(kDeEn, 20.0, 18.0, 21.0, 19.5);
  auto v = find_cell(recs, kDeEn, TrainSpec::mixture_of(100), true);
  REQUIRE(v.has_value());
  CHECK(*v == 20.0);
  CHECK_FALSE(find_cell(recs, kDeEn, TrainSpec::mixture_of(50), true).has_value());
  CHECK_FALSE(find_cell(recs, kEnDe, TrainSpec::mixture_of(100), true).has_value());

  recs.push_back(recs.front());
  CHECK_THROWS_WITH_AS(find_cell(recs, kDeEn, TrainSpec::mixture_of(100), true),
                       doctest::Contains("duplicate"), Error);
}

TEST_CASE("naive diff contrasts the sweep endpoints") {
  auto recs = mixture_cells(kDeEn, 20.0, 18.0, 21.0, 19.5);
  CHECK(naive_diff(recs, kDeEn) == doctest::Approx(-2.5));
  recs.pop_back();
  CHECK_THROWS_WITH_AS(naive_diff(recs, kDeEn), doctest::Contains("missing"), Error);
}

TEST_CASE("ace combines matched contrasts under both conventions") {
  auto recs = matched_grid(kDeEn, 10.0, 12.0, 9.0, 11.5);
  AceReport sum = ace_from_scores(recs, kDeEn, AceMode::sum);
  CHECK(sum.ace == doctest::Approx(1.5));
  CHECK(sum.t1.causal == 10.0);
  CHECK(sum.t2.anticausal == 11.5);
  CHECK_FALSE(sum.naive_diff.has_value());
  CHECK(sum.formula_note.find("sum") != std::string::npos);

  AceReport mean = ace_from_scores(recs, kDeEn, AceMode::mean);
  CHECK(mean.ace == doctest::Approx(0.75));
  CHECK(mean.formula_note.find("mean") != std::string::npos);

  auto with_mix = recs;
  auto mix = mixture_cells(kDeEn, 20.0, 18.0, 21.0, 19.5);
  with_mix.insert(with_mix.end(), mix.begin(), mix.end());
  AceReport full = ace_from_scores(with_mix, kDeEn);
  REQUIRE(full.naive_diff.has_value());
  CHECK(*full.naive_diff == doctest::Approx(-2.5));
}

TEST_CASE("ace and diff flip sign when the direction labels swap") {
  SplitMix64 rng(37);
  auto two_dec = [&] { return static_cast<double>(rng.below(4001)) / 100.0; };
  for (int trial = 0; trial < 200; ++trial) {
    double c1 = two_dec(), c2 = two_dec(), a1 = two_dec(), a2 = two_dec();
    double h1 = two_dec(), h2 = two_dec(), z1 = two_dec(), z2 = two_dec();

    auto recs = matched_grid(kDeEn, c1, c2, a1, a2);
    auto mix = mixture_cells(kDeEn, h1, h2, z1, z2);
    recs.insert(recs.end(), mix.begin(), mix.end());

    // swapped: what was measured as causal is relabeled anticausal and the
    // sweep endpoints trade places
    auto swapped = matched_grid(kDeEn, a1, a2, c1, c2);
    auto smix = mixture_cells(kDeEn, z1, z2, h1, h2);
    swapped.insert(swapped.end(), smix.begin(), smix.end());

    AceReport fwd = ace_from_scores(recs, kDeEn);
    AceReport rev = ace_from_scores(swapped, kDeEn);
    CHECK(fwd.ace == -rev.ace);
    CHECK(naive_diff(recs, kDeEn) == -naive_diff(swapped, kDeEn));

    AceReport fwd_mean = ace_from_scores(recs, kDeEn, AceMode::mean);
    AceReport rev_mean = ace_from_scores(swapped, kDeEn, AceMode::mean);
    CHECK(fwd_mean.ace == -rev_mean.ace);
  }
}

TEST_CASE("ace and diff ignore additive score shifts") {
  SplitMix64 rng(38);
  auto two_dec = [&] { return static_cast<double>(rng.below(4001)) / 100.0; };
  for (int trial = 0; trial < 200; ++trial) {
    double vals[8];
    for (double& v : vals) v = two_dec();
    double shift = static_cast<double>(rng.below(1001)) / 100.0 - 5.0;

    auto recs = matched_grid(kDeEn, vals[0], vals[1], vals[2], vals[3]);
    auto mix = mixture_cells(kDeEn, vals[4], vals[5], vals[6], vals[7]);
    recs.insert(recs.end(), mix.begin(), mix.end());

    auto shifted = recs;
    for (auto& r : shifted) r.value += shift;

    CHECK(std::abs(ace_from_scores(recs, kDeEn).ace - ace_from_scores(shifted, kDeEn).ace) <=
          1e-9);
    CHECK(std::abs(naive_diff(recs, kDeEn) - naive_diff(shifted, kDeEn)) <= 1e-9);
  }
}

TEST_CASE("tasks are ordered by pair then source language") {
  std::vector<ScoreRecord> recs;
  for (Direction d : {Direction::make(kFr, kEs), kEnDe, Direction::make(kEs, kEn),
                      Direction::make(kDe, kFr), kDeEn})
    recs.push_back(rec(d, TrainSpec::mixture_of(50), true, 1.0));
  auto order = tasks_in_order(recs);
  REQUIRE(order.size() == 5);
  CHECK(order[0] == kDeEn);
  CHECK(order[1] == kEnDe);
  CHECK(order[2] == Direction::make(kDe, kFr));
  CHECK(order[3] == Direction::make(kEs, kEn));
  CHECK(order[4] == Direction::make(kFr, kEs));
}

TEST_CASE("ace table covers exactly the tasks with matched runs") {
  auto recs = matched_grid(kEnDe, 10.0, 11.0, 9.0, 10.5);
  auto more = matched_grid(kDeEn, 20.0, 21.0, 19.0, 20.5);
  recs.insert(recs.end(), more.begin(), more.end());
  // a task with only mixture cells stays out of the table
  auto mix_only = mixture_cells(Direction::make(kFr, kEn), 1, 2, 3, 4);
  recs.insert(recs.end(), mix_only.begin(), mix_only.end());

  auto table = ace_table(recs);
  REQUIRE(table.size() == 2);
  CHECK(table[0].task == kDeEn);
  CHECK(table[1].task == kEnDe);
  CHECK(table[0].ace == doctest::Approx(1.5));
  CHECK(table[1].ace == doctest::Approx(1.5));
}

TEST_CASE("ssl deltas compare variants against the shared baseline") {
  std::vector<ScoreRecord> recs = {
      rec(kDeEn, TrainSpec::of(TrainKind::supervised_equal_mix), true, 30.0),
      rec(kDeEn, TrainSpec::of(TrainKind::supervised_equal_mix), false, 31.0),
      rec(kDeEn, TrainSpec::of(TrainKind::plus_st), true, 32.5),
      rec(kDeEn, TrainSpec::of(TrainKind::plus_st), false, 31.5),
      rec(kDeEn, TrainSpec::of(TrainKind::plus_bt), true, 30.5),
      rec(kDeEn, TrainSpec::of(TrainKind::plus_bt), false, 33.0),
  };
  auto table = ssl_delta_table(recs);
  REQUIRE(table.size() == 2);

  const SslDelta& st = table[0];
  CHECK(st.variant == TrainKind::plus_st);
  CHECK(st.baseline_t1 == 30.0);
  CHECK(st.variant_t2 == 31.5);
  CHECK(st.delta_t1 == doctest::Approx(2.5));
  CHECK(st.delta_t2 == doctest::Approx(0.5));
  CHECK(st.aligned_half == "T1");
  CHECK(st.larger_half == "T1");

  const SslDelta& bt = table[1];
  CHECK(bt.variant == TrainKind::plus_bt);
  CHECK(bt.delta_t1 == doctest::Approx(0.5));
  CHECK(bt.delta_t2 == doctest::Approx(2.0));
  CHECK(bt.aligned_half == "T2");
  CHECK(bt.larger_half == "T2");

  // equal gains are reported as a tie
  recs[4].value = 32.0;
  recs[5].value = 33.0;  // deltas 2.0 / 2.0
  auto tied = ssl_delta_table(recs);
  CHECK(tied[1].larger_half == "tie");

  // a variant without its baseline is an error
  std::vector<ScoreRecord> broken = {
      rec(kDeEn, TrainSpec::of(TrainKind::plus_st), true, 32.5),
      rec(kDeEn, TrainSpec::of(TrainKind::plus_st), false, 31.5),
  };
  CHECK_THROWS_WITH_AS(ssl_delta_table(broken), doctest::Contains("missing"), Error);
}

TEST_CASE("feature table renders fixed columns") {
  std::vector<SampleFeature> rows(2);
  rows[0] = {"exp1", true, false, true, 17, {0.25, 0.5}, 31.4};
  rows[1] = {"exp2", false, true, false, 5, {0.1, 0.9}, 28.05};
  CHECK(export_feature_table(rows) ==
        "experiment_id\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_length"
        "\ttopic_0\ttopic_1\tmetric_value\n"
        "exp1\t1\t0\t1\t17\t0.2500\t0.5000\t31.4000\n"
        "exp2\t0\t1\t0\t5\t0.1000\t0.9000\t28.0500\n");

  std::vector<SampleFeature> flat(1);
  flat[0] = {"only", false, false, false, 3, {}, 1.0};
  CHECK(export_feature_table(flat) ==
        "experiment_id\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_length"
        "\tmetric_value\n"
        "only\t0\t0\t0\t3\t1.0000\n");

  CHECK(export_feature_table({}) ==
        "experiment_id\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_length"
        "\tmetric_value\n");

  std::vector<SampleFeature> ragged(2);
  ragged[0] = {"r1", false, false, false, 1, {0.5}, 1.0};
  ragged[1] = {"r2", false, false, false, 1, {0.5, 0.5}, 1.0};
  CHECK_THROWS_WITH_AS(export_feature_table(ragged), doctest::Contains("ragged"), Error);
}
