#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

enum class TrainKind {
  mixture,
  matched_causal,
  matched_anticausal,
  supervised_equal_mix,
  plus_st,
  plus_bt,
};

struct TrainSpec {
  TrainKind kind = TrainKind::mixture;
  int alpha = -1;  // set iff kind == mixture

  // "mixture:50", "matched_causal", "matched_anticausal",
  // "supervised_equal_mix", "+ST", "+BT"
  static TrainSpec parse(std::string_view s);
  static TrainSpec mixture_of(int alpha);
  static TrainSpec of(TrainKind kind);
  std::string str() const;
  constexpr auto operator<=>(const TrainSpec&) const = default;
};

struct ScoreRecord {
  std::string experiment_id;
  Direction task;       // model direction, source -> target
  TrainSpec train_spec;
  Direction test_half;  // human translation direction of the test half
  std::string metric_name;
  double value = 0.0;

  bool operator==(const ScoreRecord&) const = default;
};

// T1 is the test half whose human translation direction equals the task.
inline bool is_t1(const ScoreRecord& r) { return r.test_half == r.task; }
inline std::string half_label(const ScoreRecord& r) { return is_t1(r) ? "T1" : "T2"; }

enum class AceMode { sum, mean };

struct HalfContrast {
  double causal = 0.0;
  double anticausal = 0.0;
};

struct AceReport {
  Direction task;
  double ace = 0.0;
  std::optional<double> naive_diff;  // filled when the alpha 0/100 cells exist
  HalfContrast t1, t2;
  std::string formula_note;
};

// Tasks ordered by language pair, then source language; the order every
// report renders in.
std::vector<Direction> tasks_in_order(const std::vector<ScoreRecord>& records);

std::optional<double> find_cell(const std::vector<ScoreRecord>& records, Direction task,
                                const TrainSpec& spec, bool t1);

// (alpha=100 T1 + T2) - (alpha=0 T1 + T2): the aligned-vs-opposite contrast
// read straight off the mixture sweep.
double naive_diff(const std::vector<ScoreRecord>& records, Direction task);

// Contrast of matched-corpus training runs; the matched corpora equalize
// length and content covariates, so this difference estimates the causal
// effect of the data-model direction match.
AceReport ace_from_scores(const std::vector<ScoreRecord>& records, Direction task,
                          AceMode mode = AceMode::sum);

std::vector<AceReport> ace_table(const std::vector<ScoreRecord>& records,
                                 AceMode mode = AceMode::sum);

struct SslDelta {
  Direction task;
  TrainKind variant = TrainKind::plus_st;  // plus_st or plus_bt
  double baseline_t1 = 0.0, baseline_t2 = 0.0;
  double variant_t1 = 0.0, variant_t2 = 0.0;
  double delta_t1 = 0.0, delta_t2 = 0.0;
  std::string aligned_half;  // half whose origin language is the pseudo human side
  std::string larger_half;   // half with the larger gain, or "tie"
};

std::vector<SslDelta> ssl_delta_table(const std::vector<ScoreRecord>& records);

struct SampleFeature {
  std::string experiment_id;
  bool data_model_match = false;
  bool test_model_match = false;
  bool train_test_match = false;
  std::size_t source_length = 0;
  std::vector<double> topic;  // optional; arity must agree across rows
  double metric_value = 0.0;
};

// Fixed column order: experiment_id, the three match flags, source_length,
// topic_0..topic_{k-1} when topics are supplied, metric_value.
std::string export_feature_table(const std::vector<SampleFeature>& rows);

}  // namespace causalmt
