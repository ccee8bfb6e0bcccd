#include "causalmt/causal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace causalmt {

TrainSpec TrainSpec::parse(std::string_view s) {
  if (s.starts_with("mixture:")) {
    auto digits = s.substr(8);
    if (digits.empty() || digits.size() > 3 ||
        digits.find_first_not_of("0123456789") != std::string_view::npos)
      throw Error("invalid train spec '" + std::string(s) + "'");
    int alpha = std::stoi(std::string(digits));
    if (alpha > 100) throw Error("mixture alpha must be in [0,100], got " + std::string(digits));
    return mixture_of(alpha);
  }
  if (s == "matched_causal") return of(TrainKind::matched_causal);
  if (s == "matched_anticausal") return of(TrainKind::matched_anticausal);
  if (s == "supervised_equal_mix") return of(TrainKind::supervised_equal_mix);
  if (s == "+ST") return of(TrainKind::plus_st);
  if (s == "+BT") return of(TrainKind::plus_bt);
  throw Error("invalid train spec '" + std::string(s) +
              "', expected mixture:<alpha>, matched_causal, matched_anticausal, "
              "supervised_equal_mix, +ST, or +BT");
}

TrainSpec TrainSpec::mixture_of(int alpha) {
  if (alpha < 0 || alpha > 100)
    throw Error("mixture alpha must be in [0,100], got " + std::to_string(alpha));
  return {TrainKind::mixture, alpha};
}

TrainSpec TrainSpec::of(TrainKind kind) {
  if (kind == TrainKind::mixture) throw Error("mixture train spec needs an alpha");
  return {kind, -1};
}

std::string TrainSpec::str() const {
  switch (kind) {
    case TrainKind::mixture: return "mixture:" + std::to_string(alpha);
    case TrainKind::matched_causal: return "matched_causal";
    case TrainKind::matched_anticausal: return "matched_anticausal";
    case TrainKind::supervised_equal_mix: return "supervised_equal_mix";
    case TrainKind::plus_st: return "+ST";
    case TrainKind::plus_bt: return "+BT";
  }
  throw Error("invalid train kind");
}

std::vector<Direction> tasks_in_order(const std::vector<ScoreRecord>& records) {
  std::set<Direction> seen;
  for (const auto& r : records) seen.insert(r.task);
  std::vector<Direction> tasks(seen.begin(), seen.end());
  std::sort(tasks.begin(), tasks.end(), [](Direction a, Direction b) {
    if (LangPair::of(a) != LangPair::of(b)) return LangPair::of(a) < LangPair::of(b);
    return a.origin < b.origin;
  });
  return tasks;
}

std::optional<double> find_cell(const std::vector<ScoreRecord>& records, Direction task,
                                const TrainSpec& spec, bool t1) {
  std::optional<double> found;
  for (const auto& r : records) {
    if (r.task != task || r.train_spec != spec || is_t1(r) != t1) continue;
    if (found)
      throw Error("duplicate score cell (" + task.task_str() + ", " + spec.str() + ", " +
                  (t1 ? "T1" : "T2") + ")");
    found = r.value;
  }
  return found;
}

namespace {

double require_cell(const std::vector<ScoreRecord>& records, Direction task,
                    const TrainSpec& spec, bool t1) {
  auto v = find_cell(records, task, spec, t1);
  if (!v)
    throw Error("missing score cell (" + task.task_str() + ", " + spec.str() + ", " +
                (t1 ? "T1" : "T2") + ")");
  return *v;
}

}  // namespace

double naive_diff(const std::vector<ScoreRecord>& records, Direction task) {
  double c1 = require_cell(records, task, TrainSpec::mixture_of(100), true);
  double c2 = require_cell(records, task, TrainSpec::mixture_of(100), false);
  double a1 = require_cell(records, task, TrainSpec::mixture_of(0), true);
  double a2 = require_cell(records, task, TrainSpec::mixture_of(0), false);
  return (c1 + c2) - (a1 + a2);
}

AceReport ace_from_scores(const std::vector<ScoreRecord>& records, Direction task,
                          AceMode mode) {
  AceReport r;
  r.task = task;
  r.t1.causal = require_cell(records, task, TrainSpec::of(TrainKind::matched_causal), true);
  r.t2.causal = require_cell(records, task, TrainSpec::of(TrainKind::matched_causal), false);
  r.t1.anticausal =
      require_cell(records, task, TrainSpec::of(TrainKind::matched_anticausal), true);
  r.t2.anticausal =
      require_cell(records, task, TrainSpec::of(TrainKind::matched_anticausal), false);

  double sum = (r.t1.causal + r.t2.causal) - (r.t1.anticausal + r.t2.anticausal);
  if (mode == AceMode::sum) {
    r.ace = sum;
    r.formula_note =
        "sum of per-half contrasts: (causal_T1 + causal_T2) - (anti_T1 + anti_T2); "
        "matched training realizes the covariate adjustment";
  } else {
    r.ace = sum / 2.0;
    r.formula_note =
        "mean of per-half contrasts: ((causal_T1 + causal_T2) - (anti_T1 + anti_T2)) / 2; "
        "matched training realizes the covariate adjustment";
  }

  bool have_mixture_cells =
      find_cell(records, task, TrainSpec::mixture_of(100), true) &&
      find_cell(records, task, TrainSpec::mixture_of(100), false) &&
      find_cell(records, task, TrainSpec::mixture_of(0), true) &&
      find_cell(records, task, TrainSpec::mixture_of(0), false);
  if (have_mixture_cells) r.naive_diff = naive_diff(records, task);
  return r;
}

std::vector<AceReport> ace_table(const std::vector<ScoreRecord>& records, AceMode mode) {
  std::vector<AceReport> out;
  for (Direction task : tasks_in_order(records)) {
    bool has_matched = false;
    for (const auto& r : records)
      if (r.task == task && (r.train_spec.kind == TrainKind::matched_causal ||
                             r.train_spec.kind == TrainKind::matched_anticausal))
        has_matched = true;
    if (has_matched) out.push_back(ace_from_scores(records, task, mode));
  }
  return out;
}

std::vector<SslDelta> ssl_delta_table(const std::vector<ScoreRecord>& records) {
  std::vector<SslDelta> out;
  for (Direction task : tasks_in_order(records)) {
    for (TrainKind variant : {TrainKind::plus_st, TrainKind::plus_bt}) {
      bool has_variant = false;
      for (const auto& r : records)
        if (r.task == task && r.train_spec.kind == variant) has_variant = true;
      if (!has_variant) continue;

      SslDelta d;
      d.task = task;
      d.variant = variant;
      d.baseline_t1 =
          require_cell(records, task, TrainSpec::of(TrainKind::supervised_equal_mix), true);
      d.baseline_t2 =
          require_cell(records, task, TrainSpec::of(TrainKind::supervised_equal_mix), false);
      d.variant_t1 = require_cell(records, task, TrainSpec::of(variant), true);
      d.variant_t2 = require_cell(records, task, TrainSpec::of(variant), false);
      d.delta_t1 = d.variant_t1 - d.baseline_t1;
      d.delta_t2 = d.variant_t2 - d.baseline_t2;
      // Self-training pairs human text in the task's source language, which
      // is T1's origin; back-translation pairs it in the target, T2's origin.
      d.aligned_half = variant == TrainKind::plus_st ? "T1" : "T2";
      d.larger_half =
          d.delta_t1 > d.delta_t2 ? "T1" : (d.delta_t2 > d.delta_t1 ? "T2" : "tie");
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::string export_feature_table(const std::vector<SampleFeature>& rows) {
  std::size_t topic_arity = rows.empty() ? 0 : rows.front().topic.size();
  for (const auto& r : rows)
    if (r.topic.size() != topic_arity)
      throw Error("ragged topic vectors: row '" + r.experiment_id + "' has " +
                  std::to_string(r.topic.size()) + " components, expected " +
                  std::to_string(topic_arity));

  std::string out =
      "experiment_id\tdata_model_match\ttest_model_match\ttrain_test_match\tsource_length";
  for (std::size_t k = 0; k < topic_arity; ++k) out += "\ttopic_" + std::to_string(k);
  out += "\tmetric_value\n";

  char buf[64];
  for (const auto& r : rows) {
    out += r.experiment_id;
    out += r.data_model_match ? "\t1" : "\t0";
    out += r.test_model_match ? "\t1" : "\t0";
    out += r.train_test_match ? "\t1" : "\t0";
    out += '\t';
    out += std::to_string(r.source_length);
    for (double t : r.topic) {
      std::snprintf(buf, sizeof buf, "\t%.4f", t);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "\t%.4f", r.metric_value);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace causalmt
