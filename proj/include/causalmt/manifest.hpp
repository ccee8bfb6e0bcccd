#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "causalmt/causal.hpp"
#include "causalmt/types.hpp"

namespace causalmt {

// Everything an external trainer needs for one run. The toolkit never
// trains; it hands these to the trainer and later ingests its score TSV.
struct TrainManifest {
  std::string experiment_id;
  Direction task;
  TrainSpec train_spec;
  std::vector<std::filesystem::path> train_files;
  std::vector<std::filesystem::path> dev_files;
  std::map<std::string, std::filesystem::path> test_files;  // keys "T1", "T2"
  std::map<std::string, std::string> notes;
};

struct SweepSpec {
  LangPair pair = {kDe, kEn};
  std::vector<int> alphas;  // mixture manifests, one per task per alpha
  bool matched = false;     // add matched_causal/matched_anticausal per task
  bool ssl = false;         // add supervised_equal_mix, +ST, +BT per task
  std::filesystem::path root;  // directory with the canonical corpus layout
};

// Canonical file layout under root (what the pipeline subcommands emit):
//   corpus.<src>-<tgt>.{train,dev,test}.jsonl   split corpora per direction
//   mix.<pair>.a<alpha>.jsonl                   alpha = share of the
//                                               pair-canonical direction
//   matched.<pair>.{causal,anticausal}.jsonl    pair-canonical labels
//   ssl.<pair>.sup.jsonl                        equal mix of the half1 sets
//   pseudo.<task>.{st,bt}.jsonl                 pseudo-parallel corpora
std::vector<TrainManifest> plan_sweep(const SweepSpec& spec);

// Writes <out_dir>/<experiment_id>.json per manifest. Ids must be unique
// and every referenced file must exist.
void emit_manifests(const std::vector<TrainManifest>& manifests,
                    const std::filesystem::path& out_dir);

TrainManifest read_manifest(const std::filesystem::path& path);

}  // namespace causalmt
