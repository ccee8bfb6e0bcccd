#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "causalmt/causal.hpp"
#include "causalmt/types.hpp"

namespace causalmt {

enum class OutFormat { tsv, json };

OutFormat parse_out_format(std::string_view s);

struct IngestResult {
  std::vector<ScoreRecord> records;
  std::vector<std::string> warnings;
};

// Score TSV: experiment_id, task ("en-de"), train_spec, test_half
// ("T1"/"T2"), metric_name, value. A header row is recognized and skipped.
// When known_ids is given, unseen experiment ids produce warnings.
IngestResult ingest_scores(std::istream& in, std::string_view source_name,
                           const std::set<std::string>* known_ids = nullptr);
IngestResult ingest_scores(const std::filesystem::path& path,
                           const std::set<std::string>* known_ids = nullptr);

void write_scores(const std::vector<ScoreRecord>& records, std::ostream& out);

struct RenderOptions {
  OutFormat format = OutFormat::tsv;
  bool strict = false;      // missing cells raise instead of rendering "-"
  bool provenance = false;  // append the contributing experiment ids per row
  AceMode ace_mode = AceMode::sum;
};

// Wide grid: one row per alpha, T1/T2 columns per task.
std::string render_mixture_grid(const std::vector<ScoreRecord>& records,
                                const RenderOptions& opts);
// Baseline and +ST/+BT rows per task with per-half deltas and alignment.
std::string render_ssl_table(const std::vector<ScoreRecord>& records,
                             const RenderOptions& opts);
// Matched per-half scores, the causal-effect contrast, and the naive diff.
std::string render_ace_table(const std::vector<ScoreRecord>& records,
                             const RenderOptions& opts);

// One row per (corpus, language side): sample means, vocabulary size,
// passive share, both expansion orientations, and the complexity profile.
std::string render_corpus_stats(
    const std::vector<std::pair<std::string, const DirectedCorpus*>>& corpora,
    OutFormat format);

}  // namespace causalmt
