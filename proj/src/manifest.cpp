#include "causalmt/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace causalmt {

using json = nlohmann::json;

namespace {

std::filesystem::path split_file(const std::filesystem::path& root, Direction d,
                                 std::string_view split) {
  return root / ("corpus." + d.task_str() + "." + std::string(split) + ".jsonl");
}

TrainManifest base_manifest(const SweepSpec& spec, Direction task) {
  TrainManifest m;
  m.task = task;
  m.dev_files = {split_file(spec.root, task, "dev"),
                 split_file(spec.root, task.reversed(), "dev")};
  m.test_files["T1"] = split_file(spec.root, task, "test");
  m.test_files["T2"] = split_file(spec.root, task.reversed(), "test");
  return m;
}

}  // namespace

std::vector<TrainManifest> plan_sweep(const SweepSpec& spec) {
  Direction canonical = Direction::make(spec.pair.first, spec.pair.second);
  std::vector<TrainManifest> out;

  for (Direction task : {canonical, canonical.reversed()}) {
    for (int alpha : spec.alphas) {
      if (alpha < 0 || alpha > 100)
        throw Error("mixture alpha must be in [0,100], got " + std::to_string(alpha));
      // Mixture files are named by the pair-canonical direction's share.
      int file_alpha = task == canonical ? alpha : 100 - alpha;
      TrainManifest m = base_manifest(spec, task);
      m.experiment_id = task.task_str() + ".mix-a" + std::to_string(alpha);
      m.train_spec = TrainSpec::mixture_of(alpha);
      m.train_files = {spec.root / ("mix." + spec.pair.str() + ".a" +
                                    std::to_string(file_alpha) + ".jsonl")};
      m.notes["train_spec"] = m.train_spec.str();
      m.notes["alpha"] = std::to_string(alpha);
      out.push_back(std::move(m));
    }

    if (spec.matched) {
      for (TrainKind kind : {TrainKind::matched_causal, TrainKind::matched_anticausal}) {
        // The pair-canonical file labels causal = first->second; a task in
        // the other direction trains on the opposite file.
        bool wants_canonical_file =
            (kind == TrainKind::matched_causal) == (task == canonical);
        TrainManifest m = base_manifest(spec, task);
        m.experiment_id = task.task_str() + (kind == TrainKind::matched_causal
                                                 ? ".matched-causal"
                                                 : ".matched-anticausal");
        m.train_spec = TrainSpec::of(kind);
        m.train_files = {spec.root /
                         ("matched." + spec.pair.str() +
                          (wants_canonical_file ? ".causal.jsonl" : ".anticausal.jsonl"))};
        m.notes["train_spec"] = m.train_spec.str();
        out.push_back(std::move(m));
      }
    }

    if (spec.ssl) {
      auto sup_file = spec.root / ("ssl." + spec.pair.str() + ".sup.jsonl");
      TrainManifest base = base_manifest(spec, task);
      base.experiment_id = task.task_str() + ".ssl-base";
      base.train_spec = TrainSpec::of(TrainKind::supervised_equal_mix);
      base.train_files = {sup_file};
      base.notes["train_spec"] = base.train_spec.str();
      out.push_back(std::move(base));

      for (TrainKind kind : {TrainKind::plus_st, TrainKind::plus_bt}) {
        bool st = kind == TrainKind::plus_st;
        TrainManifest m = base_manifest(spec, task);
        m.experiment_id = task.task_str() + (st ? ".ssl-st" : ".ssl-bt");
        m.train_spec = TrainSpec::of(kind);
        m.train_files = {sup_file, spec.root / ("pseudo." + task.task_str() +
                                                (st ? ".st.jsonl" : ".bt.jsonl"))};
        m.notes["train_spec"] = m.train_spec.str();
        m.notes["ssl_method"] = st ? "self_training" : "back_translation";
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

namespace {

constexpr std::string_view kManifestFormat = "causalmt-manifest/1";

}  // namespace

void emit_manifests(const std::vector<TrainManifest>& manifests,
                    const std::filesystem::path& out_dir) {
  std::set<std::string> ids;
  for (const auto& m : manifests) {
    if (m.experiment_id.empty()) throw Error("manifest with empty experiment_id");
    if (!ids.insert(m.experiment_id).second)
      throw Error("duplicate experiment_id '" + m.experiment_id + "' in manifest batch");
    auto check = [&](const std::filesystem::path& p) {
      if (!std::filesystem::exists(p))
        throw Error("manifest '" + m.experiment_id + "' references missing file '" +
                    p.string() + "'");
    };
    for (const auto& p : m.train_files) check(p);
    for (const auto& p : m.dev_files) check(p);
    for (const auto& [half, p] : m.test_files) check(p);
    if (!m.test_files.count("T1") || !m.test_files.count("T2"))
      throw Error("manifest '" + m.experiment_id + "' needs T1 and T2 test files");
  }

  std::filesystem::create_directories(out_dir);
  for (const auto& m : manifests) {
    json j{
        {"format", kManifestFormat},
        {"experiment_id", m.experiment_id},
        {"task", m.task.task_str()},
        {"train_spec", m.train_spec.str()},
    };
    json train = json::array();
    for (const auto& p : m.train_files) train.push_back(p.string());
    j["train_files"] = std::move(train);
    json dev = json::array();
    for (const auto& p : m.dev_files) dev.push_back(p.string());
    j["dev_files"] = std::move(dev);
    json test = json::object();
    for (const auto& [half, p] : m.test_files) test[half] = p.string();
    j["test_files"] = std::move(test);
    json notes = json::object();
    for (const auto& [k, v] : m.notes) notes[k] = v;
    j["notes"] = std::move(notes);

    auto path = out_dir / (m.experiment_id + ".json");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "' for writing");
    f << j.dump(2) << '\n';
    if (!f.good()) throw Error("write failed for '" + path.string() + "'");
  }
}

TrainManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed JSON: " + e.what());
  }
  TrainManifest m;
  try {
    if (j.at("format").get<std::string>() != kManifestFormat)
      throw Error("unsupported format '" + j.at("format").get<std::string>() + "'");
    m.experiment_id = j.at("experiment_id").get<std::string>();
    m.task = Direction::parse_task(j.at("task").get<std::string>());
    m.train_spec = TrainSpec::parse(j.at("train_spec").get<std::string>());
    for (const auto& p : j.at("train_files")) m.train_files.push_back(p.get<std::string>());
    for (const auto& p : j.at("dev_files")) m.dev_files.push_back(p.get<std::string>());
    for (const auto& [half, p] : j.at("test_files").items())
      m.test_files[half] = p.get<std::string>();
    if (j.contains("notes"))
      for (const auto& [k, v] : j.at("notes").items()) m.notes[k] = v.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(path.string() + ": malformed manifest: " + e.what());
  }
  if (m.experiment_id.empty()) throw Error(path.string() + ": empty experiment_id");
  return m;
}

}  // namespace causalmt
