#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

// Hashed bag of unigrams and bigrams over lowercase word tokens. Entry
// weights are log(1 + tf) and the vector is L2-normalized, so the dot
// product of two embeddable vectors is their cosine.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;  // strictly increasing dims
  double norm = 0.0;

  bool embeddable() const { return norm > 0.0; }
  bool operator==(const SparseVector&) const = default;
};

std::uint64_t fnv1a64(std::string_view bytes);
// Folds a 64-bit hash into the 2^20-dimension feature space.
std::uint32_t fold_dim(std::uint64_t h);

inline constexpr std::uint32_t kEmbedDims = 1u << 20;

SparseVector embed_builtin(std::string_view text, LanguageCode lang);
std::vector<SparseVector> embed_all_serial(const std::vector<std::string>& texts,
                                           LanguageCode lang);
// Parallel twin of embed_all_serial; output is element-identical.
std::vector<SparseVector> embed_all(const std::vector<std::string>& texts, LanguageCode lang);

double cosine(const SparseVector& a, const SparseVector& b);
double cosine(const std::vector<double>& a, const std::vector<double>& b);

struct DenseEmbeddings {
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> by_id;
};

// File format: header "causalmt-emb/1 dim=<D> count=<N>", then one record
// per line: id TAB D space-separated floats. Vectors are L2-normalized on
// load; zero vectors, duplicate ids, and non-finite values are rejected.
DenseEmbeddings load_embeddings(std::istream& in, std::string_view source_name);
DenseEmbeddings load_embeddings(const std::filesystem::path& path);

void write_embeddings(const DenseEmbeddings& emb, std::ostream& out);
void write_embeddings(const DenseEmbeddings& emb, const std::filesystem::path& path);

}  // namespace causalmt
