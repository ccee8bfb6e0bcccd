#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "causalmt/types.hpp"

namespace causalmt {

// Removes joint-text duplicates: the key is the NFC + whitespace-normalized
// concatenation of both sides, case-sensitive. First occurrence wins and
// relative order is preserved.
DirectedCorpus dedup(const DirectedCorpus& c, std::size_t* n_removed = nullptr);

// Subsamples the larger of two opposite-direction corpora of one pair down
// to the size of the smaller, uniformly without replacement, preserving
// relative order. No-op when sizes already agree.
void downsample_to_match(DirectedCorpus& a, DirectedCorpus& b, std::uint64_t seed);

struct SplitResult {
  DirectedCorpus train, dev, test;
};

// Draws dev and test sets by seeded uniform sampling without replacement;
// the remainder is train. Each subset keeps the source relative order.
SplitResult split_train_dev_test(const DirectedCorpus& c, std::size_t dev_n,
                                 std::size_t test_n, std::uint64_t seed);

// JSON-lines corpus file: a header object, then one object per pair.
// UTF-8, LF line endings, no BOM. Texts are NFC-normalized on read.
void write_corpus(const DirectedCorpus& c, std::ostream& out);
void write_corpus(const DirectedCorpus& c, const std::filesystem::path& path);
DirectedCorpus read_corpus(std::istream& in, std::string_view source_name);
DirectedCorpus read_corpus(const std::filesystem::path& path);

}  // namespace causalmt
