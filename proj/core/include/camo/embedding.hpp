#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "camo/vector.hpp"

namespace camo {

/// Character n-gram hashing parameters. Equal configs give bit-identical
/// embeddings for every input string.
struct NgramConfig {
  int min_n = 3;
  int max_n = 6;
  int dim = 100;
  std::uint64_t bucket_count = 2'000'000;
  std::uint64_t seed = 42;

  /// Throws ConfigError unless 1 <= min_n <= max_n <= 16, dim >= 2 and
  /// bucket_count >= 1.
  void validate() const;

  bool operator==(const NgramConfig&) const = default;
};

/// Substrings of "<token>" with length in [min_n, max_n], shortest first and
/// left to right within a length, followed by the whole wrapped token unless
/// it was already emitted as an n-gram. Works on bytes. Leading/trailing
/// whitespace is trimmed; an empty result throws InvalidInput.
std::vector<std::string> extract_ngrams(std::string_view token, const NgramConfig& cfg);

/// The pseudorandom [-1, 1]^dim vector assigned to one hash bucket.
std::vector<double> bucket_vector(std::uint64_t bucket, const NgramConfig& cfg);

/// Bucket index of an n-gram: (fnv1a64(ngram) ^ seed) % bucket_count.
std::uint64_t ngram_bucket(std::string_view ngram, const NgramConfig& cfg) noexcept;

/// Mean of the token's n-gram bucket vectors, L2-normalized.
EmbeddingVector hashed_embed(std::string_view token, const NgramConfig& cfg);

/// Maps filename strings to unit vectors. Implementations are immutable
/// after construction and safe to share between threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Total over non-empty strings; deterministic.
  virtual EmbeddingVector embed(std::string_view token) const = 0;
  virtual int dim() const noexcept = 0;
  /// Identifies the provider and its configuration; contexts built from one
  /// provider refuse to be scored with another.
  virtual std::string id() const = 0;
};

class HashedEmbedder final : public EmbeddingProvider {
 public:
  explicit HashedEmbedder(NgramConfig cfg);

  EmbeddingVector embed(std::string_view token) const override;
  int dim() const noexcept override { return cfg_.dim; }
  std::string id() const override;

  const NgramConfig& config() const noexcept { return cfg_; }

 private:
  NgramConfig cfg_;
};

/// Pretrained vectors from the textual ".vec" format, with hashed n-gram
/// fallback for out-of-vocabulary tokens. Stored vectors are normalized on
/// load.
class TextVectorEmbedder final : public EmbeddingProvider {
 public:
  EmbeddingVector embed(std::string_view token) const override;
  int dim() const noexcept override { return fallback_.dim(); }
  std::string id() const override;

  std::size_t vocabulary_size() const noexcept { return table_.size(); }
  bool contains(std::string_view token) const;

 private:
  friend std::unique_ptr<TextVectorEmbedder> load_text_vectors(
      const std::filesystem::path&, const NgramConfig&);

  TextVectorEmbedder(std::string source, NgramConfig cfg);

  std::string source_;
  HashedEmbedder fallback_;
  std::unordered_map<std::string, EmbeddingVector> table_;
};

/// Parses a textual vector file. Throws ParseError (with line number) on a
/// malformed header or row, ConfigError when the header dimension differs
/// from cfg.dim, InvalidInput when the file cannot be opened.
std::unique_ptr<TextVectorEmbedder> load_text_vectors(const std::filesystem::path& path,
                                                      const NgramConfig& cfg);

}  // namespace camo
