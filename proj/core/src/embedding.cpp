#include "camo/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "camo/error.hpp"
#include "camo/geometry.hpp"
#include "camo/random.hpp"

namespace camo {

namespace {

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

void NgramConfig::validate() const {
  if (min_n < 1 || min_n > max_n || max_n > 16) {
    throw ConfigError("n-gram lengths must satisfy 1 <= min_n <= max_n <= 16");
  }
  if (dim < 2) throw ConfigError("embedding dimension must be >= 2");
  if (bucket_count < 1) throw ConfigError("bucket_count must be >= 1");
}

std::vector<std::string> extract_ngrams(std::string_view token, const NgramConfig& cfg) {
  cfg.validate();
  const std::string_view body = trim(token);
  if (body.empty()) throw InvalidInput("extract_ngrams: empty token");

  std::string wrapped;
  wrapped.reserve(body.size() + 2);
  wrapped.push_back('<');
  wrapped.append(body);
  wrapped.push_back('>');

  const auto len = static_cast<int>(wrapped.size());
  std::vector<std::string> grams;
  for (int n = cfg.min_n; n <= cfg.max_n && n <= len; ++n) {
    for (int start = 0; start + n <= len; ++start) {
      grams.emplace_back(wrapped.substr(static_cast<std::size_t>(start),
                                        static_cast<std::size_t>(n)));
    }
  }
  // The whole wrapped token was already produced iff its length is in range.
  if (len < cfg.min_n || len > cfg.max_n) grams.push_back(std::move(wrapped));
  return grams;
}

std::uint64_t ngram_bucket(std::string_view ngram, const NgramConfig& cfg) noexcept {
  return (fnv1a64(ngram) ^ cfg.seed) % cfg.bucket_count;
}

std::vector<double> bucket_vector(std::uint64_t bucket, const NgramConfig& cfg) {
  std::vector<double> v(static_cast<std::size_t>(cfg.dim));
  const std::uint64_t key = mix64(cfg.seed ^ mix64(bucket));
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::uint64_t h = mix64(key + mix64(j));
    v[j] = static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

EmbeddingVector hashed_embed(std::string_view token, const NgramConfig& cfg) {
  const auto grams = extract_ngrams(token, cfg);
  std::vector<double> acc(static_cast<std::size_t>(cfg.dim), 0.0);
  for (const auto& g : grams) {
    const auto bv = bucket_vector(ngram_bucket(g, cfg), cfg);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += bv[j];
  }
  const auto count = static_cast<double>(grams.size());
  for (double& a : acc) a /= count;
  return l2_normalize(EmbeddingVector(std::move(acc)));
}

HashedEmbedder::HashedEmbedder(NgramConfig cfg) : cfg_(cfg) { cfg_.validate(); }

EmbeddingVector HashedEmbedder::embed(std::string_view token) const {
  return hashed_embed(token, cfg_);
}

std::string HashedEmbedder::id() const {
  std::ostringstream os;
  os << "hashed:n" << cfg_.min_n << '-' << cfg_.max_n << ":d" << cfg_.dim << ":b"
     << cfg_.bucket_count << ":s" << cfg_.seed;
  return os.str();
}

TextVectorEmbedder::TextVectorEmbedder(std::string source, NgramConfig cfg)
    : source_(std::move(source)), fallback_(cfg) {}

bool TextVectorEmbedder::contains(std::string_view token) const {
  return table_.find(std::string(trim(token))) != table_.end();
}

EmbeddingVector TextVectorEmbedder::embed(std::string_view token) const {
  const auto it = table_.find(std::string(trim(token)));
  if (it != table_.end()) return it->second;
  return fallback_.embed(token);
}

std::string TextVectorEmbedder::id() const {
  return "vec:" + source_ + "+" + fallback_.id();
}

std::unique_ptr<TextVectorEmbedder> load_text_vectors(const std::filesystem::path& path,
                                                      const NgramConfig& cfg) {
  cfg.validate();
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open vector file: " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::size_t vocab = 0;
  int file_dim = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing header", line_no + 1);
    ++line_no;
    if (!trim(line).empty()) break;
  }
  {
    const auto fields = split_spaces(trim(line));
    if (fields.size() != 2 || !parse_number(fields[0], vocab) ||
        !parse_number(fields[1], file_dim) || file_dim < 1) {
      throw ParseError("header must be \"<vocab_size> <dim>\"", line_no);
    }
  }
  if (file_dim != cfg.dim) {
    throw ConfigError("vector file dimension " + std::to_string(file_dim) +
                      " does not match configured dimension " + std::to_string(cfg.dim));
  }

  auto provider = std::unique_ptr<TextVectorEmbedder>(
      new TextVectorEmbedder(path.filename().string(), cfg));
  provider->table_.reserve(std::min<std::size_t>(vocab, 1u << 20));
  const auto d = static_cast<std::size_t>(file_dim);
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_spaces(body);
    if (fields.size() != d + 1) {
      throw ParseError("expected token followed by " + std::to_string(d) + " values", line_no);
    }
    std::vector<double> values(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (!parse_number(fields[j + 1], values[j]) || !std::isfinite(values[j])) {
        throw ParseError("invalid number '" + std::string(fields[j + 1]) + "'", line_no);
      }
    }
    EmbeddingVector raw(std::move(values));
    if (!(raw.norm() > 1e-12)) throw ParseError("zero vector", line_no);
    auto [it, inserted] =
        provider->table_.emplace(std::string(fields[0]), l2_normalize(raw));
    if (!inserted) throw ParseError("duplicate token '" + it->first + "'", line_no);
  }
  return provider;
}

}  // namespace camo
