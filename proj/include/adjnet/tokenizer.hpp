#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adjnet {

using TokenId = std::uint32_t;

/// An ordered word sequence with a dense vocabulary.
///
/// Token ids are assigned 0..V-1 in order of first occurrence, so the id of a
/// word doubles as its node id in the word-adjacency network built from the
/// stream.
class TokenStream {
 public:
  TokenStream() = default;

  /// Builds a stream from already-normalized words.
  static TokenStream from_words(std::span<const std::string> words);

  std::size_t length() const { return ids_.size(); }
  std::size_t vocabulary_size() const { return vocab_.size(); }
  bool empty() const { return ids_.empty(); }

  std::span<const TokenId> ids() const { return ids_; }
  const std::string& word(TokenId id) const { return vocab_[id]; }
  const std::string& token_at(std::size_t pos) const { return vocab_[ids_[pos]]; }
  std::span<const std::string> vocabulary() const { return vocab_; }

  std::vector<std::string> words() const;

  /// Id of `word`, or -1 when absent.
  std::int64_t find(std::string_view word) const;

  friend bool operator==(const TokenStream& a, const TokenStream& b) {
    return a.ids_ == b.ids_ && a.vocab_ == b.vocab_;
  }

 private:
  void push(std::string_view word);

  std::vector<TokenId> ids_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> lookup_;
};

// Words are maximal runs of Unicode letters, digits and hyphens, lowercased,
// with leading and trailing hyphens stripped. Everything else separates.
TokenStream tokenize(std::string_view utf8_text);

/// Fisher-Yates permutation of the tokens; vocabulary is re-indexed by first
/// appearance in the shuffled order.
TokenStream shuffle_stream(const TokenStream& ts, std::uint64_t seed);

/// Contiguous pieces whose lengths differ by at most one (longer pieces first).
std::vector<TokenStream> split_pieces(const TokenStream& ts, std::size_t pieces);

/// Prefix holding the first `tokens` tokens, with its own vocabulary.
TokenStream prefix(const TokenStream& ts, std::size_t tokens);

void write_tokens(std::ostream& os, const TokenStream& ts);
void write_vocab_tsv(std::ostream& os, const TokenStream& ts);

}  // namespace adjnet
