#include "adjnet/tokenizer.hpp"

#include <locale.h>
#include <wctype.h>

#include <algorithm>
#include <ostream>
#include <random>

#include "adjnet/error.hpp"

namespace adjnet {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one UTF-8 scalar starting at `pos`, advancing it. Malformed
// sequences yield U+FFFD, which is not a word character.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos++]);
  if (lead < 0x80) return lead;
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    return kReplacement;
  }
  for (int i = 0; i < extra; ++i) {
    if (pos >= s.size()) return kReplacement;
    const auto c = static_cast<unsigned char>(s[pos]);
    if ((c & 0xC0) != 0x80) return kReplacement;
    cp = (cp << 6) | (c & 0x3F);
    ++pos;
  }
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode character classes come from the C library's UTF-8 locale, which is
// independent of whatever the process locale happens to be.
class UnicodeClasses {
 public:
  UnicodeClasses() {
    for (const char* name : {"C.UTF-8", "C.utf8", "en_US.UTF-8"}) {
      loc_ = newlocale(LC_ALL_MASK, name, static_cast<locale_t>(nullptr));
      if (loc_ != static_cast<locale_t>(nullptr)) break;
    }
  }
  ~UnicodeClasses() {
    if (loc_ != static_cast<locale_t>(nullptr)) freelocale(loc_);
  }
  UnicodeClasses(const UnicodeClasses&) = delete;
  UnicodeClasses& operator=(const UnicodeClasses&) = delete;

  bool is_word_char(char32_t cp) const {
    if (cp == U'-') return true;
    if (cp < 0x80 || loc_ == static_cast<locale_t>(nullptr)) {
      return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') ||
             (cp >= U'0' && cp <= U'9');
    }
    return iswalnum_l(static_cast<wint_t>(cp), loc_) != 0;
  }

  char32_t lower(char32_t cp) const {
    if (cp < 0x80 || loc_ == static_cast<locale_t>(nullptr)) {
      return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp;
    }
    return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc_));
  }

 private:
  locale_t loc_ = static_cast<locale_t>(nullptr);
};

const UnicodeClasses& classes() {
  static const UnicodeClasses instance;
  return instance;
}

}  // namespace

TokenStream TokenStream::from_words(std::span<const std::string> words) {
  TokenStream ts;
  ts.ids_.reserve(words.size());
  for (const auto& w : words) ts.push(w);
  return ts;
}

void TokenStream::push(std::string_view word) {
  auto [it, inserted] =
      lookup_.try_emplace(std::string(word), static_cast<TokenId>(vocab_.size()));
  if (inserted) vocab_.emplace_back(word);
  ids_.push_back(it->second);
}

std::vector<std::string> TokenStream::words() const {
  std::vector<std::string> out;
  out.reserve(ids_.size());
  for (auto id : ids_) out.push_back(vocab_[id]);
  return out;
}

std::int64_t TokenStream::find(std::string_view word) const {
  auto it = lookup_.find(std::string(word));
  return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

TokenStream tokenize(std::string_view utf8_text) {
  const auto& cls = classes();
  std::vector<std::string> words;
  std::string current;

  auto flush = [&] {
    const auto first = current.find_first_not_of('-');
    if (first != std::string::npos) {
      const auto last = current.find_last_not_of('-');
      words.push_back(current.substr(first, last - first + 1));
    }
    current.clear();
  };

  std::size_t pos = 0;
  while (pos < utf8_text.size()) {
    const char32_t cp = decode_utf8(utf8_text, pos);
    if (cls.is_word_char(cp)) {
      encode_utf8(cls.lower(cp), current);
    } else {
      flush();
    }
  }
  flush();
  return TokenStream::from_words(words);
}

TokenStream shuffle_stream(const TokenStream& ts, std::uint64_t seed) {
  auto words = ts.words();
  std::mt19937_64 rng(seed);
  // Explicit Fisher-Yates: std::shuffle's draw sequence is library-specific.
  for (std::size_t i = words.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(words[i - 1], words[pick(rng)]);
  }
  return TokenStream::from_words(words);
}

std::vector<TokenStream> split_pieces(const TokenStream& ts, std::size_t pieces) {
  if (pieces == 0) throw InvalidArgument("pieces must be >= 1");
  if (pieces > ts.length()) {
    throw InvalidArgument("pieces (" + std::to_string(pieces) +
                          ") exceeds stream length (" + std::to_string(ts.length()) + ")");
  }
  const std::size_t base = ts.length() / pieces;
  const std::size_t longer = ts.length() % pieces;

  std::vector<TokenStream> out;
  out.reserve(pieces);
  std::size_t begin = 0;
  for (std::size_t p = 0; p < pieces; ++p) {
    const std::size_t len = base + (p < longer ? 1 : 0);
    std::vector<std::string> words;
    words.reserve(len);
    for (std::size_t i = begin; i < begin + len; ++i) words.push_back(ts.token_at(i));
    out.push_back(TokenStream::from_words(words));
    begin += len;
  }
  return out;
}

TokenStream prefix(const TokenStream& ts, std::size_t tokens) {
  tokens = std::min(tokens, ts.length());
  std::vector<std::string> words;
  words.reserve(tokens);
  for (std::size_t i = 0; i < tokens; ++i) words.push_back(ts.token_at(i));
  return TokenStream::from_words(words);
}

void write_tokens(std::ostream& os, const TokenStream& ts) {
  for (auto id : ts.ids()) os << ts.word(id) << '\n';
}

void write_vocab_tsv(std::ostream& os, const TokenStream& ts) {
  const auto vocab = ts.vocabulary();
  for (std::size_t i = 0; i < vocab.size(); ++i) os << i << '\t' << vocab[i] << '\n';
}

}  // namespace adjnet
