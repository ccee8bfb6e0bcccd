#pragma once

#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace causalmt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-letter ISO 639-1 code, lowercase ASCII.
class LanguageCode {
 public:
  constexpr LanguageCode() = default;

  static constexpr LanguageCode parse(std::string_view s) {
    if (s.size() != 2 || !is_lower_alpha(s[0]) || !is_lower_alpha(s[1]))
      throw Error("invalid language code '" + std::string(s) + "'");
    LanguageCode l;
    l.c_ = {s[0], s[1]};
    return l;
  }

  std::string str() const { return std::string(c_.data(), 2); }
  constexpr auto operator<=>(const LanguageCode&) const = default;

 private:
  static constexpr bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
  std::array<char, 2> c_{'?', '?'};
};

inline constexpr LanguageCode kEn = LanguageCode::parse("en");
inline constexpr LanguageCode kDe = LanguageCode::parse("de");
inline constexpr LanguageCode kFr = LanguageCode::parse("fr");
inline constexpr LanguageCode kEs = LanguageCode::parse("es");

// Human translation direction: text was authored in `origin` and translated
// into `derived` (the translationese side). The same struct doubles as a
// model/task direction, in which case origin = source language and
// derived = target language.
struct Direction {
  LanguageCode origin;
  LanguageCode derived;

  static Direction make(LanguageCode o, LanguageCode d) {
    if (o == d) throw Error("direction needs two distinct languages, got '" + o.str() + "'");
    return {o, d};
  }
  // "de->en"
  static Direction parse(std::string_view s);
  // "en-de" (model sense, source-target)
  static Direction parse_task(std::string_view s);

  Direction reversed() const { return {derived, origin}; }
  std::string str() const { return origin.str() + "->" + derived.str(); }
  std::string task_str() const { return origin.str() + "-" + derived.str(); }
  constexpr auto operator<=>(const Direction&) const = default;
};

// Unordered language pair, stored sorted.
struct LangPair {
  LanguageCode first;
  LanguageCode second;

  static LangPair of(LanguageCode a, LanguageCode b) {
    if (a == b) throw Error("language pair needs two distinct languages, got '" + a.str() + "'");
    return a < b ? LangPair{a, b} : LangPair{b, a};
  }
  static LangPair of(Direction d) { return of(d.origin, d.derived); }

  bool contains(LanguageCode l) const { return l == first || l == second; }
  LanguageCode other(LanguageCode l) const {
    if (l == first) return second;
    if (l == second) return first;
    throw Error("language '" + l.str() + "' not in pair " + str());
  }
  std::string str() const { return first.str() + "-" + second.str(); }
  constexpr auto operator<=>(const LangPair&) const = default;
};

enum class Split { unsplit, train, dev, test };

std::string_view split_name(Split s);
Split parse_split(std::string_view s);

// One aligned sentence pair with a known human translation direction.
struct DirectedPair {
  std::string id;
  std::map<LanguageCode, std::string> text;  // exactly the two pair languages
  Direction direction;
  std::map<std::string, std::string> meta;

  const std::string& text_for(LanguageCode l) const {
    auto it = text.find(l);
    if (it == text.end()) throw Error("pair '" + id + "' has no " + l.str() + " text");
    return it->second;
  }
  bool operator==(const DirectedPair&) const = default;
};

struct DirectedCorpus {
  LangPair lang_pair = {kDe, kEn};
  Direction direction = {kDe, kEn};
  Split split = Split::unsplit;
  std::vector<DirectedPair> pairs;

  bool operator==(const DirectedCorpus&) const = default;
};

using TokenList = std::vector<std::string>;

}  // namespace causalmt
