#include "causalmt/extraction.hpp"

#include <cctype>

#include "causalmt/text.hpp"
#include "causalmt/unicode.hpp"

namespace causalmt {

namespace {

struct Tag {
  std::string name;
  std::map<std::string, std::string> attrs;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

Tag parse_tag(std::string_view body, std::size_t offset) {
  auto fail = [&](const std::string& msg) -> Error {
    return Error("byte " + std::to_string(offset) + ": " + msg);
  };
  Tag tag;
  std::size_t i = 0;
  while (i < body.size() && is_name_char(body[i])) tag.name += body[i++];
  if (tag.name.empty()) throw fail("markup tag without a name");
  while (i < body.size()) {
    while (i < body.size() && body[i] == ' ') ++i;
    if (i == body.size()) break;
    std::string key;
    while (i < body.size() && is_name_char(body[i])) key += body[i++];
    if (key.empty() || i == body.size() || body[i] != '=')
      throw fail("malformed attribute in " + tag.name + " tag");
    ++i;
    if (i == body.size() || body[i] != '"')
      throw fail("attribute " + key + " in " + tag.name + " tag is not quoted");
    ++i;
    auto close = body.find('"', i);
    if (close == std::string_view::npos)
      throw fail("unterminated attribute " + key + " in " + tag.name + " tag");
    tag.attrs[key] = std::string(body.substr(i, close - i));
    i = close + 1;
  }
  return tag;
}

std::optional<LanguageCode> parse_speaker_lang(const std::string& value,
                                               std::size_t offset,
                                               std::vector<std::string>& warnings) {
  std::string low;
  for (char c : value) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      low.clear();
      break;
    }
    low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (low.size() != 2) {
    warnings.push_back("byte " + std::to_string(offset) + ": unknown language code '" +
                       value + "', utterance kept untagged");
    return std::nullopt;
  }
  return LanguageCode::parse(low);
}

}  // namespace

TranscriptParse parse_transcript(std::string_view raw, LanguageCode doc_lang) {
  TranscriptParse result;
  std::string chapter_id;
  std::size_t position = 0;
  bool in_speaker = false;
  Utterance current;
  std::string current_text;

  auto flush = [&]() {
    if (!in_speaker) return;
    current.text = uni::nfc(normalize_ws(current_text));
    result.utterances.push_back(std::move(current));
    current = Utterance{};
    current_text.clear();
    in_speaker = false;
  };

  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto eol = raw.find('\n', pos);
    std::string_view line = raw.substr(pos, eol == std::string_view::npos ? raw.size() - pos
                                                                          : eol - pos);
    std::size_t line_offset = pos;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    bool markup = !line.empty() && line.front() == '<' && line.back() == '>';
    bool speaker_or_chapter =
        line.starts_with("<SPEAKER") || line.starts_with("<CHAPTER");
    if (!markup && speaker_or_chapter)
      throw Error("byte " + std::to_string(line_offset) + ": unterminated markup tag");

    if (markup) {
      Tag tag = parse_tag(line.substr(1, line.size() - 2), line_offset);
      if (tag.name == "CHAPTER") {
        flush();
        auto it = tag.attrs.find("ID");
        if (it == tag.attrs.end())
          throw Error("byte " + std::to_string(line_offset) + ": CHAPTER tag without ID");
        chapter_id = it->second;
        position = 0;
      } else if (tag.name == "SPEAKER") {
        flush();
        in_speaker = true;
        current.transcript_id = chapter_id;
        current.position = position++;
        current.doc_lang = doc_lang;
        if (auto it = tag.attrs.find("LANGUAGE"); it != tag.attrs.end())
          current.speaker_lang = parse_speaker_lang(it->second, line_offset, result.warnings);
      }
      // other markup lines carry no content
    } else if (in_speaker && !line.empty()) {
      if (!current_text.empty()) current_text += ' ';
      current_text.append(line);
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();
  return result;
}

OriginLabel label_origin(const Utterance& u) {
  if (!u.speaker_lang) return OriginLabel::unknown;
  return *u.speaker_lang == u.doc_lang ? OriginLabel::original : OriginLabel::translated;
}

ExtractionResult build_directed_corpora(const std::vector<Utterance>& side_x,
                                        const std::vector<Utterance>& side_y) {
  if (side_x.size() != side_y.size())
    throw Error("aligned sides differ in length: " + std::to_string(side_x.size()) + " vs " +
                std::to_string(side_y.size()));
  if (side_x.empty()) throw Error("cannot build corpora from empty utterance streams");

  LanguageCode x = side_x.front().doc_lang;
  LanguageCode y = side_y.front().doc_lang;
  for (const auto& u : side_x)
    if (u.doc_lang != x) throw Error("x side mixes document languages");
  for (const auto& u : side_y)
    if (u.doc_lang != y) throw Error("y side mixes document languages");

  ExtractionResult r;
  r.x_to_y.lang_pair = r.y_to_x.lang_pair = LangPair::of(x, y);
  r.x_to_y.direction = Direction::make(x, y);
  r.y_to_x.direction = Direction::make(y, x);

  auto discard = [&](const char* reason) {
    ++r.discarded;
    ++r.discard_reasons[reason];
  };

  for (std::size_t i = 0; i < side_x.size(); ++i) {
    const Utterance& ux = side_x[i];
    const Utterance& uy = side_y[i];
    if (label_origin(ux) == OriginLabel::unknown || label_origin(uy) == OriginLabel::unknown) {
      discard("unknown_origin");
      continue;
    }
    LanguageCode tx = *ux.speaker_lang;
    LanguageCode ty = *uy.speaker_lang;
    if (!r.x_to_y.lang_pair.contains(tx) || !r.x_to_y.lang_pair.contains(ty)) {
      discard("third_language");
      continue;
    }
    if (tx != ty) {
      discard(tx == x ? "both_original" : "both_translated");
      continue;
    }
    if (ux.text.empty() || uy.text.empty()) {
      discard("empty_text");
      continue;
    }
    DirectedPair p;
    p.id = ux.transcript_id + ":" + std::to_string(ux.position);
    p.text[x] = ux.text;
    p.text[y] = uy.text;
    p.meta["transcript_id"] = ux.transcript_id;
    p.meta["position"] = std::to_string(ux.position);
    p.meta["speaker_lang_tag"] = tx.str();
    if (tx == x) {
      p.direction = r.x_to_y.direction;
      r.x_to_y.pairs.push_back(std::move(p));
    } else {
      p.direction = r.y_to_x.direction;
      r.y_to_x.pairs.push_back(std::move(p));
    }
  }
  return r;
}

}  // namespace causalmt
