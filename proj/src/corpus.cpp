// Copyright 2026 The Hetsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetsum/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hetsum/error.hpp"
#include "hetsum/resources.hpp"
#include "json.hpp"

namespace hetsum {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 11> kTagNames = {"NOUN", "VERB", "ADJ",  "ADV",   "PRON", "DET",
                                                        "ADP",  "CONJ", "NUM",  "PUNCT", "X"};

// Words whose trailing period does not end a sentence.
constexpr std::array<std::string_view, 46> kAbbreviations = {
    "mr",   "mrs",  "ms",   "dr",  "prof", "sr",   "jr",  "st",   "vs",   "etc",  "e.g", "i.e",
    "inc",  "ltd",  "co",   "corp", "gen", "col",  "lt",  "sgt",  "capt", "rep",  "sen", "gov",
    "mt",   "no",   "jan",  "feb", "mar",  "apr",  "jun", "jul",  "aug",  "sep",  "sept", "oct",
    "nov",  "dec",  "u.s",  "u.k", "a.m",  "p.m",  "fig", "approx", "dept", "univ"};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Byte length of a punctuation character starting at text[i], 0 if none.
std::size_t punct_len(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
    const auto d = static_cast<unsigned char>(text[i + 2]);
    // en/em dash, single and double curly quotes, ellipsis
    if (d == 0x93 || d == 0x94 || (d >= 0x98 && d <= 0x9D) || d == 0xA6) return 3;
  }
  if (c == 0xC2 && i + 1 < text.size()) {
    const auto d = static_cast<unsigned char>(text[i + 1]);
    if (d == 0xAB || d == 0xBB) return 2;  // guillemets
  }
  return 0;
}

bool is_closing(std::string_view text, std::size_t i, std::size_t* len) {
  const char c = text[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') {
    *len = 1;
    return true;
  }
  if (text.substr(i, 3) == "\xE2\x80\x9D" || text.substr(i, 3) == "\xE2\x80\x99") {
    *len = 3;
    return true;
  }
  return false;
}

bool opens_sentence(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (std::isupper(c) || std::isdigit(c)) return true;
  if (c == '"' || c == '\'' || c == '(' || c == '[') return true;
  return text.substr(i, 3) == "\xE2\x80\x9C" || text.substr(i, 3) == "\xE2\x80\x98";
}

bool is_abbreviation(std::string_view word) {
  while (!word.empty() && punct_len(word, 0) == 1 && word.front() != '.') word.remove_prefix(1);
  if (word.empty()) return false;
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0]))) return true;  // initials
  const std::string lower = to_lower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_numeric(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.' && c != '%') {
      return false;
    }
  }
  return digit;
}

// Splits a punctuation run into tokens, keeping repeats of one character
// ("...", "--") together.
void push_punct_run(std::string_view run, std::vector<std::string>* out) {
  std::size_t i = 0;
  while (i < run.size()) {
    std::size_t len = std::max<std::size_t>(punct_len(run, i), 1);
    std::string_view unit = run.substr(i, len);
    std::size_t j = i + len;
    while (j + len <= run.size() && run.substr(j, len) == unit) j += len;
    out->emplace_back(run.substr(i, j - i));
    i = j;
  }
}

}  // namespace

std::string_view to_string(PosTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

std::vector<std::string> Sentence::lowered() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lower);
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = 0;
  while (i < token.size()) {
    const std::size_t len = punct_len(token, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  return parse(in);
}

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("lexicon entry without TAB", line_no);
    const auto tag = parse_pos_tag(trim(std::string_view(line).substr(tab + 1)));
    if (!tag) throw ParseError("unknown tag in lexicon", line_no);
    lexicon.add(to_lower(line.substr(0, tab)), *tag);
  }
  return lexicon;
}

void Lexicon::add(std::string word, PosTag tag) { entries_.insert_or_assign(std::move(word), tag); }

std::optional<PosTag> Lexicon::lookup(std::string_view lower) const {
  if (auto it = entries_.find(std::string(lower)); it != entries_.end()) return it->second;
  return std::nullopt;
}

PosTag Tagger::tag_word(std::string_view surface) const {
  if (is_punctuation(surface)) return PosTag::kPunct;
  if (is_numeric(surface)) return PosTag::kNum;
  const std::string lower = to_lower(surface);
  if (auto tag = lexicon_.lookup(lower)) return *tag;
  if (lower.size() > 3 && ends_with(lower, "ly")) return PosTag::kAdv;
  if (lower.size() > 4 && ends_with(lower, "ing")) return PosTag::kVerb;
  if (lower.size() > 3 && ends_with(lower, "ed")) return PosTag::kVerb;
  if (lower.size() > 2 && ends_with(lower, "s") && !ends_with(lower, "ss")) return PosTag::kNoun;
  return PosTag::kX;
}

std::vector<Token> Tagger::tag(std::string_view sentence_text) const {
  std::vector<Token> tokens;
  for (auto& surface : tokenize(sentence_text)) {
    Token t;
    t.lower = to_lower(surface);
    t.pos = tag_word(surface);
    t.surface = std::move(surface);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

const Tagger& default_tagger() {
  static const Tagger tagger(Lexicon::load(resource_path("lexicon.tsv")));
  return tagger;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    std::size_t len = 0;
    while (j < text.size() && is_closing(text, j, &len)) j += len;
    if (j < text.size() && !is_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    bool split = k == text.size() || opens_sentence(text, k);
    if (split && c == '.' && j == i + 1) {
      std::size_t w = i;
      while (w > start && !is_space(text[w - 1])) --w;
      split = !is_abbreviation(text.substr(w, i - w));
    }
    if (split) {
      if (auto s = trim(text.substr(start, j - start)); !s.empty()) out.emplace_back(s);
      start = k;
    }
    i = j;
  }
  if (start < text.size()) {
    if (auto s = trim(text.substr(start)); !s.empty()) out.emplace_back(s);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end])) ++end;
    std::string_view chunk = text.substr(i, end - i);
    i = end;
    if (chunk.empty()) continue;

    std::size_t lead = 0;
    while (lead < chunk.size()) {
      const std::size_t len = punct_len(chunk, lead);
      if (len == 0) break;
      lead += len;
    }
    if (lead == chunk.size()) {
      push_punct_run(chunk, &out);
      continue;
    }
    // Trailing punctuation, scanned backwards over whole code points.
    std::size_t tail = chunk.size();
    for (;;) {
      std::size_t found = 0;
      for (std::size_t len : {1u, 2u, 3u}) {
        if (tail >= lead + len + 1 && punct_len(chunk, tail - len) == len) {
          found = len;
          break;
        }
      }
      if (found == 0) break;
      tail -= found;
    }
    if (lead > 0) push_punct_run(chunk.substr(0, lead), &out);
    out.emplace_back(chunk.substr(lead, tail - lead));
    if (tail < chunk.size()) push_punct_run(chunk.substr(tail), &out);
  }
  return out;
}

std::vector<Token> tag_tokens(std::string_view sentence_text, const Tagger& tagger) {
  return tagger.tag(sentence_text);
}

std::string detokenize(std::span<const std::string> surfaces) {
  static constexpr std::array<std::string_view, 9> kAttachLeft = {".", ",", "!", "?", ";", ":", ")", "]", "%"};
  static constexpr std::array<std::string_view, 2> kAttachRight = {"(", "["};
  std::string out;
  bool glue_next = false;
  bool quote_open = false;  // straight double quotes alternate open/close
  for (const auto& s : surfaces) {
    const bool quote = s == "\"";
    const bool attach_left = std::find(kAttachLeft.begin(), kAttachLeft.end(), s) != kAttachLeft.end() ||
                             (is_punctuation(s) && s.find_first_not_of(".!?") == std::string::npos) ||
                             s.rfind("'", 0) == 0 || (quote && quote_open);
    if (!out.empty() && !glue_next && !attach_left) out.push_back(' ');
    out += s;
    glue_next = std::find(kAttachRight.begin(), kAttachRight.end(), s) != kAttachRight.end() || (quote && !quote_open);
    if (quote) quote_open = !quote_open;
  }
  return out;
}

Document make_document(std::string id, std::string raw_text, std::optional<std::string> summary,
                       const Tagger& tagger) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = std::move(raw_text);
  doc.gold_summary = std::move(summary);
  std::size_t index = 0;
  for (auto& text : segment_sentences(doc.raw_text)) {
    Sentence s;
    s.doc_id = doc.id;
    s.index = index++;
    s.tokens = tagger.tag(text);
    s.text = std::move(text);
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

IngestResult ingest_jsonl(const std::filesystem::path& path, const Tagger& tagger) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ingest_jsonl(in, tagger);
}

IngestResult ingest_jsonl(std::istream& in, const Tagger& tagger) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("record is not an object", line_no);
    auto text = record.find("text");
    if (text == record.end() || !text->is_string()) throw ParseError("missing string field \"text\"", line_no);

    std::string id = "doc-" + std::to_string(line_no);
    if (auto it = record.find("id"); it != record.end() && !it->is_null()) {
      if (it->is_string()) {
        id = it->get<std::string>();
      } else if (it->is_number_integer()) {
        id = std::to_string(it->get<long long>());
      } else {
        throw ParseError("field \"id\" must be a string", line_no);
      }
    }
    std::optional<std::string> summary;
    if (auto it = record.find("summary"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("field \"summary\" must be a string", line_no);
      summary = it->get<std::string>();
    }
    std::string raw = text->get<std::string>();
    if (trim(raw).empty()) {
      ++result.skipped_empty;
      continue;
    }
    result.documents.push_back(make_document(std::move(id), std::move(raw), std::move(summary), tagger));
  }
  if (in.bad()) throw IoError("read failure");
  return result;
}

void write_jsonl(std::ostream& out, std::span<const Document> documents) {
  for (const auto& d : documents) {
    json record = {{"id", d.id}, {"text", d.raw_text}};
    if (d.gold_summary) record["summary"] = *d.gold_summary;
    out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

}  // namespace hetsum
