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

#ifndef HETSUM_CORPUS_HPP_
#define HETSUM_CORPUS_HPP_

// Document model: ingestion, sentence segmentation, tokenization and the
// built-in lexicon tagger. Everything downstream consumes these types.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hetsum {

// Coarse tagset. The word graph only needs stable tags for vertex identity
// and a verb check, so nothing finer is modelled.
enum class PosTag { kNoun, kVerb, kAdj, kAdv, kPron, kDet, kAdp, kConj, kNum, kPunct, kX };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

struct Token {
  std::string surface;
  std::string lower;
  PosTag pos = PosTag::kX;
};

struct Sentence {
  std::string doc_id;
  std::size_t index = 0;
  std::vector<Token> tokens;
  std::string text;

  std::vector<std::string> lowered() const;
};

struct Document {
  std::string id;
  std::string raw_text;
  std::vector<Sentence> sentences;
  std::optional<std::string> gold_summary;
};

// ASCII case folding; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view text);

// True when every character of `token` is punctuation (ASCII or one of the
// common UTF-8 quote/dash code points).
bool is_punctuation(std::string_view token);

// Word -> tag table, one `word<TAB>TAG` per line.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::istream& in);

  void add(std::string word, PosTag tag);
  std::optional<PosTag> lookup(std::string_view lower) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

// Lexicon lookup, then suffix rules (-ly ADV, -ing/-ed VERB, -s NOUN), then X.
class Tagger {
 public:
  explicit Tagger(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

  PosTag tag_word(std::string_view surface) const;
  std::vector<Token> tag(std::string_view sentence_text) const;

 private:
  Lexicon lexicon_;
};

// Tagger over resources/lexicon.tsv, loaded once.
const Tagger& default_tagger();

std::vector<std::string> segment_sentences(std::string_view raw_text);
std::vector<std::string> tokenize(std::string_view sentence_text);
std::vector<Token> tag_tokens(std::string_view sentence_text, const Tagger& tagger = default_tagger());

// Joins surfaces with single spaces, attaching closing punctuation to the
// preceding word and opening brackets/quotes to the following one.
std::string detokenize(std::span<const std::string> surfaces);

Document make_document(std::string id, std::string raw_text, std::optional<std::string> summary,
                       const Tagger& tagger = default_tagger());

struct IngestResult {
  std::vector<Document> documents;
  std::size_t skipped_empty = 0;
};

// JSON Lines: {"id": str?, "text": str, "summary": str?}. Blank lines are
// ignored; a line with empty "text" is skipped and counted; anything else
// malformed throws ParseError carrying the 1-based line number.
IngestResult ingest_jsonl(const std::filesystem::path& path, const Tagger& tagger = default_tagger());
IngestResult ingest_jsonl(std::istream& in, const Tagger& tagger = default_tagger());

void write_jsonl(std::ostream& out, std::span<const Document> documents);

}  // namespace hetsum

#endif  // HETSUM_CORPUS_HPP_
