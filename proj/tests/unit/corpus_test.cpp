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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "hetsum/corpus.hpp"
#include "hetsum/error.hpp"

namespace hetsum {
namespace {

std::string squeeze(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\n' && c != '\t') out += c;
  }
  return out;
}

TEST(Segment, SplitsOnTerminalPunctuation) {
  EXPECT_EQ(segment_sentences("A b. C d."), (std::vector<std::string>{"A b.", "C d."}));
}

TEST(Segment, EmptyInput) { EXPECT_TRUE(segment_sentences("").empty()); }

TEST(Segment, InitialsDoNotSplit) {
  EXPECT_EQ(segment_sentences("Ask J. Smith. He knows."), (std::vector<std::string>{"Ask J. Smith.", "He knows."}));
}

TEST(Segment, AbbreviationGuard) {
  EXPECT_EQ(segment_sentences("Dr. Smith left. He ran."), (std::vector<std::string>{"Dr. Smith left.", "He ran."}));
}

TEST(Segment, NoSplitBeforeLowercase) {
  EXPECT_EQ(segment_sentences("It cost 3.5 dollars. so what"), (std::vector<std::string>{"It cost 3.5 dollars. so what"}));
}

TEST(Segment, QuotesAndDigits) {
  const auto s = segment_sentences("He said \"stop.\" Then he left! 42 people saw it? \"Yes.\"");
  EXPECT_EQ(s, (std::vector<std::string>{"He said \"stop.\"", "Then he left!", "42 people saw it?", "\"Yes.\""}));
}

TEST(Segment, PreservesNonWhitespaceCharacters) {
  const std::string raw = "First one.   Second: ends here?! Third (with brackets.) And Mr. Jones, Jr. came.\nLast";
  std::string joined;
  for (const auto& s : segment_sentences(raw)) joined += s;
  auto a = squeeze(raw), b = squeeze(joined);
  EXPECT_EQ(a, b);
}

TEST(Tokenize, PeelsPunctuation) {
  EXPECT_EQ(tokenize("\"Hello,\" she said... (quietly)."),
            (std::vector<std::string>{"\"", "Hello", ",", "\"", "she", "said", "...", "(", "quietly", ")", "."}));
}

TEST(Tag, LexiconExample) {
  const auto toks = tag_tokens("the cat ran .");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0].pos, PosTag::kDet);
  EXPECT_EQ(toks[1].pos, PosTag::kNoun);
  EXPECT_EQ(toks[2].pos, PosTag::kVerb);
  EXPECT_EQ(toks[3].pos, PosTag::kPunct);
  EXPECT_EQ(toks[1].lower, "cat");
}

TEST(Tag, PunctuationOnly) {
  const auto toks = tag_tokens(".");
  ASSERT_EQ(toks.size(), 1u);
  EXPECT_EQ(toks[0].pos, PosTag::kPunct);
}

TEST(Tag, SuffixRulesGolden) {
  const auto toks = tag_tokens("zorbified gloops");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].pos, PosTag::kVerb);  // -ed
  EXPECT_EQ(toks[1].pos, PosTag::kNoun);  // -s
  EXPECT_EQ(default_tagger().tag_word("blorpily"), PosTag::kAdv);
  EXPECT_EQ(default_tagger().tag_word("glorping"), PosTag::kVerb);
  EXPECT_EQ(default_tagger().tag_word("zorbiss"), PosTag::kX);  // -ss is not a plural
  EXPECT_EQ(default_tagger().tag_word("zxq"), PosTag::kX);
  EXPECT_EQ(default_tagger().tag_word("1,200"), PosTag::kNum);
}

TEST(Tag, LengthMatchesTokenizerAndLowerIsFolded) {
  const std::string s = "The Quick brown FOX jumped over 2 lazy dogs, didn't it?";
  const auto toks = tag_tokens(s);
  EXPECT_EQ(toks.size(), tokenize(s).size());
  for (const auto& t : toks) {
    EXPECT_FALSE(t.surface.empty());
    EXPECT_EQ(t.lower, to_lower(t.surface));
  }
}

TEST(PosTagNames, RoundTrip) {
  for (PosTag t : {PosTag::kNoun, PosTag::kVerb, PosTag::kAdj, PosTag::kAdv, PosTag::kPron, PosTag::kDet,
                   PosTag::kAdp, PosTag::kConj, PosTag::kNum, PosTag::kPunct, PosTag::kX}) {
    EXPECT_EQ(parse_pos_tag(to_string(t)), t);
  }
  EXPECT_FALSE(parse_pos_tag("VERBZ").has_value());
}

TEST(Lexicon, ParseRejectsUnknownTag) {
  std::istringstream good("run\tVERB\n\n# comment\nfast\tADV\n");
  const Lexicon lex = Lexicon::parse(good);
  EXPECT_EQ(lex.lookup("run"), PosTag::kVerb);
  std::istringstream bad("run\tVRB\n");
  EXPECT_THROW(Lexicon::parse(bad), ParseError);
}

TEST(Detokenize, AttachesPunctuation) {
  const std::vector<std::string> t{"He", "said", ",", "\"", "no", "\"", "(", "twice", ")", "."};
  EXPECT_EQ(detokenize(t), "He said, \"no\" (twice).");
}

TEST(Ingest, TwoValidLines) {
  std::istringstream in(R"({"id":"x","text":"One. Two."}
{"id":"y","text":"Three.","summary":"S"}
)");
  const auto r = ingest_jsonl(in);
  ASSERT_EQ(r.documents.size(), 2u);
  EXPECT_EQ(r.documents[0].id, "x");
  EXPECT_EQ(r.documents[1].id, "y");
  EXPECT_EQ(r.documents[0].sentences.size(), 2u);
  EXPECT_EQ(r.documents[0].sentences[1].index, 1u);
  EXPECT_EQ(r.documents[0].sentences[1].doc_id, "x");
  EXPECT_EQ(r.documents[1].gold_summary, "S");
  EXPECT_EQ(r.skipped_empty, 0u);
}

TEST(Ingest, EmptyTextSkipped) {
  std::istringstream in("{\"text\":\"\"}\n{\"text\":\"Hi there.\"}\n");
  const auto r = ingest_jsonl(in);
  EXPECT_EQ(r.skipped_empty, 1u);
  ASSERT_EQ(r.documents.size(), 1u);
  EXPECT_EQ(r.documents[0].id, "doc-2");
}

TEST(Ingest, DuplicatedTextKeptAsSeparateDocuments) {
  std::istringstream in("{\"text\":\"Same.\"}\n{\"text\":\"Same.\"}\n{\"text\":\"Other.\"}\n");
  const auto r = ingest_jsonl(in);
  ASSERT_EQ(r.documents.size(), 3u);
  std::vector<std::string> texts;
  for (const auto& d : r.documents) texts.push_back(d.raw_text);
  std::sort(texts.begin(), texts.end());
  EXPECT_EQ(std::unique(texts.begin(), texts.end()) - texts.begin(), 2);
}

TEST(Ingest, MalformedLineReportsLineNumber) {
  std::istringstream in("{\"text\":\"Ok.\"}\n{\"text\": oops}\n");
  try {
    ingest_jsonl(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream missing("{\"id\":\"a\"}\n");
  EXPECT_THROW(ingest_jsonl(missing), ParseError);
}

TEST(Ingest, MissingFileIsIoError) { EXPECT_THROW(ingest_jsonl(std::filesystem::path("/nonexistent/x.jsonl")), IoError); }

TEST(Ingest, RoundTripIsByteIdenticalOnText) {
  std::istringstream in(R"({"id":"a","text":"Café opens.  Then \"quotes\" and \\ slashes.","summary":"s"}
{"id":"b","text":"Line\nbreak."}
)");
  const auto first = ingest_jsonl(in);
  std::ostringstream out1;
  write_jsonl(out1, first.documents);
  std::istringstream again(out1.str());
  const auto second = ingest_jsonl(again);
  std::ostringstream out2;
  write_jsonl(out2, second.documents);
  EXPECT_EQ(out1.str(), out2.str());
  ASSERT_EQ(second.documents.size(), 2u);
  EXPECT_EQ(second.documents[0].raw_text, first.documents[0].raw_text);
  EXPECT_EQ(second.documents[1].raw_text, "Line\nbreak.");
}

}  // namespace
}  // namespace hetsum
