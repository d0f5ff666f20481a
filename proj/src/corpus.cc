// Copyright 2026 The Evnoun Authors.
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

#include "evnoun/corpus.h"

#include <array>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

namespace evnoun {
namespace {

constexpr std::array<std::pair<CoarseTag, std::string_view>, 14> kTagNames = {{
    {CoarseTag::kNoun, "NOUN"},
    {CoarseTag::kPropn, "PROPN"},
    {CoarseTag::kVerb, "VERB"},
    {CoarseTag::kAux, "AUX"},
    {CoarseTag::kAdj, "ADJ"},
    {CoarseTag::kAdv, "ADV"},
    {CoarseTag::kDet, "DET"},
    {CoarseTag::kAdp, "ADP"},
    {CoarseTag::kPron, "PRON"},
    {CoarseTag::kNum, "NUM"},
    {CoarseTag::kConj, "CONJ"},
    {CoarseTag::kPart, "PART"},
    {CoarseTag::kPunct, "PUNCT"},
    {CoarseTag::kOther, "OTHER"},
}};

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::string_view CoarseTagName(CoarseTag tag) {
  for (const auto& [value, name] : kTagNames) {
    if (value == tag) return name;
  }
  return "OTHER";
}

std::optional<CoarseTag> ParseCoarseTag(std::string_view name) {
  for (const auto& [value, tag_name] : kTagNames) {
    if (tag_name == name) return value;
  }
  return std::nullopt;
}

std::optional<PosTag> PosTag::Parse(std::string_view text) {
  std::string_view coarse = text;
  std::string_view fine;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    coarse = text.substr(0, colon);
    fine = text.substr(colon + 1);
    if (fine.empty()) return std::nullopt;
  }
  auto tag = ParseCoarseTag(coarse);
  if (!tag) return std::nullopt;
  return PosTag{*tag, std::string(fine)};
}

std::string PosTag::ToString() const {
  std::string out(CoarseTagName(coarse));
  if (!fine.empty()) {
    out += ':';
    out += fine;
  }
  return out;
}

std::string LowercaseUtf8(std::string_view text) {
  std::string out(text);
  for (size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + ('a' - 'A'));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE map to U+00E0..U+00FE, except U+00D7 (multiplication).
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) {
        out[i + 1] = static_cast<char>(next + 0x20);
      }
      ++i;
    }
  }
  return out;
}

ParseError::ParseError(int64_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

CorpusReader::CorpusReader(std::istream& in, ReaderOptions options)
    : in_(in), options_(std::move(options)) {}

std::optional<TaggedToken> CorpusReader::ParseLine(std::string_view line) {
  std::array<std::string_view, 3> fields;
  size_t count = 0;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    std::string_view field = line.substr(start, tab - start);
    if (count < fields.size()) fields[count] = field;
    ++count;
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }

  std::string problem;
  std::optional<PosTag> tag;
  if (count != 3) {
    problem = "expected 3 tab-separated fields, found " + std::to_string(count);
  } else if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
    problem = "empty field";
  } else if (tag = PosTag::Parse(fields[2]); !tag) {
    problem = "unknown tag '" + std::string(fields[2]) + "'";
  }

  if (!problem.empty()) {
    ParseError error(line_number_, problem);
    if (options_.strict) throw error;
    ++skipped_lines_;
    if (options_.on_warning) options_.on_warning(error);
    return std::nullopt;
  }
  return TaggedToken{std::string(fields[0]), LowercaseUtf8(fields[1]),
                     std::move(*tag)};
}

bool CorpusReader::Next(Sentence* sentence) {
  sentence->tokens.clear();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      if (!sentence->tokens.empty()) return true;
      continue;
    }
    if (line.front() == '#') continue;
    if (auto token = ParseLine(line)) {
      sentence->tokens.push_back(std::move(*token));
    }
  }
  return !sentence->tokens.empty();
}

std::vector<Sentence> ReadCorpus(std::istream& in, ReaderOptions options) {
  CorpusReader reader(in, std::move(options));
  std::vector<Sentence> corpus;
  Sentence sentence;
  while (reader.Next(&sentence)) corpus.push_back(std::move(sentence));
  return corpus;
}

std::vector<Sentence> ReadCorpusString(std::string_view text,
                                       ReaderOptions options) {
  std::istringstream in{std::string(text)};
  return ReadCorpus(in, std::move(options));
}

std::vector<Sentence> ReadCorpusFile(const std::string& path,
                                     ReaderOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  return ReadCorpus(in, std::move(options));
}

void WriteSentence(std::ostream& out, const Sentence& sentence) {
  for (const TaggedToken& token : sentence.tokens) {
    out << token.surface << '\t' << token.lemma << '\t' << token.tag.ToString()
        << '\n';
  }
  out << '\n';
}

std::string SerializeCorpus(std::span<const Sentence> corpus) {
  std::ostringstream out;
  for (const Sentence& sentence : corpus) WriteSentence(out, sentence);
  return out.str();
}

std::map<std::string, int64_t> CountNounOccurrences(
    std::span<const Sentence> corpus, const std::set<std::string>& lemmas) {
  std::map<std::string, int64_t> counts;
  for (const std::string& lemma : lemmas) counts[lemma] = 0;
  for (const Sentence& sentence : corpus) {
    for (const TaggedToken& token : sentence.tokens) {
      if (!token.IsNoun()) continue;
      auto it = counts.find(token.lemma);
      if (it != counts.end()) ++it->second;
    }
  }
  return counts;
}

}  // namespace evnoun
