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

// Reader and writer for POS-tagged corpora in vertical format:
//
//   surface<TAB>lemma<TAB>TAG
//
// One token per line, blank lines end sentences, '#' starts a comment line.
// TAG is a coarse category optionally refined as COARSE:FINE (VERB:PART).

#ifndef EVNOUN_CORPUS_H_
#define EVNOUN_CORPUS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evnoun {

enum class CoarseTag {
  kNoun,
  kPropn,
  kVerb,
  kAux,
  kAdj,
  kAdv,
  kDet,
  kAdp,
  kPron,
  kNum,
  kConj,
  kPart,
  kPunct,
  kOther,
};

std::string_view CoarseTagName(CoarseTag tag);
std::optional<CoarseTag> ParseCoarseTag(std::string_view name);

struct PosTag {
  CoarseTag coarse = CoarseTag::kOther;
  std::string fine;  // empty when the tag is not refined

  // Parses "NOUN" or "VERB:PART". Returns nullopt for an unknown coarse part
  // or an empty refinement.
  static std::optional<PosTag> Parse(std::string_view text);
  std::string ToString() const;

  bool operator==(const PosTag&) const = default;
};

struct TaggedToken {
  std::string surface;
  std::string lemma;  // lowercased
  PosTag tag;

  bool IsNoun() const { return tag.coarse == CoarseTag::kNoun; }
  bool operator==(const TaggedToken&) const = default;
};

struct Sentence {
  std::vector<TaggedToken> tokens;

  size_t size() const { return tokens.size(); }
  const TaggedToken& operator[](size_t i) const { return tokens[i]; }
  bool operator==(const Sentence&) const = default;
};

// Lowercases ASCII and the Latin-1 range of UTF-8 (enough for Spanish and
// English lemmas). Other code points pass through unchanged.
std::string LowercaseUtf8(std::string_view text);

class ParseError : public std::runtime_error {
 public:
  ParseError(int64_t line, const std::string& message);
  int64_t line() const { return line_; }

 private:
  int64_t line_;
};

struct ReaderOptions {
  // Strict readers throw on the first malformed line; lenient ones skip it
  // and report through on_warning.
  bool strict = true;
  std::function<void(const ParseError&)> on_warning;
};

// Streams sentences from a vertical corpus. The stream must outlive the
// reader.
class CorpusReader {
 public:
  explicit CorpusReader(std::istream& in, ReaderOptions options = {});

  // Reads the next sentence. Returns false at end of input.
  bool Next(Sentence* sentence);

  int64_t line_number() const { return line_number_; }
  int64_t skipped_lines() const { return skipped_lines_; }

 private:
  std::optional<TaggedToken> ParseLine(std::string_view line);

  std::istream& in_;
  ReaderOptions options_;
  int64_t line_number_ = 0;
  int64_t skipped_lines_ = 0;
};

std::vector<Sentence> ReadCorpus(std::istream& in, ReaderOptions options = {});
std::vector<Sentence> ReadCorpusString(std::string_view text,
                                       ReaderOptions options = {});

// Throws std::runtime_error when the file cannot be opened.
std::vector<Sentence> ReadCorpusFile(const std::string& path,
                                     ReaderOptions options = {});

void WriteSentence(std::ostream& out, const Sentence& sentence);
std::string SerializeCorpus(std::span<const Sentence> corpus);

// Counts NOUN-tagged tokens per queried lemma. Unseen lemmas map to 0.
std::map<std::string, int64_t> CountNounOccurrences(
    std::span<const Sentence> corpus, const std::set<std::string>& lemmas);

}  // namespace evnoun

#endif  // EVNOUN_CORPUS_H_
