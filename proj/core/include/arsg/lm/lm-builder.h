// arsg/lm/lm-builder.h

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Character-level LM construction. Label conventions:
//   character label = alphabet index + 1 (0 is epsilon);
//   word label      = position in the word list + 1.

#ifndef ARSG_LM_LM_BUILDER_H_
#define ARSG_LM_LM_BUILDER_H_

#include <string>
#include <vector>

#include "arsg/decoder/alphabet.h"
#include "arsg/lm/arpa.h"
#include "arsg/lm/wfst.h"

namespace arsg {

inline int CharLabel(int alphabet_index) { return alphabet_index + 1; }

/// Backoff grammar: one state per history, word arcs weighted -ln P,
/// epsilon backoff arcs weighted -ln(backoff), sentence end as final weight.
/// The start state is the <s> history. ARPA words missing from `words` are
/// skipped.
Wfst BuildGrammarFst(const ArpaModel& arpa,
                     const std::vector<std::string>& words);

/// Spells each word followed by the space character, emitting the word label
/// on the first letter and returning to the (final) root.
Wfst BuildLexiconFst(const std::vector<std::string>& words,
                     const Alphabet& alphabet);

struct CharLmOptions {
  bool determinize = true;
  int max_states = 1000000;
};

struct CharLm {
  Wfst fst;
  std::vector<std::string> words;
  bool determinized = false;
};

/// T = min(det(L o G)) with G's backoff arcs used as failure transitions, or
/// the plain composition when determinization is off. An empty `vocab` means
/// the ARPA vocabulary. Vocabulary words missing from the ARPA model are an
/// error naming the word.
CharLm BuildCharLm(const ArpaModel& arpa, std::vector<std::string> vocab,
                   const Alphabet& alphabet, const CharLmOptions& opts = {});

/// Reads a vocabulary file, one word per line.
std::vector<std::string> ReadVocabulary(const std::string& path);

}  // namespace arsg

#endif  // ARSG_LM_LM_BUILDER_H_
