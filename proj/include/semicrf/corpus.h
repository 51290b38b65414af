#pragma once

#include <string>
#include <vector>

#include "semicrf/segment.h"

namespace semicrf {

struct labeled_sequence {
    std::vector<std::string> tokens;
    segmentation gold;
};

// Label id 0 is always NONE for span-labeled tasks and WORD for word
// segmentation; remaining ids follow first appearance in the data.
struct labeled_corpus {
    task_kind task = task_kind::span_labeled;
    std::vector<std::string> labels;
    std::vector<labeled_sequence> sequences;
    int repair_warnings = 0;
    int skipped_lines = 0;

    int label_id(const std::string& name) const;  // -1 when absent
};

// Two columns "token tag" with BIESO tags (B-X/I-X/E-X/S-X/O), blank line
// between sequences, -DOCSTART- sequences skipped. Ill-formed tag
// transitions are repaired conlleval-style and counted.
labeled_corpus parse_conll(const std::string& path);

// One sentence per line, words whitespace-separated, characters are the
// units. normalize_fullwidth folds full-width digits/letters to ASCII.
labeled_corpus parse_wordseg(const std::string& path, bool normalize_fullwidth = false);

// Span task: length-1 NONE -> O, length-1 y -> S-y, longer -> B-y I-y.. E-y
// (NONE segments longer than one unit render as O runs). Word segmentation
// uses bare B/I/E/S with no O.
std::vector<std::string> bieso_encode(const segmentation& segs,
                                      const std::vector<std::string>& labels, task_kind task);

// Inverts bieso_encode; repairs ill-formed inputs (I without B becomes B,
// etc.) counting each repair. New label suffixes are appended to `labels`.
segmentation bieso_decode(const std::vector<std::string>& tags, std::vector<std::string>& labels,
                          task_kind task, int* repairs = nullptr);

// Splits a raw line into model units for the task: whitespace words for
// span tasks, UTF-8 characters (whitespace dropped) for word segmentation.
std::vector<std::string> tokenize_line(const std::string& line, task_kind task,
                                       bool normalize_fullwidth = false);

}
