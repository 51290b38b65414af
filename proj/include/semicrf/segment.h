#pragma once

#include <string>
#include <vector>

#include "semicrf/error.h"

namespace semicrf {

enum class task_kind { span_labeled, word_seg };

// Labeled contiguous span, half-open [begin, end), 0-based.
struct segment {
    int begin = 0;
    int end = 0;
    int label = 0;

    int length() const { return end - begin; }
    bool operator==(const segment&) const = default;
};

// Ordered segments that disjointly cover [0, n).
using segmentation = std::vector<segment>;

// Throws data_error naming the offending segment on any violation of the
// cover/contiguity/length/label invariants.
void validate_segmentation(const segmentation& segs, int n, int max_len, int num_labels);

}
