#pragma once

#include <string>
#include <vector>

#include "semicrf/corpus.h"
#include "semicrf/segment.h"

namespace semicrf {

struct prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Segment with its label resolved to a string, for comparing segmentations
// that come from different label id spaces.
struct labeled_span {
    int begin = 0;
    int end = 0;
    std::string label;

    bool operator==(const labeled_span&) const = default;
};

std::vector<labeled_span> to_spans(const segmentation& segs, const std::vector<std::string>& labels);
std::vector<std::vector<labeled_span>> to_spans(const labeled_corpus& corpus);

// Exact-match span F. A predicted span counts iff (begin, end, label) all
// match a gold span. Span-labeled tasks exclude NONE spans from both sides
// (conlleval convention); word segmentation counts every word.
prf f_score_spans(const std::vector<std::vector<labeled_span>>& gold,
                  const std::vector<std::vector<labeled_span>>& pred, task_kind task);

// Predictions use gold.labels as their label id space.
prf f_score(const labeled_corpus& gold, const std::vector<segmentation>& pred);

}
