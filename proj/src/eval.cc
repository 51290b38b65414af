#include "semicrf/eval.h"

#include <algorithm>

namespace semicrf {

std::vector<labeled_span> to_spans(const segmentation& segs, const std::vector<std::string>& labels) {
    std::vector<labeled_span> spans;
    spans.reserve(segs.size());
    for (const auto& s : segs) {
        spans.push_back(labeled_span{s.begin, s.end, labels[static_cast<std::size_t>(s.label)]});
    }
    return spans;
}

std::vector<std::vector<labeled_span>> to_spans(const labeled_corpus& corpus) {
    std::vector<std::vector<labeled_span>> out;
    out.reserve(corpus.sequences.size());
    for (const auto& seq : corpus.sequences) {
        out.push_back(to_spans(seq.gold, corpus.labels));
    }
    return out;
}

prf f_score_spans(const std::vector<std::vector<labeled_span>>& gold,
                  const std::vector<std::vector<labeled_span>>& pred, task_kind task) {
    if (gold.size() != pred.size()) {
        throw data_error("f_score: sequence count mismatch: " + std::to_string(gold.size()) +
                         " gold vs " + std::to_string(pred.size()) + " predicted");
    }
    auto counted = [task](const labeled_span& s) {
        return task == task_kind::word_seg || s.label != "NONE";
    };
    std::size_t gold_total = 0;
    std::size_t pred_total = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        for (const auto& g : gold[i]) {
            if (counted(g)) ++gold_total;
        }
        for (const auto& p : pred[i]) {
            if (!counted(p)) continue;
            ++pred_total;
            if (std::find(gold[i].begin(), gold[i].end(), p) != gold[i].end()) {
                ++correct;
            }
        }
    }
    prf r;
    r.precision = pred_total ? static_cast<double>(correct) / static_cast<double>(pred_total) : 0.0;
    r.recall = gold_total ? static_cast<double>(correct) / static_cast<double>(gold_total) : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

prf f_score(const labeled_corpus& gold, const std::vector<segmentation>& pred) {
    std::vector<std::vector<labeled_span>> pred_spans;
    pred_spans.reserve(pred.size());
    for (const auto& p : pred) {
        pred_spans.push_back(to_spans(p, gold.labels));
    }
    return f_score_spans(to_spans(gold), pred_spans, gold.task);
}

}
