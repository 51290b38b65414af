#pragma once

#include <cstdint>
#include <vector>

#include "semicrf/autodiff.h"
#include "semicrf/segment.h"

namespace semicrf {

struct capacity_error : error {
    using error::error;
};

// Per-segment scores for one sequence: a scalar node for every (begin, end,
// label) with end - begin <= max_len. Scores are nodes so the partition
// function and the loss stay differentiable.
class segment_lattice {
public:
    segment_lattice(int n, int max_len, int num_labels, autodiff::tape* owner);

    int n() const { return n_; }
    int max_len() const { return max_len_; }
    int num_labels() const { return num_labels_; }
    autodiff::tape* owner() const { return owner_; }

    void set(int begin, int end, int label, autodiff::node* score);
    autodiff::node* at(int begin, int end, int label) const;
    double value(int begin, int end, int label) const { return at(begin, end, label)->scalar(); }

private:
    int index(int begin, int end, int label) const;
    int n_;
    int max_len_;
    int num_labels_;
    autodiff::tape* owner_;
    std::vector<autodiff::node*> scores_;
};

struct viterbi_result {
    segmentation best;
    double score = 0.0;
};

// Max-score DP over segment values. Ties break toward the shorter segment,
// then the lower label index.
viterbi_result viterbi(const segment_lattice& lattice);

// log Z via the beta recurrence; differentiable through every score node.
autodiff::node* log_partition(const segment_lattice& lattice);

// log Z - sum of gold segment scores; validates gold first.
autodiff::node* nll(const segment_lattice& lattice, const segmentation& gold);

// Number of valid segmentations (saturates at 2^64-1 on overflow).
std::uint64_t count_segmentations(int n, int max_len, int num_labels);

// Every valid segmentation, in order of (shorter first segment, lower first
// label, ...). Refuses when the count exceeds cap.
std::vector<segmentation> enumerate_segmentations(int n, int max_len, int num_labels,
                                                  std::uint64_t cap = 1000000);

}
