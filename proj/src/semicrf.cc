#include "semicrf/semicrf.h"

#include <algorithm>
#include <limits>

namespace semicrf {

using autodiff::node;

segment_lattice::segment_lattice(int n, int max_len, int num_labels, autodiff::tape* owner)
    : n_(n), max_len_(std::min(max_len, n)), num_labels_(num_labels), owner_(owner) {
    if (n <= 0) {
        throw autodiff::precondition_error("lattice: sequence length must be positive");
    }
    if (max_len <= 0 || num_labels <= 0) {
        throw autodiff::precondition_error("lattice: max_len and num_labels must be positive");
    }
    scores_.assign(static_cast<std::size_t>(n_) * max_len_ * num_labels_, nullptr);
}

int segment_lattice::index(int begin, int end, int label) const {
    int len = end - begin;
    if (begin < 0 || end > n_ || len < 1 || len > max_len_ || label < 0 || label >= num_labels_) {
        throw autodiff::precondition_error("lattice: segment (" + std::to_string(begin + 1) + "," +
                                           std::to_string(end) + "," + std::to_string(label) +
                                           ") outside lattice bounds");
    }
    return (begin * max_len_ + (len - 1)) * num_labels_ + label;
}

void segment_lattice::set(int begin, int end, int label, node* score) {
    if (!score->is_scalar()) {
        throw autodiff::shape_error("lattice: scores must be scalar nodes");
    }
    scores_[static_cast<std::size_t>(index(begin, end, label))] = score;
}

node* segment_lattice::at(int begin, int end, int label) const {
    node* s = scores_[static_cast<std::size_t>(index(begin, end, label))];
    if (!s) {
        throw autodiff::precondition_error("lattice: score (" + std::to_string(begin + 1) + "," +
                                           std::to_string(end) + "," + std::to_string(label) +
                                           ") was never set");
    }
    return s;
}

viterbi_result viterbi(const segment_lattice& lattice) {
    int n = lattice.n();
    int max_len = lattice.max_len();
    int num_labels = lattice.num_labels();

    std::vector<double> alpha(static_cast<std::size_t>(n) + 1,
                              -std::numeric_limits<double>::infinity());
    std::vector<int> back_len(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> back_label(static_cast<std::size_t>(n) + 1, 0);
    alpha[0] = 0.0;

    for (int j = 1; j <= n; ++j) {
        for (int len = 1; len <= std::min(max_len, j); ++len) {
            for (int y = 0; y < num_labels; ++y) {
                double cand = alpha[static_cast<std::size_t>(j - len)] + lattice.value(j - len, j, y);
                if (cand > alpha[static_cast<std::size_t>(j)]) {
                    alpha[static_cast<std::size_t>(j)] = cand;
                    back_len[static_cast<std::size_t>(j)] = len;
                    back_label[static_cast<std::size_t>(j)] = y;
                }
            }
        }
    }

    viterbi_result out;
    out.score = alpha[static_cast<std::size_t>(n)];
    for (int j = n; j > 0; j -= back_len[static_cast<std::size_t>(j)]) {
        int len = back_len[static_cast<std::size_t>(j)];
        out.best.push_back(segment{j - len, j, back_label[static_cast<std::size_t>(j)]});
    }
    std::reverse(out.best.begin(), out.best.end());
    return out;
}

node* log_partition(const segment_lattice& lattice) {
    int n = lattice.n();
    int max_len = lattice.max_len();
    int num_labels = lattice.num_labels();
    autodiff::tape& t = *lattice.owner();

    std::vector<node*> beta(static_cast<std::size_t>(n) + 1, nullptr);
    beta[0] = t.scalar_input(0.0);
    std::vector<node*> terms;
    for (int j = 1; j <= n; ++j) {
        terms.clear();
        for (int len = 1; len <= std::min(max_len, j); ++len) {
            for (int y = 0; y < num_labels; ++y) {
                terms.push_back(add(lattice.at(j - len, j, y), beta[static_cast<std::size_t>(j - len)]));
            }
        }
        beta[static_cast<std::size_t>(j)] = logsumexp(terms);
    }
    return beta[static_cast<std::size_t>(n)];
}

node* nll(const segment_lattice& lattice, const segmentation& gold) {
    validate_segmentation(gold, lattice.n(), lattice.max_len(), lattice.num_labels());
    node* gold_total = nullptr;
    for (const auto& s : gold) {
        node* sc = lattice.at(s.begin, s.end, s.label);
        gold_total = gold_total ? add(gold_total, sc) : sc;
    }
    return sub(log_partition(lattice), gold_total);
}

std::uint64_t count_segmentations(int n, int max_len, int num_labels) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> count(static_cast<std::size_t>(n) + 1, 0);
    count[0] = 1;
    std::uint64_t labels = static_cast<std::uint64_t>(num_labels);
    for (int j = 1; j <= n; ++j) {
        std::uint64_t total = 0;
        for (int len = 1; len <= std::min(max_len, j); ++len) {
            std::uint64_t prev = count[static_cast<std::size_t>(j - len)];
            if (prev != 0 && labels > kMax / prev) {
                total = kMax;
                break;
            }
            std::uint64_t ways = prev * labels;
            if (total > kMax - ways) {
                total = kMax;
                break;
            }
            total += ways;
        }
        count[static_cast<std::size_t>(j)] = total;
    }
    return count[static_cast<std::size_t>(n)];
}

std::vector<segmentation> enumerate_segmentations(int n, int max_len, int num_labels,
                                                  std::uint64_t cap) {
    if (n <= 0 || max_len <= 0 || num_labels <= 0) {
        throw autodiff::precondition_error("enumerate_segmentations: bad arguments");
    }
    std::uint64_t total = count_segmentations(n, max_len, num_labels);
    if (total > cap) {
        throw capacity_error("enumerate_segmentations: " + std::to_string(total) +
                             " segmentations exceed cap " + std::to_string(cap));
    }
    std::vector<segmentation> out;
    out.reserve(static_cast<std::size_t>(total));
    segmentation prefix;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            out.push_back(prefix);
            return;
        }
        for (int len = 1; len <= std::min(max_len, n - pos); ++len) {
            for (int y = 0; y < num_labels; ++y) {
                prefix.push_back(segment{pos, pos + len, y});
                self(self, pos + len);
                prefix.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

}
