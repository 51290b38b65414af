#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semicrf/corpus.h"
#include "semicrf/model.h"

namespace semicrf {

// eta_t = eta0 / (1 + 0.1 t)
double learning_rate(int epoch, double eta0);

struct epoch_stats {
    int epoch = 0;
    double mean_nll = 0.0;
    double dev_f = 0.0;
    double lr = 0.0;
};

struct train_result {
    int best_epoch = -1;
    double best_dev_f = 0.0;
    std::vector<epoch_stats> log;
    std::uint64_t updates = 0;
};

// Predicts every sequence and scores against the corpus gold.
double evaluate_f(const model& m, const labeled_corpus& data);

// Plain SGD, one update per sequence, per-epoch shuffling, learning-rate
// decay, dev-based best-checkpoint selection with patience early stopping.
// The best checkpoint is written to checkpoint_path each time dev F improves;
// one tab-separated row (epoch, mean nll, dev F, lr) per epoch goes to
// log_path (and progress, when given). The in-memory model is left at its
// final state, not the best epoch; load the checkpoint for the best weights.
train_result train(model& m, const labeled_corpus& train_data, const labeled_corpus& dev_data,
                   const std::string& checkpoint_path, const std::string& log_path = "",
                   std::ostream* progress = nullptr);

}
