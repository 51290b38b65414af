#include "semicrf/trainer.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "semicrf/eval.h"
#include "semicrf/checkpoint.h"
#include "semicrf/rng.h"

namespace semicrf {

double learning_rate(int epoch, double eta0) {
    return eta0 / (1.0 + 0.1 * epoch);
}

double evaluate_f(const model& m, const labeled_corpus& data) {
    std::vector<std::vector<labeled_span>> pred;
    pred.reserve(data.sequences.size());
    for (const auto& seq : data.sequences) {
        pred.push_back(to_spans(m.predict(seq.tokens), m.cfg.labels));
    }
    return f_score_spans(to_spans(data), pred, data.task).f1;
}

namespace {

void sgd_step(autodiff::tape& t, double lr, double clip_norm) {
    double sq_norm = 0.0;
    for (const auto& [param, leaf] : t.touched()) {
        if (!param->trainable) continue;
        for (double g : leaf->grad.data) {
            sq_norm += g * g;
        }
    }
    double scale = 1.0;
    if (clip_norm > 0.0) {
        double norm = std::sqrt(sq_norm);
        if (norm > clip_norm) {
            scale = clip_norm / norm;
        }
    }
    double step = lr * scale;
    for (const auto& [param, leaf] : t.touched()) {
        if (!param->trainable) continue;
        for (std::size_t i = 0; i < param->value.data.size(); ++i) {
            param->value.data[i] -= step * leaf->grad.data[i];
        }
    }
}

std::string format_row(const epoch_stats& s) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d\t%.6f\t%.6f\t%.6f", s.epoch, s.mean_nll, s.dev_f, s.lr);
    return buf;
}

}  // namespace

train_result train(model& m, const labeled_corpus& train_data, const labeled_corpus& dev_data,
                   const std::string& checkpoint_path, const std::string& log_path,
                   std::ostream* progress) {
    if (train_data.sequences.empty()) {
        throw data_error("train: empty training corpus");
    }
    if (train_data.labels != m.cfg.labels) {
        throw data_error("train: corpus label set does not match the model's");
    }
    for (std::size_t i = 0; i < train_data.sequences.size(); ++i) {
        const auto& seq = train_data.sequences[i];
        try {
            validate_segmentation(seq.gold, static_cast<int>(seq.tokens.size()), m.cfg.max_seg_len,
                                  m.cfg.num_labels());
        } catch (const data_error& e) {
            throw data_error("train: sequence " + std::to_string(i) + ": " + e.what());
        }
    }

    std::ofstream log;
    if (!log_path.empty()) {
        log.open(log_path, std::ios::binary);
        if (!log) {
            throw data_error("train: cannot write log " + log_path);
        }
    }

    train_result result;
    rng shuffle_rng(m.cfg.seed);
    std::vector<std::size_t> order(train_data.sequences.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }

    for (int epoch = 0; epoch < m.cfg.max_epochs; ++epoch) {
        double lr = learning_rate(epoch, m.cfg.eta0);
        shuffle_rng.shuffle(order);

        double total_nll = 0.0;
        for (std::size_t idx : order) {
            const auto& seq = train_data.sequences[idx];
            autodiff::tape t;
            autodiff::node* loss = m.sequence_nll(t, seq.tokens, seq.gold);
            total_nll += loss->scalar();
            t.backward(loss);
            sgd_step(t, lr, m.cfg.clip_norm);
            ++result.updates;
        }

        epoch_stats stats;
        stats.epoch = epoch;
        stats.mean_nll = total_nll / static_cast<double>(train_data.sequences.size());
        stats.dev_f = dev_data.sequences.empty() ? 0.0 : evaluate_f(m, dev_data);
        stats.lr = lr;
        result.log.push_back(stats);

        std::string row = format_row(stats);
        if (log.is_open()) {
            log << row << "\n";
        }
        if (progress) {
            *progress << "epoch " << row << "\n";
        }

        if (stats.dev_f > result.best_dev_f || result.best_epoch < 0) {
            result.best_dev_f = stats.dev_f;
            result.best_epoch = epoch;
            if (!checkpoint_path.empty()) {
                save_checkpoint(m, checkpoint_path);
            }
        } else if (epoch - result.best_epoch >= m.cfg.patience) {
            break;
        }
    }
    return result;
}

}
