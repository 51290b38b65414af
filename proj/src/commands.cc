#include "semicrf/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "semicrf/checkpoint.h"
#include "semicrf/corpus.h"
#include "semicrf/eval.h"
#include "semicrf/model.h"
#include "semicrf/trainer.h"
#include "semicrf/utf8.h"

namespace semicrf {

namespace {

labeled_corpus parse_task_corpus(const std::string& path, const model_config& cfg) {
    if (cfg.task == task_kind::span_labeled) {
        return parse_conll(path);
    }
    return parse_wordseg(path, cfg.normalize_fullwidth);
}

// Token sequences for prediction; any tag column is ignored.
std::vector<std::vector<std::string>> read_input_sequences(const std::string& path,
                                                           const model_config& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("input: cannot open " + path);
    }
    std::vector<std::vector<std::string>> sequences;
    std::string line;
    if (cfg.task == task_kind::span_labeled) {
        std::vector<std::string> tokens;
        bool docstart = false;
        auto flush = [&] {
            if (!tokens.empty() && !docstart) {
                sequences.push_back(std::move(tokens));
            }
            tokens.clear();
            docstart = false;
        };
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::vector<std::string> fields = split_words(line);
            if (fields.empty()) {
                flush();
                continue;
            }
            if (fields[0] == "-DOCSTART-") {
                docstart = true;
                continue;
            }
            tokens.push_back(fields[0]);
        }
        flush();
    } else {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::vector<std::string> tokens = tokenize_line(line, cfg.task, cfg.normalize_fullwidth);
            if (!tokens.empty()) {
                sequences.push_back(std::move(tokens));
            }
        }
    }
    return sequences;
}

bool looks_like_conll(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("eval: cannot open " + path);
    }
    std::string line;
    bool saw_content = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields = split_words(line);
        if (fields.empty() || fields[0] == "-DOCSTART-") {
            continue;
        }
        saw_content = true;
        if (fields.size() != 2) {
            return false;
        }
        const std::string& tag = fields[1];
        bool tag_like = tag == "O" || (tag.size() > 2 && tag[1] == '-' &&
                                       (tag[0] == 'B' || tag[0] == 'I' || tag[0] == 'E' || tag[0] == 'S'));
        if (!tag_like) {
            return false;
        }
    }
    return saw_content;
}

void write_predictions(std::ostream& out, const model& m,
                       const std::vector<std::vector<std::string>>& sequences,
                       const std::vector<segmentation>& preds) {
    if (m.cfg.task == task_kind::span_labeled) {
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            std::vector<std::string> tags = bieso_encode(preds[i], m.cfg.labels, m.cfg.task);
            for (std::size_t j = 0; j < sequences[i].size(); ++j) {
                out << sequences[i][j] << " " << tags[j] << "\n";
            }
            out << "\n";
        }
    } else {
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            out << render_segmented_line(sequences[i], preds[i], "") << "\n";
        }
    }
}

}  // namespace

void run_train(const std::string& config_path, const std::string& train_path,
               const std::string& dev_path, const std::string& out_dir, std::ostream& out,
               std::ostream* progress) {
    model_config cfg = parse_config_file(config_path);
    cfg.finalize();

    labeled_corpus train_data = parse_task_corpus(train_path, cfg);
    labeled_corpus dev_data = parse_task_corpus(dev_path, cfg);
    if (train_data.sequences.empty()) {
        throw data_error("train: no sequences in " + train_path);
    }

    cfg.labels = train_data.labels;
    if (cfg.max_seg_len == 0) {
        cfg.max_seg_len = max_gold_segment_length(train_data);
    }

    std::vector<std::string> vocab = collect_vocab(train_data);
    std::vector<std::string> seg_keys;
    if (cfg.segment_embeddings_enabled() && cfg.segment_embeddings.empty()) {
        seg_keys = collect_segment_keys(train_data, cfg.sep());
    }

    model m(cfg, vocab, seg_keys);

    std::filesystem::create_directories(out_dir);
    std::string ckpt = out_dir + "/checkpoint.bin";
    std::string log = out_dir + "/train.log";
    train_result r = train(m, train_data, dev_data, ckpt, log, progress);

    std::ofstream echo(out_dir + "/config.txt", std::ios::binary);
    echo << to_text(m.cfg);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", r.best_dev_f);
    out << "best epoch " << r.best_epoch << ", dev F " << buf << "\n";
}

void run_predict(const std::string& model_path, const std::string& input_path,
                 const std::string& output_path) {
    model m = load_checkpoint(model_path);
    std::vector<std::vector<std::string>> sequences = read_input_sequences(input_path, m.cfg);
    std::vector<segmentation> preds;
    preds.reserve(sequences.size());
    for (const auto& tokens : sequences) {
        preds.push_back(m.predict(tokens));
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        throw data_error("predict: cannot write " + output_path);
    }
    write_predictions(out, m, sequences, preds);
    if (!out) {
        throw data_error("predict: write failed for " + output_path);
    }
}

void run_eval(const std::string& gold_path, const std::string& pred_path, std::ostream& out) {
    bool conll = looks_like_conll(gold_path);
    labeled_corpus gold = conll ? parse_conll(gold_path) : parse_wordseg(gold_path);
    labeled_corpus pred = conll ? parse_conll(pred_path) : parse_wordseg(pred_path);
    if (gold.sequences.size() != pred.sequences.size()) {
        throw data_error("eval: sequence count mismatch: " + std::to_string(gold.sequences.size()) +
                         " gold vs " + std::to_string(pred.sequences.size()) + " predicted");
    }
    for (std::size_t i = 0; i < gold.sequences.size(); ++i) {
        if (gold.sequences[i].tokens.size() != pred.sequences[i].tokens.size()) {
            throw data_error("eval: sequence " + std::to_string(i) + " has " +
                             std::to_string(pred.sequences[i].tokens.size()) + " units, gold has " +
                             std::to_string(gold.sequences[i].tokens.size()));
        }
    }
    prf r = f_score_spans(to_spans(gold), to_spans(pred), gold.task);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "precision: %.4f\nrecall: %.4f\nf1: %.4f\n", r.precision,
                  r.recall, r.f1);
    out << buf;
}

void run_emit_segmented(const std::string& model_path, const std::string& raw_path,
                        const std::string& out_path, const std::optional<std::string>& separator) {
    model m = load_checkpoint(model_path);
    std::string sep = separator ? *separator : m.cfg.sep();
    emit_segmented_corpus([&m](const std::vector<std::string>& tokens) { return m.predict(tokens); },
                          m.cfg.task, raw_path, out_path, sep);
}

}
