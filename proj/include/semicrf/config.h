#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semicrf/segment.h"

namespace semicrf {

enum class composition_kind { srnn, scnn, sconcate };

std::string to_string(composition_kind k);
std::string to_string(task_kind k);

// Everything needed to rebuild a model: task, composition function, layer
// sizes, embedding sources and fine-tune switches, and training settings.
// Dimension defaults follow the standard configuration used across tasks.
struct model_config {
    task_kind task = task_kind::span_labeled;
    composition_kind comp = composition_kind::srnn;

    int max_seg_len = 0;  // 0: use the longest gold segment in training data

    int dim_unit_pre = 100;
    int dim_unit_tuned = 32;
    int dim_input = 100;
    int dim_hidden = 100;
    int dim_scomp = 64;
    int dim_semb = 50;
    int dim_label = 20;
    int dim_segment = 100;

    std::string unit_embeddings;     // path to pretrained unit vectors, optional
    std::string segment_embeddings;  // path to pretrained segment vectors, optional
    std::optional<bool> use_segment_embeddings;
    bool fine_tune_unit_pre = false;
    bool fine_tune_unit_tuned = true;
    bool fine_tune_segment = true;

    std::optional<std::string> separator;  // segment surface key joiner
    bool normalize_fullwidth = false;

    std::uint64_t seed = 1;

    double eta0 = 0.1;
    int max_epochs = 50;
    int patience = 10;
    double clip_norm = 5.0;

    std::vector<std::string> labels;  // resolved from training data

    // Fills task-dependent defaults: separator "_" for span tasks, "" for
    // word segmentation; segment embeddings on iff a path was given.
    void finalize();

    bool segment_embeddings_enabled() const;
    const std::string& sep() const;
    int num_labels() const { return static_cast<int>(labels.size()); }

    void validate() const;  // throws config_error
};

// key = value lines, # comments, unknown keys rejected.
model_config parse_config_text(const std::string& text);
model_config parse_config_file(const std::string& path);
std::string to_text(const model_config& cfg);

}
