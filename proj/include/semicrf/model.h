#pragma once

#include <string>
#include <vector>

#include "semicrf/autodiff.h"
#include "semicrf/config.h"
#include "semicrf/corpus.h"
#include "semicrf/embedding.h"
#include "semicrf/encoder.h"
#include "semicrf/segment_repr.h"
#include "semicrf/semicrf.h"

namespace semicrf {

// The full neural semi-CRF: embedding tables, encoder, segment composer,
// segment representation, and the segment scoring weight. cfg must be
// finalized with labels and max_seg_len resolved before construction.
class model {
public:
    model_config cfg;
    autodiff::parameter_store store;
    embedding_table unit_pre;
    embedding_table unit_tuned;
    embedding_table seg_table;  // used only when segment embeddings are on
    encoder_params enc;
    segment_composer comp;
    segment_repr_params seg_repr;
    autodiff::parameter* label_embed = nullptr;
    autodiff::parameter* score_w = nullptr;

    // Fresh build: loads/creates embedding tables (unit_tuned from vocab,
    // seg_table from segment_keys when enabled without a pretrained file)
    // and initializes all weights from cfg.seed.
    model(const model_config& cfg, const std::vector<std::string>& vocab,
          const std::vector<std::string>& segment_keys);

    model(model&&) = default;
    model& operator=(model&&) = delete;
    model(const model&) = delete;

    segment_lattice build_lattice(autodiff::tape& t, const std::vector<std::string>& tokens) const;

    segmentation predict(const std::vector<std::string>& tokens) const;

    autodiff::node* sequence_nll(autodiff::tape& t, const std::vector<std::string>& tokens,
                                 const segmentation& gold) const;

private:
    friend model load_checkpoint_stream(std::istream&);
    struct from_checkpoint_tag {};
    model(from_checkpoint_tag, model_config cfg, autodiff::parameter_store&& loaded,
          embedding_table&& pre, embedding_table&& tuned, embedding_table&& seg);

    void wire(param_source& src);
};

// Collects first-occurrence-ordered unique tokens from training sequences.
std::vector<std::string> collect_vocab(const labeled_corpus& corpus);

// Collects first-occurrence-ordered unique gold segment surface keys.
std::vector<std::string> collect_segment_keys(const labeled_corpus& corpus,
                                              const std::string& separator);

// Longest gold segment in the corpus.
int max_gold_segment_length(const labeled_corpus& corpus);

}
