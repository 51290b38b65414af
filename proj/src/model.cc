#include "semicrf/model.h"

#include <unordered_set>

namespace semicrf {

using autodiff::node;
using autodiff::tape;
using autodiff::tensor;

namespace {

void random_vector_fill(embedding_table& table, autodiff::parameter_store& store,
                        const std::vector<std::string>& keys, rng& r) {
    for (const auto& k : keys) {
        tensor v = tensor::zeros({table.dim});
        glorot_fill(v, r);
        table.add(store, k, std::move(v));
    }
}

}  // namespace

std::vector<std::string> collect_vocab(const labeled_corpus& corpus) {
    std::vector<std::string> vocab;
    std::unordered_set<std::string> seen;
    for (const auto& seq : corpus.sequences) {
        for (const auto& tok : seq.tokens) {
            if (seen.insert(tok).second) {
                vocab.push_back(tok);
            }
        }
    }
    return vocab;
}

std::vector<std::string> collect_segment_keys(const labeled_corpus& corpus,
                                              const std::string& separator) {
    std::vector<std::string> keys;
    std::unordered_set<std::string> seen;
    for (const auto& seq : corpus.sequences) {
        for (const auto& s : seq.gold) {
            std::vector<std::string> units(seq.tokens.begin() + s.begin, seq.tokens.begin() + s.end);
            std::string key = segment_key(units, separator);
            if (seen.insert(key).second) {
                keys.push_back(key);
            }
        }
    }
    return keys;
}

int max_gold_segment_length(const labeled_corpus& corpus) {
    int best = 1;
    for (const auto& seq : corpus.sequences) {
        for (const auto& s : seq.gold) {
            best = std::max(best, s.length());
        }
    }
    return best;
}

model::model(const model_config& config, const std::vector<std::string>& vocab,
             const std::vector<std::string>& segment_keys)
    : cfg(config) {
    cfg.finalize();
    cfg.validate();
    if (cfg.labels.empty()) {
        throw config_error("model: label set unresolved");
    }
    if (cfg.max_seg_len <= 0) {
        throw config_error("model: max_segment_length unresolved");
    }

    rng r(cfg.seed);

    unit_pre.name = "unit_pre";
    unit_pre.trainable = cfg.fine_tune_unit_pre;
    if (!cfg.unit_embeddings.empty()) {
        unit_pre = load_embedding_file(cfg.unit_embeddings, store, "unit_pre",
                                       cfg.fine_tune_unit_pre, cfg.dim_unit_pre);
    }
    unit_pre.dim = cfg.dim_unit_pre;
    if (unit_pre.trainable) {
        tensor v = tensor::zeros({unit_pre.dim});
        glorot_fill(v, r);
        unit_pre.ensure_unk(store, std::move(v));
    }

    unit_tuned.name = "unit_tuned";
    unit_tuned.dim = cfg.dim_unit_tuned;
    unit_tuned.trainable = cfg.fine_tune_unit_tuned;
    random_vector_fill(unit_tuned, store, vocab, r);
    if (unit_tuned.trainable) {
        tensor v = tensor::zeros({unit_tuned.dim});
        glorot_fill(v, r);
        unit_tuned.ensure_unk(store, std::move(v));
    }

    seg_table.name = "seg";
    seg_table.dim = cfg.dim_semb;
    seg_table.trainable = cfg.fine_tune_segment;
    if (cfg.segment_embeddings_enabled()) {
        if (!cfg.segment_embeddings.empty()) {
            seg_table = load_embedding_file(cfg.segment_embeddings, store, "seg",
                                            cfg.fine_tune_segment, cfg.dim_semb);
            seg_table.dim = cfg.dim_semb;
        } else {
            random_vector_fill(seg_table, store, segment_keys, r);
        }
        if (seg_table.trainable) {
            tensor v = tensor::zeros({seg_table.dim});
            glorot_fill(v, r);
            seg_table.ensure_unk(store, std::move(v));
        }
    }

    param_source src{store, &r, false};
    wire(src);
}

model::model(from_checkpoint_tag, model_config config, autodiff::parameter_store&& loaded,
             embedding_table&& pre, embedding_table&& tuned, embedding_table&& seg)
    : cfg(std::move(config)),
      store(std::move(loaded)),
      unit_pre(std::move(pre)),
      unit_tuned(std::move(tuned)),
      seg_table(std::move(seg)) {
    cfg.finalize();
    cfg.validate();
    param_source src{store, nullptr, true};
    wire(src);
}

void model::wire(param_source& src) {
    enc = make_encoder_params(src, cfg);
    comp = make_segment_composer(src, cfg, cfg.max_seg_len);
    seg_repr = make_segment_repr_params(src, cfg);
    label_embed = src("label_embed", {cfg.num_labels(), cfg.dim_label}, init_kind::glorot);
    score_w = src("score_w", {cfg.dim_segment}, init_kind::glorot);
}

segment_lattice model::build_lattice(tape& t, const std::vector<std::string>& tokens) const {
    int n = static_cast<int>(tokens.size());
    encoded_sequence es = encode(t, enc, unit_pre, unit_tuned, tokens);
    segment_lattice lattice(n, cfg.max_seg_len, cfg.num_labels(), &t);

    bool use_semb = cfg.segment_embeddings_enabled();
    node* w = t.leaf(*score_w);
    node* labels_mat = t.leaf(*label_embed);
    node* b = t.leaf(*seg_repr.b);
    node* w_comp = t.leaf(*seg_repr.w_comp);
    node* w_semb = use_semb ? t.leaf(*seg_repr.w_semb) : nullptr;
    node* w_label = t.leaf(*seg_repr.w_label);

    // label contribution is segment-independent; compute it once per label
    std::vector<node*> label_term;
    label_term.reserve(static_cast<std::size_t>(cfg.num_labels()));
    for (int y = 0; y < cfg.num_labels(); ++y) {
        label_term.push_back(add(matvec(w_label, row(labels_mat, y)), b));
    }

    int effective_max = std::min(cfg.max_seg_len, n);
    for (int begin = 0; begin < n; ++begin) {
        for (int len = 1; len <= std::min(effective_max, n - begin); ++len) {
            int end = begin + len;
            std::span<node* const> slice(es.h.data() + begin, static_cast<std::size_t>(len));
            node* scomp = comp.compose(t, slice);
            node* base = matvec(w_comp, scomp);
            if (use_semb) {
                std::vector<std::string> units(tokens.begin() + begin, tokens.begin() + end);
                node* semb = seg_table.lookup(t, segment_key(units, cfg.sep()));
                base = add(base, matvec(w_semb, semb));
            }
            for (int y = 0; y < cfg.num_labels(); ++y) {
                node* s = relu(add(base, label_term[static_cast<std::size_t>(y)]));
                lattice.set(begin, end, y, dot(w, s));
            }
        }
    }
    return lattice;
}

segmentation model::predict(const std::vector<std::string>& tokens) const {
    tape t(false);
    segment_lattice lattice = build_lattice(t, tokens);
    return viterbi(lattice).best;
}

node* model::sequence_nll(tape& t, const std::vector<std::string>& tokens,
                          const segmentation& gold) const {
    segment_lattice lattice = build_lattice(t, tokens);
    return nll(lattice, gold);
}

}
