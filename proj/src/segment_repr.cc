#include "semicrf/segment_repr.h"

namespace semicrf {

using autodiff::node;
using autodiff::tape;

segment_composer make_segment_composer(param_source& src, const model_config& cfg, int max_len) {
    segment_composer comp;
    comp.kind = cfg.comp;
    comp.max_len = max_len;
    switch (cfg.comp) {
        case composition_kind::srnn:
            comp.srnn.fwd = make_lstm_params(src, "scomp/fwd", cfg.dim_hidden, cfg.dim_scomp);
            comp.srnn.bwd = make_lstm_params(src, "scomp/bwd", cfg.dim_hidden, cfg.dim_scomp);
            comp.srnn.w_fwd = src("scomp/w_fwd", {cfg.dim_scomp, cfg.dim_scomp}, init_kind::glorot);
            comp.srnn.w_bwd = src("scomp/w_bwd", {cfg.dim_scomp, cfg.dim_scomp}, init_kind::glorot);
            comp.srnn.b = src("scomp/b", {cfg.dim_scomp}, init_kind::zeros);
            break;
        case composition_kind::scnn:
            comp.scnn.w_left = src("scomp/w_left", {cfg.dim_scomp, cfg.dim_hidden}, init_kind::glorot);
            comp.scnn.w_right = src("scomp/w_right", {cfg.dim_scomp, cfg.dim_hidden}, init_kind::glorot);
            comp.scnn.b = src("scomp/b", {cfg.dim_scomp}, init_kind::zeros);
            comp.scnn.edge_pad = src("scomp/edge_pad", {cfg.dim_hidden}, init_kind::glorot);
            break;
        case composition_kind::sconcate:
            comp.sconcate.pad = src("scomp/pad", {cfg.dim_hidden}, init_kind::glorot);
            comp.sconcate.w = src("scomp/w", {cfg.dim_scomp, max_len * cfg.dim_hidden}, init_kind::glorot);
            comp.sconcate.b = src("scomp/b", {cfg.dim_scomp}, init_kind::zeros);
            break;
    }
    return comp;
}

node* segment_composer::compose(tape& t, std::span<node* const> h_slice) const {
    switch (kind) {
        case composition_kind::srnn:
            return scomp_srnn(t, srnn, h_slice);
        case composition_kind::scnn:
            return scomp_scnn(t, scnn, h_slice);
        case composition_kind::sconcate:
            return scomp_sconcate(t, sconcate, h_slice, max_len);
    }
    throw autodiff::precondition_error("compose: bad composition kind");
}

node* scomp_srnn(tape& t, const srnn_params& p, std::span<node* const> h_slice) {
    if (h_slice.empty()) {
        throw autodiff::precondition_error("scomp_srnn: empty segment");
    }
    int hidden = p.w_fwd->value.cols();
    autodiff::lstm_state s{t.input(autodiff::tensor::zeros({hidden}), "h0"),
                           t.input(autodiff::tensor::zeros({hidden}), "c0")};
    for (node* h : h_slice) {
        s = lstm_step(t, p.fwd, h, s.h, s.c);
    }
    node* last_fwd = s.h;
    s = {t.input(autodiff::tensor::zeros({hidden}), "h0"),
         t.input(autodiff::tensor::zeros({hidden}), "c0")};
    for (auto it = h_slice.rbegin(); it != h_slice.rend(); ++it) {
        s = lstm_step(t, p.bwd, *it, s.h, s.c);
    }
    node* last_bwd = s.h;
    return relu(add(add(matvec(t.leaf(*p.w_fwd), last_fwd), matvec(t.leaf(*p.w_bwd), last_bwd)),
                    t.leaf(*p.b)));
}

node* scomp_scnn(tape& t, const scnn_params& p, std::span<node* const> h_slice) {
    if (h_slice.empty()) {
        throw autodiff::precondition_error("scomp_scnn: empty segment");
    }
    node* wl = t.leaf(*p.w_left);
    node* wr = t.leaf(*p.w_right);
    node* b = t.leaf(*p.b);
    auto filter = [&](node* left, node* right) {
        return relu(add(add(matvec(wl, left), matvec(wr, right)), b));
    };
    node* pooled = nullptr;
    if (h_slice.size() == 1) {
        pooled = filter(h_slice[0], t.leaf(*p.edge_pad));
    } else {
        for (std::size_t i = 0; i + 1 < h_slice.size(); ++i) {
            node* f = filter(h_slice[i], h_slice[i + 1]);
            pooled = pooled ? pointwise_max(pooled, f) : f;
        }
    }
    return pooled;
}

node* scomp_sconcate(tape& t, const sconcate_params& p, std::span<node* const> h_slice, int max_len) {
    if (h_slice.empty()) {
        throw autodiff::precondition_error("scomp_sconcate: empty segment");
    }
    if (static_cast<int>(h_slice.size()) > max_len) {
        throw autodiff::precondition_error("scomp_sconcate: segment length " +
                                           std::to_string(h_slice.size()) + " exceeds maximum " +
                                           std::to_string(max_len));
    }
    std::vector<node*> parts(h_slice.begin(), h_slice.end());
    if (parts.size() < static_cast<std::size_t>(max_len)) {
        node* pad = t.leaf(*p.pad);
        parts.resize(static_cast<std::size_t>(max_len), pad);
    }
    return relu(add(matvec(t.leaf(*p.w), concat(parts)), t.leaf(*p.b)));
}

segment_repr_params make_segment_repr_params(param_source& src, const model_config& cfg) {
    segment_repr_params p;
    p.w_comp = src("segrep/w_comp", {cfg.dim_segment, cfg.dim_scomp}, init_kind::glorot);
    if (cfg.segment_embeddings_enabled()) {
        p.w_semb = src("segrep/w_semb", {cfg.dim_segment, cfg.dim_semb}, init_kind::glorot);
    }
    p.w_label = src("segrep/w_label", {cfg.dim_segment, cfg.dim_label}, init_kind::glorot);
    p.b = src("segrep/b", {cfg.dim_segment}, init_kind::zeros);
    return p;
}

node* segment_repr(tape& t, const segment_repr_params& p, node* scomp, node* semb, node* label) {
    node* z = add(matvec(t.leaf(*p.w_comp), scomp), t.leaf(*p.b));
    if (semb) {
        if (!p.w_semb) {
            throw autodiff::precondition_error("segment_repr: segment embeddings are disabled");
        }
        z = add(z, matvec(t.leaf(*p.w_semb), semb));
    }
    z = add(z, matvec(t.leaf(*p.w_label), label));
    return relu(z);
}

}
