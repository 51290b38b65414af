#include "semicrf/params.h"

#include <cmath>

namespace semicrf {

void glorot_fill(autodiff::tensor& t, rng& r) {
    double fan_in;
    double fan_out;
    if (t.rank() == 2) {
        fan_out = t.rows();
        fan_in = t.cols();
    } else {
        fan_in = fan_out = t.size();
    }
    double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& v : t.data) {
        v = r.uniform(-limit, limit);
    }
}

autodiff::parameter* param_source::operator()(const std::string& name, std::vector<int> shape,
                                              init_kind kind, bool trainable) {
    if (loading) {
        autodiff::parameter* p = store.find(name);
        if (!p) {
            throw checkpoint_error("checkpoint: missing parameter " + name);
        }
        if (p->value.shape != shape) {
            throw checkpoint_error("checkpoint: parameter " + name + " has shape " +
                                   autodiff::shape_str(p->value) + ", model expects " +
                                   autodiff::shape_str(autodiff::tensor::zeros(shape)));
        }
        p->trainable = trainable;
        return p;
    }
    autodiff::tensor t = autodiff::tensor::zeros(std::move(shape));
    switch (kind) {
        case init_kind::glorot:
            glorot_fill(t, *init_rng);
            break;
        case init_kind::zeros:
            break;
        case init_kind::ones:
            for (auto& v : t.data) v = 1.0;
            break;
    }
    return store.create(name, std::move(t), trainable);
}

autodiff::lstm_params make_lstm_params(param_source& src, const std::string& prefix,
                                       int input_dim, int hidden_dim) {
    autodiff::lstm_params p;
    p.w_ix = src(prefix + "/w_ix", {hidden_dim, input_dim}, init_kind::glorot);
    p.w_ih = src(prefix + "/w_ih", {hidden_dim, hidden_dim}, init_kind::glorot);
    p.b_i = src(prefix + "/b_i", {hidden_dim}, init_kind::zeros);
    p.w_fx = src(prefix + "/w_fx", {hidden_dim, input_dim}, init_kind::glorot);
    p.w_fh = src(prefix + "/w_fh", {hidden_dim, hidden_dim}, init_kind::glorot);
    p.b_f = src(prefix + "/b_f", {hidden_dim}, init_kind::ones);
    p.w_ox = src(prefix + "/w_ox", {hidden_dim, input_dim}, init_kind::glorot);
    p.w_oh = src(prefix + "/w_oh", {hidden_dim, hidden_dim}, init_kind::glorot);
    p.b_o = src(prefix + "/b_o", {hidden_dim}, init_kind::zeros);
    p.w_cx = src(prefix + "/w_cx", {hidden_dim, input_dim}, init_kind::glorot);
    p.w_ch = src(prefix + "/w_ch", {hidden_dim, hidden_dim}, init_kind::glorot);
    p.b_c = src(prefix + "/b_c", {hidden_dim}, init_kind::zeros);
    return p;
}

}
