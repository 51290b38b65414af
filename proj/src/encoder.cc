#include "semicrf/encoder.h"

namespace semicrf {

using autodiff::node;
using autodiff::tape;

encoder_params make_encoder_params(param_source& src, const model_config& cfg) {
    encoder_params enc;
    enc.w_input_pre = src("encoder/w_input_pre", {cfg.dim_input, cfg.dim_unit_pre}, init_kind::glorot);
    enc.w_input_tuned = src("encoder/w_input_tuned", {cfg.dim_input, cfg.dim_unit_tuned}, init_kind::glorot);
    enc.b_input = src("encoder/b_input", {cfg.dim_input}, init_kind::zeros);
    enc.fwd = make_lstm_params(src, "encoder/fwd", cfg.dim_input, cfg.dim_hidden);
    enc.bwd = make_lstm_params(src, "encoder/bwd", cfg.dim_input, cfg.dim_hidden);
    enc.w_hidden_fwd = src("encoder/w_hidden_fwd", {cfg.dim_hidden, cfg.dim_hidden}, init_kind::glorot);
    enc.w_hidden_bwd = src("encoder/w_hidden_bwd", {cfg.dim_hidden, cfg.dim_hidden}, init_kind::glorot);
    enc.b_hidden = src("encoder/b_hidden", {cfg.dim_hidden}, init_kind::zeros);
    return enc;
}

node* input_unit_repr(tape& t, const encoder_params& enc, const embedding_table& unit_pre,
                      const embedding_table& unit_tuned, const std::string& token) {
    node* pre = unit_pre.lookup(t, token);
    node* tuned = unit_tuned.lookup(t, token);
    node* z = add(add(matvec(t.leaf(*enc.w_input_pre), pre), matvec(t.leaf(*enc.w_input_tuned), tuned)),
                  t.leaf(*enc.b_input));
    return relu(z);
}

encoded_sequence encode(tape& t, const encoder_params& enc, const embedding_table& unit_pre,
                        const embedding_table& unit_tuned, const std::vector<std::string>& tokens) {
    if (tokens.empty()) {
        throw autodiff::precondition_error("encode: empty token sequence");
    }
    int n = static_cast<int>(tokens.size());
    int hidden = enc.w_hidden_fwd->value.cols();

    std::vector<node*> inputs;
    inputs.reserve(tokens.size());
    for (const auto& tok : tokens) {
        inputs.push_back(input_unit_repr(t, enc, unit_pre, unit_tuned, tok));
    }

    encoded_sequence out;
    out.fwd_h.resize(tokens.size());
    out.bwd_h.resize(tokens.size());

    autodiff::lstm_state s{t.input(autodiff::tensor::zeros({hidden}), "h0"),
                           t.input(autodiff::tensor::zeros({hidden}), "c0")};
    for (int i = 0; i < n; ++i) {
        s = lstm_step(t, enc.fwd, inputs[static_cast<std::size_t>(i)], s.h, s.c);
        out.fwd_h[static_cast<std::size_t>(i)] = s.h;
    }
    s = {t.input(autodiff::tensor::zeros({hidden}), "h0"),
         t.input(autodiff::tensor::zeros({hidden}), "c0")};
    for (int i = n - 1; i >= 0; --i) {
        s = lstm_step(t, enc.bwd, inputs[static_cast<std::size_t>(i)], s.h, s.c);
        out.bwd_h[static_cast<std::size_t>(i)] = s.h;
    }

    node* wf = t.leaf(*enc.w_hidden_fwd);
    node* wb = t.leaf(*enc.w_hidden_bwd);
    node* b = t.leaf(*enc.b_hidden);
    out.h.reserve(tokens.size());
    for (int i = 0; i < n; ++i) {
        node* z = add(add(matvec(wf, out.fwd_h[static_cast<std::size_t>(i)]),
                          matvec(wb, out.bwd_h[static_cast<std::size_t>(i)])),
                      b);
        out.h.push_back(relu(z));
    }
    return out;
}

}
