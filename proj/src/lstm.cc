#include "semicrf/lstm.h"

namespace autodiff {

namespace {

node* gate_preact(tape& t, parameter* wx, parameter* wh, parameter* b, node* x, node* h_prev) {
    return add(add(matvec(t.leaf(*wx), x), matvec(t.leaf(*wh), h_prev)), t.leaf(*b));
}

}  // namespace

lstm_state lstm_step(tape& t, const lstm_params& p, node* x, node* h_prev, node* c_prev) {
    node* i = sigmoid(gate_preact(t, p.w_ix, p.w_ih, p.b_i, x, h_prev));
    node* f = sigmoid(gate_preact(t, p.w_fx, p.w_fh, p.b_f, x, h_prev));
    node* o = sigmoid(gate_preact(t, p.w_ox, p.w_oh, p.b_o, x, h_prev));
    node* g = tanh(gate_preact(t, p.w_cx, p.w_ch, p.b_c, x, h_prev));
    node* c = add(pointwise_mul(f, c_prev), pointwise_mul(i, g));
    node* h = pointwise_mul(o, tanh(c));
    return {h, c};
}

}
