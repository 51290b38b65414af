#pragma once

#include "semicrf/autodiff.h"

namespace autodiff {

// Gate weights for one LSTM cell: each gate is sigma/tanh of
// W_x x + W_h h_prev + b. Forget gate included, no peepholes.
struct lstm_params {
    parameter* w_ix = nullptr;
    parameter* w_ih = nullptr;
    parameter* b_i = nullptr;
    parameter* w_fx = nullptr;
    parameter* w_fh = nullptr;
    parameter* b_f = nullptr;
    parameter* w_ox = nullptr;
    parameter* w_oh = nullptr;
    parameter* b_o = nullptr;
    parameter* w_cx = nullptr;
    parameter* w_ch = nullptr;
    parameter* b_c = nullptr;
};

struct lstm_state {
    node* h = nullptr;
    node* c = nullptr;
};

// c = f * c_prev + i * g,  h = o * tanh(c)
lstm_state lstm_step(tape& t, const lstm_params& p, node* x, node* h_prev, node* c_prev);

}
