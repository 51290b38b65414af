#pragma once

#include <string>
#include <vector>

#include "semicrf/autodiff.h"
#include "semicrf/config.h"
#include "semicrf/embedding.h"
#include "semicrf/lstm.h"
#include "semicrf/params.h"

namespace semicrf {

struct encoder_params {
    autodiff::parameter* w_input_pre = nullptr;
    autodiff::parameter* w_input_tuned = nullptr;
    autodiff::parameter* b_input = nullptr;
    autodiff::lstm_params fwd;
    autodiff::lstm_params bwd;
    autodiff::parameter* w_hidden_fwd = nullptr;
    autodiff::parameter* w_hidden_bwd = nullptr;
    autodiff::parameter* b_hidden = nullptr;
};

encoder_params make_encoder_params(param_source& src, const model_config& cfg);

struct encoded_sequence {
    std::vector<autodiff::node*> h;      // combined per-unit representations
    std::vector<autodiff::node*> fwd_h;  // forward LSTM states
    std::vector<autodiff::node*> bwd_h;  // backward LSTM states
};

// I_i = ReLU(W_pre E^p_i + W_tuned E^t_i + b)
autodiff::node* input_unit_repr(autodiff::tape& t, const encoder_params& enc,
                                const embedding_table& unit_pre, const embedding_table& unit_tuned,
                                const std::string& token);

// Runs both LSTM directions over the unit representations (zero initial
// states) and combines them per position with a rectified linear map.
encoded_sequence encode(autodiff::tape& t, const encoder_params& enc,
                        const embedding_table& unit_pre, const embedding_table& unit_tuned,
                        const std::vector<std::string>& tokens);

}
