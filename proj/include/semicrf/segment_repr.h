#pragma once

#include <span>

#include "semicrf/autodiff.h"
#include "semicrf/config.h"
#include "semicrf/lstm.h"
#include "semicrf/params.h"

namespace semicrf {

struct srnn_params {
    autodiff::lstm_params fwd;
    autodiff::lstm_params bwd;
    autodiff::parameter* w_fwd = nullptr;
    autodiff::parameter* w_bwd = nullptr;
    autodiff::parameter* b = nullptr;
};

struct scnn_params {
    autodiff::parameter* w_left = nullptr;
    autodiff::parameter* w_right = nullptr;
    autodiff::parameter* b = nullptr;
    autodiff::parameter* edge_pad = nullptr;  // right neighbor for length-1 segments
};

struct sconcate_params {
    autodiff::parameter* pad = nullptr;  // fills positions past the segment up to L
    autodiff::parameter* w = nullptr;
    autodiff::parameter* b = nullptr;
};

// Composes the encoder outputs inside one segment into a fixed-size vector.
// All three variants produce dim_scomp so downstream code never branches.
struct segment_composer {
    composition_kind kind = composition_kind::srnn;
    int max_len = 0;
    srnn_params srnn;
    scnn_params scnn;
    sconcate_params sconcate;

    autodiff::node* compose(autodiff::tape& t, std::span<autodiff::node* const> h_slice) const;
};

segment_composer make_segment_composer(param_source& src, const model_config& cfg, int max_len);

// Fresh bi-LSTM over the slice, rectified combination of the two final states.
autodiff::node* scomp_srnn(autodiff::tape& t, const srnn_params& p,
                           std::span<autodiff::node* const> h_slice);

// Width-2 filter over adjacent pairs, max-pooled. A length-1 slice is padded
// on the right with the learned edge vector so the filter applies once.
autodiff::node* scomp_scnn(autodiff::tape& t, const scnn_params& p,
                           std::span<autodiff::node* const> h_slice);

// Concatenation padded to max_len positions with the learned pad vector,
// then one rectified linear map.
autodiff::node* scomp_sconcate(autodiff::tape& t, const sconcate_params& p,
                               std::span<autodiff::node* const> h_slice, int max_len);

struct segment_repr_params {
    autodiff::parameter* w_comp = nullptr;
    autodiff::parameter* w_semb = nullptr;  // null when segment embeddings are disabled
    autodiff::parameter* w_label = nullptr;
    autodiff::parameter* b = nullptr;
};

segment_repr_params make_segment_repr_params(param_source& src, const model_config& cfg);

// S = ReLU(W_c scomp + W_e semb + W_y label + b); the semb term is dropped
// when the model runs without segment embeddings (semb == nullptr).
autodiff::node* segment_repr(autodiff::tape& t, const segment_repr_params& p,
                             autodiff::node* scomp, autodiff::node* semb, autodiff::node* label);

}
