#pragma once

#include <string>
#include <vector>

#include "semicrf/autodiff.h"
#include "semicrf/error.h"
#include "semicrf/lstm.h"
#include "semicrf/rng.h"

namespace semicrf {

enum class init_kind { glorot, zeros, ones };

void glorot_fill(autodiff::tensor& t, rng& r);

// Resolves parameters by name: creates and initializes them on fresh builds,
// finds and shape-checks them when restoring from a checkpoint.
struct param_source {
    autodiff::parameter_store& store;
    rng* init_rng = nullptr;
    bool loading = false;

    autodiff::parameter* operator()(const std::string& name, std::vector<int> shape,
                                    init_kind kind, bool trainable = true);
};

// Creates the 12 gate parameters under `prefix`. Forget-gate bias starts at 1.
autodiff::lstm_params make_lstm_params(param_source& src, const std::string& prefix,
                                       int input_dim, int hidden_dim);

}
