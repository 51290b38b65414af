#pragma once

#include <stdexcept>
#include <string>

namespace semicrf {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad or inconsistent configuration, missing model inputs
struct config_error : error {
    using error::error;
};

// unparseable or invalid corpus / gold data
struct data_error : error {
    using error::error;
};

// unreadable, corrupt, or version-mismatched checkpoint
struct checkpoint_error : error {
    using error::error;
};

}
