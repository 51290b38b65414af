#pragma once

#include <iosfwd>
#include <string>

#include "semicrf/model.h"

namespace semicrf {

// Single-archive model checkpoint: format-version header, the serialized
// config, every parameter (name, shape, row-major float64 bytes), and the
// embedding-table layouts. Save/load round-trips bitwise.
void save_checkpoint(const model& m, std::ostream& out);
void save_checkpoint(const model& m, const std::string& path);

model load_checkpoint_stream(std::istream& in);
model load_checkpoint(const std::string& path);

}
