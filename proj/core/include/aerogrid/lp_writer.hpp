#pragma once

#include <iosfwd>
#include <string>

#include "aerogrid/model_ir.hpp"

namespace aerogrid {

/// Writes the model in CPLEX LP text format for cross-checking with external
/// tooling. Deterministic: identical models produce identical bytes.
void write_lp(std::ostream& out, const ModelIR& model);

void write_lp_file(const std::string& path, const ModelIR& model);

}  // namespace aerogrid
