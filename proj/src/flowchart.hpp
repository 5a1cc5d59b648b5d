#pragma once

#include "cubint/decision.hpp"

namespace cubint::detail {

// shared flowchart; null_signature adds the |grad R|^2 box
Verdict run_flowchart(const Metric& g, const Codifferential& A, const Box& box, const DecideOptions& opt,
                      bool null_signature);

}  // namespace cubint::detail
