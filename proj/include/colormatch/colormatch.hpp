#ifndef COLORMATCH_COLORMATCH_HPP
#define COLORMATCH_COLORMATCH_HPP

// Umbrella header. json_io.hpp is not included here: it pulls in
// nlohmann/json and is only needed for JSON output.

#include "colormatch/constants.hpp"
#include "colormatch/errors.hpp"
#include "colormatch/expansion_trace.hpp"
#include "colormatch/experiments.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/graph_io.hpp"
#include "colormatch/lemma_audit.hpp"
#include "colormatch/matching.hpp"
#include "colormatch/profile_oracle.hpp"
#include "colormatch/recolor.hpp"
#include "colormatch/rng.hpp"

#endif  // COLORMATCH_COLORMATCH_HPP
