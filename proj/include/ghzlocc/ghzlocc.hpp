// ghzlocc.hpp
// Umbrella header.

#pragma once

#include "ghzlocc/bipartition_blocks.hpp"
#include "ghzlocc/bounds.hpp"
#include "ghzlocc/ghz_basis.hpp"
#include "ghzlocc/json_io.hpp"
#include "ghzlocc/locc_sim.hpp"
#include "ghzlocc/ppt_sdp.hpp"
#include "ghzlocc/qla.hpp"
#include "ghzlocc/sdp_solver.hpp"
#include "ghzlocc/text_specs.hpp"
