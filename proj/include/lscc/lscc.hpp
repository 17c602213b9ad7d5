#pragma once

#include "lscc/adversaries/provers.hpp"
#include "lscc/analysis/distributions.hpp"
#include "lscc/analysis/experiments.hpp"
#include "lscc/circuit/circuit.hpp"
#include "lscc/circuit/simulation.hpp"
#include "lscc/harness/batch.hpp"
#include "lscc/harness/config.hpp"
#include "lscc/harness/io.hpp"
#include "lscc/harness/rng.hpp"
#include "lscc/numerics/complex_matrix.hpp"
#include "lscc/numerics/state_vector.hpp"
#include "lscc/protocol/runner.hpp"
