#pragma once

#include "smurf/affine_map.hpp"
#include "smurf/assembly.hpp"
#include "smurf/chain_fsm.hpp"
#include "smurf/codeword.hpp"
#include "smurf/coefficient_file.hpp"
#include "smurf/config.hpp"
#include "smurf/errors.hpp"
#include "smurf/evaluation.hpp"
#include "smurf/expression.hpp"
#include "smurf/machine.hpp"
#include "smurf/probability.hpp"
#include "smurf/qp.hpp"
#include "smurf/quadrature.hpp"
#include "smurf/rng.hpp"
#include "smurf/stochastic.hpp"
#include "smurf/synthesis.hpp"
#include "smurf/targets.hpp"
#include "smurf/weight_table.hpp"
