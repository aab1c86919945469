#pragma once

#include "causalkit/environment.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/evaluation.hpp"
#include "causalkit/expr.hpp"
#include "causalkit/graph.hpp"
#include "causalkit/random.hpp"
#include "causalkit/scm.hpp"
#include "causalkit/scm_gen.hpp"
#include "causalkit/serde.hpp"
