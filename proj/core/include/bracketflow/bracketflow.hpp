#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/canonical.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/derivations.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/integrator.hpp"
#include "bracketflow/io.hpp"
#include "bracketflow/linear_map.hpp"
#include "bracketflow/membership.hpp"
#include "bracketflow/scenarios.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/types.hpp"
