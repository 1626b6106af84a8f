#pragma once

// Numerical core: Lie groups, hyperbolic geometry, invariant connections,
// circle extensions, Fuchsian descent and the umbilic foliation.
// Reports and suites (lhc/report.hpp, lhc/suites.hpp) also need nlohmann/json.

#include "lhc/connections.hpp"
#include "lhc/errors.hpp"
#include "lhc/extension.hpp"
#include "lhc/foliation.hpp"
#include "lhc/fuchsian.hpp"
#include "lhc/hyperbolic.hpp"
#include "lhc/lie.hpp"
#include "lhc/quadrature.hpp"
