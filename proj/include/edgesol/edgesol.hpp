#pragma once

#include "edgesol/calculus.hpp"
#include "edgesol/claims.hpp"
#include "edgesol/equations.hpp"
#include "edgesol/error.hpp"
#include "edgesol/fft.hpp"
#include "edgesol/grid.hpp"
#include "edgesol/integrability.hpp"
#include "edgesol/integrator.hpp"
#include "edgesol/io.hpp"
#include "edgesol/observables.hpp"
#include "edgesol/parse.hpp"
#include "edgesol/residuals.hpp"
#include "edgesol/solutions.hpp"
#include "edgesol/trajectory.hpp"
#include "edgesol/transforms.hpp"
