#pragma once

#include "leosim/constellation.hpp"
#include "leosim/dijkstra.hpp"
#include "leosim/error.hpp"
#include "leosim/experiment.hpp"
#include "leosim/geometry.hpp"
#include "leosim/matrices.hpp"
#include "leosim/metrics.hpp"
#include "leosim/oracle.hpp"
#include "leosim/routing.hpp"
#include "leosim/series_io.hpp"
#include "leosim/topology.hpp"
#include "leosim/types.hpp"
