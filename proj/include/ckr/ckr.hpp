#pragma once

#include "ckr/bench.hpp"
#include "ckr/bottleneck.hpp"
#include "ckr/error.hpp"
#include "ckr/frt.hpp"
#include "ckr/graph.hpp"
#include "ckr/hierarchy.hpp"
#include "ckr/oracle.hpp"
#include "ckr/partition.hpp"
#include "ckr/rng.hpp"
#include "ckr/scales.hpp"
#include "ckr/spanner.hpp"
#include "ckr/ultrametric.hpp"
