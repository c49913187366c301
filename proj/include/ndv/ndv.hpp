#pragma once

#include "experiments.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "subsample.hpp"
#include "version.hpp"
#include "weighted.hpp"
