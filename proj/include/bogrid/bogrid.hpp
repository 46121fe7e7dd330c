#pragma once

#include "bogrid/acquisition.hpp"
#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"
#include "bogrid/harness.hpp"
#include "bogrid/io.hpp"
#include "bogrid/kernel.hpp"
#include "bogrid/level.hpp"
#include "bogrid/metrics.hpp"
#include "bogrid/navigation.hpp"
#include "bogrid/rng.hpp"
#include "bogrid/surrogate.hpp"
