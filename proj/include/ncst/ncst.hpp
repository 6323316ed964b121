// Umbrella header.
#pragma once

#include "ncst/core.hpp"
#include "ncst/testfn.hpp"
#include "ncst/kernels.hpp"
#include "ncst/parallel.hpp"
#include "ncst/integrate.hpp"
#include "ncst/state.hpp"
#include "ncst/weyl.hpp"
#include "ncst/geometry.hpp"
