#pragma once

#include "bench.hpp"
#include "edt.hpp"
#include "grid.hpp"
#include "morph.hpp"
#include "pnm.hpp"
#include "sched.hpp"
#include "smooth.hpp"
#include "synth.hpp"
#include "topo.hpp"
