#pragma once

#include "olmesh/clements.hpp"
#include "olmesh/errors.hpp"
#include "olmesh/io.hpp"
#include "olmesh/native_gates.hpp"
#include "olmesh/noise.hpp"
#include "olmesh/noise_model.hpp"
#include "olmesh/numerics.hpp"
#include "olmesh/rearrange.hpp"
#include "olmesh/rng.hpp"
#include "olmesh/sim.hpp"
#include "olmesh/targets.hpp"
