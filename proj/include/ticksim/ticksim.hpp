#pragma once

#include "ticksim/bell.hpp"
#include "ticksim/cat.hpp"
#include "ticksim/eprb.hpp"
#include "ticksim/jacobi.hpp"
#include "ticksim/position.hpp"
#include "ticksim/rng.hpp"
#include "ticksim/sampler.hpp"
#include "ticksim/spin.hpp"
#include "ticksim/types.hpp"
