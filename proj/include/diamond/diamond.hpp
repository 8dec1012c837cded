#pragma once

#include "diamond/bounds.hpp"
#include "diamond/core.hpp"
#include "diamond/error.hpp"
#include "diamond/mc_sim.hpp"
#include "diamond/scalar_opt.hpp"
#include "diamond/symmetric.hpp"
