// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cpimac/channel.hpp"
#include "cpimac/dof.hpp"
#include "cpimac/errors.hpp"
#include "cpimac/linalg.hpp"
#include "cpimac/precoding.hpp"
#include "cpimac/rates.hpp"
#include "cpimac/rng.hpp"
#include "cpimac/sim.hpp"
