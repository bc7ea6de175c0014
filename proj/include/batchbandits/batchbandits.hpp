#pragma once

#include "batchbandits/design.hpp"
#include "batchbandits/env.hpp"
#include "batchbandits/harness.hpp"
#include "batchbandits/policy_adversarial.hpp"
#include "batchbandits/policy_linear.hpp"
#include "batchbandits/policy_mab.hpp"
#include "batchbandits/regret.hpp"
#include "batchbandits/rng.hpp"
