#pragma once

#include "subcav/units.hpp"
#include "subcav/error.hpp"
#include "subcav/dielectric.hpp"
#include "subcav/modes.hpp"
#include "subcav/emitter.hpp"
#include "subcav/coupling.hpp"
#include "subcav/golden_rule.hpp"
#include "subcav/langevin.hpp"
#include "subcav/mc_validator.hpp"
