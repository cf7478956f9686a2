#pragma once

#include "asymmodes/channels.hpp"
#include "asymmodes/core.hpp"
#include "asymmodes/monotones.hpp"
#include "asymmodes/random.hpp"
#include "asymmodes/rf.hpp"
#include "asymmodes/su2.hpp"
#include "asymmodes/tensor_basis.hpp"
#include "asymmodes/u1.hpp"
