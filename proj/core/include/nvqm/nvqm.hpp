#pragma once

#include "nvqm/entropic.hpp"
#include "nvqm/entwit.hpp"
#include "nvqm/nvsim.hpp"
#include "nvqm/qcore.hpp"
#include "nvqm/random.hpp"
#include "nvqm/states.hpp"
