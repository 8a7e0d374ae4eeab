#pragma once

#include "phasesync/actuation.hpp"
#include "phasesync/compare.hpp"
#include "phasesync/coupling.hpp"
#include "phasesync/engine.hpp"
#include "phasesync/error.hpp"
#include "phasesync/metrics.hpp"
#include "phasesync/network.hpp"
#include "phasesync/phase.hpp"
#include "phasesync/trace.hpp"
