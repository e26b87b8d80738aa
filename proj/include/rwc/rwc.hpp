#pragma once

#include "rwc/error.hpp"
#include "rwc/estimator.hpp"
#include "rwc/exact.hpp"
#include "rwc/graph.hpp"
#include "rwc/io.hpp"
#include "rwc/seed.hpp"
#include "rwc/selection.hpp"
#include "rwc/serialize.hpp"
#include "rwc/simulation.hpp"
#include "rwc/walk.hpp"
