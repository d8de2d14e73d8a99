#pragma once

#include "polar/combinatorics.hpp"
#include "polar/types.hpp"
#include "polar/form.hpp"
#include "polar/lp.hpp"
#include "polar/norms.hpp"
#include "polar/grid.hpp"
#include "polar/bounds.hpp"
#include "polar/extremals.hpp"
#include "polar/report.hpp"
#include "polar/io.hpp"
