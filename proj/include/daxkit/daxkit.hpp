#pragma once

#include "daxkit/bigint.hpp"
#include "daxkit/commands.hpp"
#include "daxkit/decision.hpp"
#include "daxkit/document.hpp"
#include "daxkit/error.hpp"
#include "daxkit/group.hpp"
#include "daxkit/group_ring.hpp"
#include "daxkit/homotopy.hpp"
#include "daxkit/lattice.hpp"
#include "daxkit/plat.hpp"
#include "daxkit/sheets.hpp"
