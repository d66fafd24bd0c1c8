#pragma once

#include "dmt/basin_boundary.hpp"
#include "dmt/cubical.hpp"
#include "dmt/field.hpp"
#include "dmt/field_io.hpp"
#include "dmt/morse_skeleton.hpp"
#include "dmt/persistence.hpp"
#include "dmt/seg_metrics.hpp"
#include "dmt/topo_loss.hpp"
#include "dmt/version.hpp"
