#pragma once

#include "racdraw/scalar.hpp"
#include "racdraw/geometry.hpp"
#include "racdraw/drawing.hpp"
#include "racdraw/validate.hpp"
#include "racdraw/planarize.hpp"
#include "racdraw/discharge.hpp"
#include "racdraw/analysis.hpp"
#include "racdraw/gen.hpp"
#include "racdraw/io.hpp"
