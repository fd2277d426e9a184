#pragma once

#include "defexp/rational.hpp"
#include "defexp/upoly.hpp"
#include "defexp/exactmath.hpp"
#include "defexp/jpoly.hpp"
#include "defexp/mpoly.hpp"
#include "defexp/symcoeff.hpp"
#include "defexp/precreal.hpp"
#include "defexp/qseries.hpp"
#include "defexp/zeros.hpp"
#include "defexp/validate.hpp"
#include "defexp/serialize.hpp"
#include "defexp/fixtures.hpp"
