#pragma once

#include "slval/error.hpp"
#include "slval/exactnum.hpp"
#include "slval/linalg.hpp"
#include "slval/polytope.hpp"
#include "slval/triangulate.hpp"
#include "slval/valuation.hpp"
#include "slval/harness.hpp"
#include "slval/io.hpp"
#include "slval/suite.hpp"
