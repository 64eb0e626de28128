#pragma once

#include "dualspace/dense.hpp"
#include "dualspace/duality.hpp"
#include "dualspace/error.hpp"
#include "dualspace/field.hpp"
#include "dualspace/io.hpp"
#include "dualspace/limits.hpp"
#include "dualspace/random.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"
#include "dualspace/verify.hpp"
