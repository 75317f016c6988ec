#pragma once

#include "perdec/arith.hpp"
#include "perdec/config.hpp"
#include "perdec/decompose.hpp"
#include "perdec/error.hpp"
#include "perdec/field.hpp"
#include "perdec/json_io.hpp"
#include "perdec/lattice.hpp"
#include "perdec/laurent.hpp"
#include "perdec/parallel.hpp"
#include "perdec/sparse.hpp"
#include "perdec/tiling.hpp"
