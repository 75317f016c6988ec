#pragma once

#include <string>

#include "perdec/config.hpp"
#include "perdec/lattice.hpp"
#include "perdec/laurent.hpp"
#include "perdec/tiling.hpp"

namespace perdec {

// Readers throw ParseError: syntax errors carry "line L, column C",
// semantic errors carry the JSON pointer of the offending value. Integers
// may be JSON numbers or decimal strings (for values beyond 64 bits);
// writers emit numbers when they fit in int64 and strings otherwise.

// {"dim": d, "terms": [{"exp": [...], "coef": n}, ...]}
LaurentPoly parse_poly(const std::string& text);
std::string dump_poly(const LaurentPoly& f);

// {"kind": "window" | "periodic" | "fibersum", ...}
ConfigView parse_config(const std::string& text);
std::string dump_config(const ConfigView& c);

// {"dim": d, "cells": [[...], ...]}
Tile parse_tile(const std::string& text);
std::string dump_tile(const Tile& t);

// {"dim": d, "basis": [[...], ...]}; entries are integers or "p/q" strings.
SubspaceBasis parse_subspace(const std::string& text);
std::string dump_subspace(const SubspaceBasis& V);

}  // namespace perdec
