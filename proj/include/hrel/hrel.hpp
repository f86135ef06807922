#pragma once

// Umbrella header: parse rep-files, extract generators by dual-number
// differentiation at the group identity, realize fields on exact
// finite-dimensional spaces and verify the commutation relations.

#include "hrel/ast.hpp"
#include "hrel/autodiff.hpp"
#include "hrel/catalog.hpp"
#include "hrel/dual.hpp"
#include "hrel/eval.hpp"
#include "hrel/fock.hpp"
#include "hrel/io.hpp"
#include "hrel/matexp.hpp"
#include "hrel/matrix.hpp"
#include "hrel/minkowski.hpp"
#include "hrel/parser.hpp"
#include "hrel/polyspace.hpp"
#include "hrel/relations.hpp"
#include "hrel/report.hpp"
#include "hrel/validate.hpp"
#include "hrel/verifier.hpp"
