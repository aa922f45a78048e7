#pragma once

// Exact polynomial trace lifting on the reference triangle: boundary data
// given as traces and normal derivatives lifts to a polynomial of the same
// degree reproducing every trace exactly, with numeric evaluation of the
// Sobolev norms that quantify the stability of the construction.

#include "tracelift/errors.hpp"
#include "tracelift/geometry.hpp"
#include "tracelift/io.hpp"
#include "tracelift/kernel.hpp"
#include "tracelift/lifting.hpp"
#include "tracelift/norms.hpp"
#include "tracelift/poly.hpp"
#include "tracelift/scalar.hpp"
#include "tracelift/sweep.hpp"
