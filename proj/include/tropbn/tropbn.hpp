#pragma once

// Exact Brill-Noether combinatorics on generic chains of loops: reduced
// divisors, lingering lattice paths, Abel-Jacobi coordinates, rank-locus
// cells, theta translates and their stable intersections, plus a discrete
// chip-firing oracle for cross-checking everything.

#include "tropbn/brill_noether.hpp"
#include "tropbn/chain.hpp"
#include "tropbn/divisor.hpp"
#include "tropbn/errors.hpp"
#include "tropbn/jacobian.hpp"
#include "tropbn/json_io.hpp"
#include "tropbn/lattice.hpp"
#include "tropbn/oracle.hpp"
#include "tropbn/rational.hpp"
#include "tropbn/sampling.hpp"
#include "tropbn/stable_intersection.hpp"
#include "tropbn/theta.hpp"
