#pragma once

// Serial reference implementations kept for testing and benchmarking. These
// deliberately avoid the code paths of the main kernels: circles are counted
// by walking strands instead of union-find, ranks by dense textbook
// elimination, and nothing here touches OpenMP.

#include "khk/cube.hpp"
#include "khk/homology.hpp"
#include "khk/oracle.hpp"

namespace khk::reference {

// Circle count of one smoothing, by following strand ends around the diagram.
int circle_count_walk(const LinkDiagram& d, StateBits state);

// Straight serial state sum built on the walking circle counter.
LaurentPolynomial state_sum_jones_serial(const LinkDiagram& d, int cap = default_crossing_cap());

// Dense Gaussian elimination over Q.
long long rank_dense(const SparseRationalMatrix& m);

// Block-by-block Betti numbers on one thread (same exact arithmetic as the
// parallel path, serial schedule).
GradedDims homology_dims_serial(const GradedChainComplex& cx);

} // namespace khk::reference
