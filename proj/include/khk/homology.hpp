#pragma once

#include "khk/cube.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace khk {

using Rational = boost::multiprecision::cpp_rational;

// Row-major sparse matrix over Q. Stored entries are nonzero.
struct SparseRationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> row; // (col, value), col ascending

    SparseRationalMatrix() = default;
    SparseRationalMatrix(int r, int c) : rows(r), cols(c), row(r) {}
    static SparseRationalMatrix from_int(const SparseIntMatrix& m);

    void set(int r, int c, Rational v);
    Rational get(int r, int c) const;
    long long nnz() const;
};

// Exact rank by sparse rational elimination with sparsity-aware pivoting.
// No floating point anywhere.
long long rank_exact(SparseRationalMatrix m);

// (i, j) -> dim Kh^{i,j}; only nonzero entries stored.
using GradedDims = std::map<std::pair<int, int>, long long>;

// dim H^{i,j} = dim CKh^{i,j} - rank d^{i,j} - rank d^{i-1,j}, per block.
GradedDims homology_dims(const GradedChainComplex& cx, bool parallel = true);

// (i,j)-convolution: the dims of a disjoint union / tensor product.
GradedDims convolve(const GradedDims& a, const GradedDims& b);

// Two-variable Laurent polynomial sum_{i,j} dim * t^i q^j.
struct PoincarePolynomial {
    std::map<std::pair<int, int>, long long> terms; // (i,j) -> coefficient
    bool operator==(const PoincarePolynomial&) const = default;
    std::string str() const; // terms ordered by j descending, then i ascending
};

PoincarePolynomial poincare_polynomial(const GradedDims& dims);

} // namespace khk
