#pragma once

#include "khk/diagram.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace khk {

using StateBits = std::uint32_t;

// Default crossing cap: KHK_CAP from the environment, else 14.
int default_crossing_cap();

// Circle decomposition S_alpha of one smoothing. Bit k of the state picks the
// resolution of crossing k: 0 joins slots 0-1 and 2-3 of the tuple, 1 joins
// slots 0-3 and 1-2. Circles are numbered by ascending minimal arc label;
// free loops count as circles of their own.
struct Smoothing {
    StateBits state = 0;
    int circles = 0;
    std::vector<int> circle_of_arc;    // dense arc index -> circle id
    std::vector<int> circle_of_loop;   // loop position -> circle id
    std::vector<ArcLabel> circle_min;  // circle id -> minimal label, ascending
};

Smoothing resolve(const LinkDiagram& d, StateBits state);

// (-1)^(number of 1-bits of s at positions below k). Bit k of s must be 0.
int edge_sign(StateBits s, int k);

// q-grading normalization: j = deg(v) + i + shift, with shift = n+ - n-
// (writhe, the standard convention) or n+ + n- (crossing count; kept only to
// demonstrate that it cannot reproduce the standard tables).
enum class QGradingShift { writhe, crossing_count };

struct Generator {
    StateBits state = 0;
    std::uint32_t x_mask = 0; // bit per circle id: 1 labels the circle x
    int i = 0;
    int j = 0;
    int degree = 0;
};

// One cube edge: state -> state | 1<<k. Applies the saddle map to a
// generator labeling of the source smoothing; returns (target x_mask, coeff)
// terms, already scaled by the edge sign. Merge uses m, split uses Delta.
std::vector<std::pair<std::uint32_t, int>>
edge_map(const LinkDiagram& d, const Smoothing& src, const Smoothing& tgt, int k,
         std::uint32_t x_mask);

// Integer matrix in column-major sparse form; entries of cube differentials
// are always +-1 but compositions are checked exactly.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, int>>> col; // (row, value), row ascending
};

struct CubeOptions {
    int cap = default_crossing_cap();
    QGradingShift shift = QGradingShift::writhe;
    bool parallel = true;
};

// The bigraded complex CKh(D): per-(i,j) generator counts and the
// differentials d^{i,j}: CKh^{i,j} -> CKh^{i+1,j}. Immutable once built.
class GradedChainComplex {
public:
    using Key = std::pair<int, int>; // (i, j)

    int crossings() const { return n_; }
    int n_plus() const { return nplus_; }
    int n_minus() const { return nminus_; }

    const std::map<Key, long long>& block_dims() const { return dims_; }
    long long dim(int i, int j) const;
    // d from block (i,j); absent means zero (either block empty).
    const SparseIntMatrix* differential(int i, int j) const;
    const std::map<Key, SparseIntMatrix>& differentials() const { return diff_; }

    long long total_generators() const;
    const Smoothing& smoothing(StateBits s) const { return smoothings_[s]; }

    // Ordered generator list of one block (states ascending, then labelings
    // ascending); matches the row/column indexing of the differentials.
    std::vector<Generator> generators(int i, int j) const;

    // Verifies d(i+1,j) o d(i,j) = 0 for every block, exactly.
    bool d_squared_is_zero() const;

    friend GradedChainComplex build_complex(const LinkDiagram&, const CubeOptions&);

private:
    int n_ = 0, nplus_ = 0, nminus_ = 0;
    int shift_ = 0;
    std::vector<Smoothing> smoothings_;
    std::map<Key, long long> dims_;
    std::map<Key, SparseIntMatrix> diff_;
    // per state: first generator index (within its block) for each x-count
    std::vector<std::vector<long long>> base_;
};

GradedChainComplex build_complex(const LinkDiagram& d, const CubeOptions& opts = {});

} // namespace khk
