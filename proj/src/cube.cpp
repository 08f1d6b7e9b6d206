#include "khk/cube.hpp"
#include "khk/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

namespace khk {

int default_crossing_cap() {
    if (const char* env = std::getenv("KHK_CAP")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 14;
}

namespace {

long long binomial(int n, int k) {
    static constexpr int N = 35;
    static const auto table = [] {
        std::array<std::array<long long, N>, N> t{};
        for (int i = 0; i < N; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    if (k < 0 || k > n) return 0;
    return table[n][k];
}

// rank of a popcount-t mask among all popcount-t masks, ascending order
long long comb_rank(std::uint32_t mask) {
    long long r = 0;
    int seen = 0;
    while (mask) {
        int p = std::countr_zero(mask);
        mask &= mask - 1;
        r += binomial(p, ++seen);
    }
    return r;
}

// next popcount-preserving mask (Gosper); caller stops once >= 1<<c
std::uint32_t next_comb(std::uint32_t v) {
    std::uint32_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

Smoothing resolve(const LinkDiagram& d, StateBits state) {
    int n = d.crossing_count();
    int na = d.arc_count();
    int nl = static_cast<int>(d.free_loops().size());

    UnionFind uf(na);
    for (int k = 0; k < n; ++k) {
        if (state >> k & 1) {
            uf.unite(d.slot_arc(k, 0), d.slot_arc(k, 3));
            uf.unite(d.slot_arc(k, 1), d.slot_arc(k, 2));
        } else {
            uf.unite(d.slot_arc(k, 0), d.slot_arc(k, 1));
            uf.unite(d.slot_arc(k, 2), d.slot_arc(k, 3));
        }
    }

    // circles carry the minimal label of their arcs; roots appear in label
    // order so sorting is already done for the crossing part
    Smoothing sm;
    sm.state = state;
    sm.circle_of_arc.assign(na, -1);
    sm.circle_of_loop.assign(nl, -1);
    std::vector<std::pair<ArcLabel, int>> reps; // (min label, root)
    for (int a = 0; a < na; ++a)
        if (uf.find(a) == a) reps.emplace_back(d.arcs()[a], a);
    for (int l = 0; l < nl; ++l) reps.emplace_back(d.free_loops()[l], -1 - l);
    std::sort(reps.begin(), reps.end());

    sm.circles = static_cast<int>(reps.size());
    sm.circle_min.resize(reps.size());
    std::vector<int> root_circle(na, -1);
    for (int c = 0; c < sm.circles; ++c) {
        sm.circle_min[c] = reps[c].first;
        if (reps[c].second >= 0) root_circle[reps[c].second] = c;
        else sm.circle_of_loop[-1 - reps[c].second] = c;
    }
    for (int a = 0; a < na; ++a) sm.circle_of_arc[a] = root_circle[uf.find(a)];
    return sm;
}

int edge_sign(StateBits s, int k) {
    if (s >> k & 1) throw ValidationError("edge position already resolved to 1");
    std::uint32_t below = s & ((StateBits{1} << k) - 1);
    return std::popcount(below) % 2 ? -1 : +1;
}

namespace {

int circle_index_by_min(const Smoothing& sm, ArcLabel min_label) {
    auto it = std::lower_bound(sm.circle_min.begin(), sm.circle_min.end(), min_label);
    if (it == sm.circle_min.end() || *it != min_label)
        throw InternalError("circle correspondence broken across cube edge");
    return static_cast<int>(it - sm.circle_min.begin());
}

// the saddle map on labelings, before the edge sign
void saddle_terms(const LinkDiagram& d, const Smoothing& src, const Smoothing& tgt, int k,
                  std::uint32_t x_mask,
                  std::vector<std::pair<std::uint32_t, int>>& out) {
    int p = src.circle_of_arc[d.slot_arc(k, 0)];
    int q = src.circle_of_arc[d.slot_arc(k, 2)];

    if (p != q) {
        // merge p,q -> m
        if (tgt.circles != src.circles - 1)
            throw InternalError("saddle merged circles without dropping the count");
        int m = tgt.circle_of_arc[d.slot_arc(k, 0)];
        int xs = (x_mask >> p & 1) + (x_mask >> q & 1);
        if (xs == 2) return; // m(x,x) = 0
        std::uint32_t base = 0;
        for (int g = 0; g < tgt.circles; ++g) {
            if (g == m) continue;
            int s = circle_index_by_min(src, tgt.circle_min[g]);
            if (x_mask >> s & 1) base |= std::uint32_t{1} << g;
        }
        if (xs == 1) base |= std::uint32_t{1} << m;
        out.emplace_back(base, 1);
        return;
    }

    // split p -> a1, a2
    if (tgt.circles != src.circles + 1)
        throw InternalError("saddle split a circle without raising the count");
    int a1 = tgt.circle_of_arc[d.slot_arc(k, 0)];
    int a2 = tgt.circle_of_arc[d.slot_arc(k, 1)];
    if (a1 == a2) throw InternalError("degenerate saddle (single-circle smoothing)");
    std::uint32_t base = 0;
    for (int g = 0; g < tgt.circles; ++g) {
        if (g == a1 || g == a2) continue;
        int s = circle_index_by_min(src, tgt.circle_min[g]);
        if (x_mask >> s & 1) base |= std::uint32_t{1} << g;
    }
    if (x_mask >> p & 1) {
        out.emplace_back(base | std::uint32_t{1} << a1 | std::uint32_t{1} << a2, 1); // Delta(x) = x@x
    } else {
        out.emplace_back(base | std::uint32_t{1} << a1, 1); // Delta(1) = 1@x + x@1
        out.emplace_back(base | std::uint32_t{1} << a2, 1);
    }
}

} // namespace

std::vector<std::pair<std::uint32_t, int>>
edge_map(const LinkDiagram& d, const Smoothing& src, const Smoothing& tgt, int k,
         std::uint32_t x_mask) {
    if ((src.state >> k & 1) || tgt.state != (src.state | StateBits{1} << k))
        throw ValidationError("edge endpoints do not differ in exactly bit k");
    std::vector<std::pair<std::uint32_t, int>> out;
    saddle_terms(d, src, tgt, k, x_mask, out);
    int sg = edge_sign(src.state, k);
    for (auto& [mask, coeff] : out) coeff *= sg;
    return out;
}

long long GradedChainComplex::dim(int i, int j) const {
    auto it = dims_.find({i, j});
    return it == dims_.end() ? 0 : it->second;
}

const SparseIntMatrix* GradedChainComplex::differential(int i, int j) const {
    auto it = diff_.find({i, j});
    return it == diff_.end() ? nullptr : &it->second;
}

long long GradedChainComplex::total_generators() const {
    long long t = 0;
    for (auto& [key, dim] : dims_) t += dim;
    return t;
}

std::vector<Generator> GradedChainComplex::generators(int i, int j) const {
    std::vector<Generator> out;
    int level = i + nminus_;
    if (level < 0 || level > n_) return out;
    for (StateBits s = 0; s < (StateBits{1} << n_); ++s) {
        if (std::popcount(s) != level) continue;
        const Smoothing& sm = smoothings_[s];
        int c = sm.circles;
        int num = c + i + shift_ - j;
        if (num % 2 || num < 0 || num / 2 > c) continue;
        int t = num / 2;
        std::uint32_t mask = t == 0 ? 0 : (std::uint32_t{1} << t) - 1;
        long long count = binomial(c, t);
        for (long long r = 0; r < count; ++r) {
            out.push_back({s, mask, i, j, c - 2 * t});
            if (r + 1 < count) mask = next_comb(mask);
        }
    }
    return out;
}

GradedChainComplex build_complex(const LinkDiagram& d, const CubeOptions& opts) {
    int n = d.crossing_count();
    if (n > opts.cap)
        throw CapError("diagram has " + std::to_string(n) + " crossings, above the cap of " +
                       std::to_string(opts.cap) + " (raise with --cap or KHK_CAP)");
    if (n > 30)
        throw CapError("crossing counts above 30 are unsupported");

    GradedChainComplex cx;
    cx.n_ = n;
    cx.nplus_ = d.n_plus();
    cx.nminus_ = d.n_minus();
    cx.shift_ = opts.shift == QGradingShift::writhe ? cx.nplus_ - cx.nminus_
                                                    : cx.nplus_ + cx.nminus_;
    const long long nstates = 1LL << n;
    cx.smoothings_.resize(nstates);
#pragma omp parallel for schedule(static) if (opts.parallel && n > 4)
    for (long long s = 0; s < nstates; ++s)
        cx.smoothings_[s] = resolve(d, static_cast<StateBits>(s));

    // block dimensions and per-(state, x-count) offsets, in index order
    cx.base_.assign(nstates, {});
    for (long long s = 0; s < nstates; ++s) {
        const Smoothing& sm = cx.smoothings_[s];
        int i = std::popcount(static_cast<StateBits>(s)) - cx.nminus_;
        cx.base_[s].resize(sm.circles + 1);
        for (int t = 0; t <= sm.circles; ++t) {
            int j = (sm.circles - 2 * t) + i + cx.shift_;
            long long& dim = cx.dims_[{i, j}];
            cx.base_[s][t] = dim;
            dim += binomial(sm.circles, t);
        }
    }

    // pre-create map entries so blocks can be filled in parallel
    std::vector<GradedChainComplex::Key> keys;
    for (auto& [key, dim] : cx.dims_) {
        auto [i, j] = key;
        if (dim > 0 && cx.dim(i + 1, j) > 0) {
            cx.diff_[key] = {};
            keys.push_back(key);
        }
    }

    std::vector<std::vector<StateBits>> by_level(n + 1);
    for (long long s = 0; s < nstates; ++s)
        by_level[std::popcount(static_cast<StateBits>(s))].push_back(static_cast<StateBits>(s));

    std::string error;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long long ki = 0; ki < static_cast<long long>(keys.size()); ++ki) {
        try {
            auto [i, j] = keys[ki];
            SparseIntMatrix& M = cx.diff_.at(keys[ki]);
            M.rows = static_cast<int>(cx.dim(i + 1, j));
            M.cols = static_cast<int>(cx.dims_.at(keys[ki]));
            M.col.resize(M.cols);

            std::vector<std::pair<std::uint32_t, int>> terms;
            for (StateBits s : by_level[i + cx.nminus_]) {
                const Smoothing& sm = cx.smoothings_[s];
                int c = sm.circles;
                int num = c + i + cx.shift_ - j;
                if (num % 2 || num < 0 || num / 2 > c) continue;
                int t = num / 2;
                long long count = binomial(c, t);
                std::uint32_t mask = t == 0 ? 0 : (std::uint32_t{1} << t) - 1;
                for (long long r = 0; r < count; ++r) {
                    long long col = cx.base_[s][t] + r;
                    auto& entries = M.col[col];
                    for (int k = 0; k < n; ++k) {
                        if (s >> k & 1) continue;
                        StateBits sk = s | StateBits{1} << k;
                        const Smoothing& tg = cx.smoothings_[sk];
                        terms.clear();
                        saddle_terms(d, sm, tg, k, mask, terms);
                        int sg = edge_sign(s, k);
                        for (auto [tmask, coeff] : terms) {
                            int tt = std::popcount(tmask);
                            long long row = cx.base_[sk][tt] + comb_rank(tmask);
                            entries.emplace_back(static_cast<int>(row), sg * coeff);
                        }
                    }
                    std::sort(entries.begin(), entries.end());
                    if (r + 1 < count) mask = next_comb(mask);
                }
            }
        } catch (const std::exception& e) {
#pragma omp critical(khk_cube_error)
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw InternalError(error);
    return cx;
}

bool GradedChainComplex::d_squared_is_zero() const {
    for (auto& [key, d1] : diff_) {
        auto [i, j] = key;
        auto it2 = diff_.find({i + 1, j});
        if (it2 == diff_.end()) continue;
        const SparseIntMatrix& d2 = it2->second;
        std::vector<long long> acc(d2.rows, 0);
        std::vector<int> touched;
        for (int col = 0; col < d1.cols; ++col) {
            touched.clear();
            for (auto [r1, v1] : d1.col[col])
                for (auto [r2, v2] : d2.col[r1]) {
                    if (acc[r2] == 0) touched.push_back(r2);
                    acc[r2] += static_cast<long long>(v1) * v2;
                }
            for (int r : touched) {
                if (acc[r] != 0) return false;
                acc[r] = 0;
            }
            for (int r : touched) acc[r] = 0;
        }
    }
    return true;
}

} // namespace khk
