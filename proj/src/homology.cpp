#include "khk/homology.hpp"
#include "khk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace khk {

SparseRationalMatrix SparseRationalMatrix::from_int(const SparseIntMatrix& m) {
    SparseRationalMatrix out(m.rows, m.cols);
    for (int c = 0; c < m.cols; ++c)
        for (auto [r, v] : m.col[c])
            if (v != 0) out.row[r].emplace_back(c, Rational(v));
    for (auto& r : out.row)
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void SparseRationalMatrix::set(int r, int c, Rational v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw ValidationError("matrix index out of bounds");
    auto& entries = row[r];
    auto it = std::lower_bound(entries.begin(), entries.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != entries.end() && it->first == c) {
        if (v == 0) entries.erase(it);
        else it->second = std::move(v);
    } else if (v != 0) {
        entries.insert(it, {c, std::move(v)});
    }
}

Rational SparseRationalMatrix::get(int r, int c) const {
    const auto& entries = row[r];
    auto it = std::lower_bound(entries.begin(), entries.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != entries.end() && it->first == c) return it->second;
    return 0;
}

long long SparseRationalMatrix::nnz() const {
    long long t = 0;
    for (auto& r : row) t += static_cast<long long>(r.size());
    return t;
}

namespace {

bool is_unit(const Rational& v) {
    return boost::multiprecision::numerator(v) == 1 || boost::multiprecision::numerator(v) == -1;
}

} // namespace

long long rank_exact(SparseRationalMatrix m) {
    using Row = std::vector<std::pair<int, Rational>>;
    std::vector<Row>& rows = m.row;
    std::vector<char> active(rows.size(), 1);
    std::vector<int> col_count(m.cols, 0);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].empty()) active[r] = 0;
        for (auto& [c, v] : rows[r]) ++col_count[c];
    }

    long long rank = 0;
    Row scratch;
    while (true) {
        // pivot row: fewest entries, unit leading values preferred
        int pr = -1;
        size_t best = ~size_t{0};
        for (size_t r = 0; r < rows.size(); ++r)
            if (active[r] && rows[r].size() < best) { best = rows[r].size(); pr = static_cast<int>(r); }
        if (pr < 0) break;

        int pc = -1;
        long long best_cc = -1;
        bool best_unit = false;
        for (auto& [c, v] : rows[pr]) {
            bool unit = is_unit(v) && boost::multiprecision::denominator(v) == 1;
            if (pc < 0 || std::pair(!unit, static_cast<long long>(col_count[c])) <
                              std::pair(!best_unit, best_cc)) {
                pc = c;
                best_cc = col_count[c];
                best_unit = unit;
            }
        }

        ++rank;
        active[pr] = 0;
        for (auto& [c, v] : rows[pr]) --col_count[c];
        const Rational pv = m.get(pr, pc);

        for (size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            const auto& entries = rows[r];
            auto it = std::lower_bound(entries.begin(), entries.end(), pc,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it == entries.end() || it->first != pc) continue;
            Rational f = it->second / pv;

            // rows[r] -= f * rows[pr], with the pivot column vanishing exactly
            scratch.clear();
            auto a = entries.begin();
            auto b = rows[pr].begin();
            while (a != entries.end() || b != rows[pr].end()) {
                if (b == rows[pr].end() || (a != entries.end() && a->first < b->first)) {
                    scratch.push_back(*a++);
                } else if (a == entries.end() || b->first < a->first) {
                    scratch.emplace_back(b->first, -f * b->second);
                    ++b;
                } else {
                    Rational v = a->second - f * b->second;
                    if (v != 0) scratch.emplace_back(a->first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            for (auto& [c, v] : rows[r]) --col_count[c];
            rows[r] = scratch;
            for (auto& [c, v] : rows[r]) ++col_count[c];
            if (rows[r].empty()) active[r] = 0;
        }
    }
    return rank;
}

GradedDims homology_dims(const GradedChainComplex& cx, bool parallel) {
    std::vector<GradedChainComplex::Key> keys;
    for (auto& [key, mat] : cx.differentials()) keys.push_back(key);
    std::vector<long long> ranks(keys.size(), 0);

    std::string error;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long k = 0; k < static_cast<long long>(keys.size()); ++k) {
        try {
            ranks[k] = rank_exact(
                SparseRationalMatrix::from_int(*cx.differential(keys[k].first, keys[k].second)));
        } catch (const std::exception& e) {
#pragma omp critical(khk_rank_error)
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw InternalError(error);

    std::map<GradedChainComplex::Key, long long> rank_at;
    for (size_t k = 0; k < keys.size(); ++k) rank_at[keys[k]] = ranks[k];
    auto rank_of = [&](int i, int j) {
        auto it = rank_at.find({i, j});
        return it == rank_at.end() ? 0LL : it->second;
    };

    GradedDims out;
    for (auto& [key, dim] : cx.block_dims()) {
        auto [i, j] = key;
        long long h = dim - rank_of(i, j) - rank_of(i - 1, j);
        if (h < 0) throw InternalError("negative Betti number: corrupted complex");
        if (h > 0) out[key] = h;
    }
    return out;
}

GradedDims convolve(const GradedDims& a, const GradedDims& b) {
    GradedDims out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b)
            out[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return out;
}

std::string PoincarePolynomial::str() const {
    if (terms.empty()) return "0";
    std::vector<std::pair<std::pair<int, int>, long long>> ordered(terms.begin(), terms.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first < b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [ij, coeff] : ordered) {
        if (coeff == 0) continue;
        auto [i, j] = ij;
        long long c = coeff;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::string vars;
        if (i == 1) vars += "t";
        else if (i != 0) vars += "t^" + std::to_string(i);
        if (j == 1) vars += "q";
        else if (j != 0) vars += "q^" + std::to_string(j);
        if (vars.empty()) os << c;
        else {
            if (c != 1) os << c;
            os << vars;
        }
    }
    if (first) return "0";
    return os.str();
}

PoincarePolynomial poincare_polynomial(const GradedDims& dims) {
    PoincarePolynomial p;
    for (auto& [key, dim] : dims)
        if (dim != 0) p.terms[key] = dim;
    return p;
}

} // namespace khk
