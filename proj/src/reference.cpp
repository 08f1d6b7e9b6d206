#include "khk/reference.hpp"
#include "khk/errors.hpp"

#include <bit>
#include <vector>

namespace khk::reference {

int circle_count_walk(const LinkDiagram& d, StateBits state) {
    int na = d.arc_count();
    std::vector<char> seen(na, 0);
    int circles = static_cast<int>(d.free_loops().size());

    auto partner_slot = [&](int crossing, int slot) {
        if (state >> crossing & 1) return 3 - slot;       // joins 0-3 and 1-2
        return slot ^ 1;                                  // joins 0-1 and 2-3
    };

    for (int a0 = 0; a0 < na; ++a0) {
        if (seen[a0]) continue;
        ++circles;
        int arc = a0, exit_end = 0;
        do {
            seen[arc] = 1;
            ArcSite site = d.sites(arc)[exit_end];
            int p = partner_slot(site.crossing, site.slot);
            int next = d.slot_arc(site.crossing, p);
            ArcSite at{site.crossing, p};
            int entered = d.sites(next)[0] == at ? 0 : 1;
            arc = next;
            exit_end = 1 - entered;
        } while (!(arc == a0 && exit_end == 0));
    }
    return circles;
}

LaurentPolynomial state_sum_jones_serial(const LinkDiagram& d, int cap) {
    int n = d.crossing_count();
    if (n > cap)
        throw CapError("diagram has " + std::to_string(n) + " crossings, above the cap of " +
                       std::to_string(cap));
    int npos = d.n_plus(), nneg = d.n_minus();
    LaurentPolynomial q_plus_qinv;
    q_plus_qinv.add_term(1, 1);
    q_plus_qinv.add_term(-1, 1);

    LaurentPolynomial total;
    for (long long s = 0; s < (1LL << n); ++s) {
        int c = circle_count_walk(d, static_cast<StateBits>(s));
        int w = std::popcount(static_cast<std::uint32_t>(s));
        LaurentPolynomial term = LaurentPolynomial::monomial(w + npos - 2 * nneg,
                                                             (w - nneg) % 2 ? -1 : 1);
        for (int k = 0; k < c; ++k) term = term * q_plus_qinv;
        total += term;
    }
    return total;
}

long long rank_dense(const SparseRationalMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols, Rational(0)));
    for (int r = 0; r < m.rows; ++r)
        for (auto& [c, v] : m.row[r]) a[r][c] = v;

    long long rank = 0;
    int lead = 0;
    for (int r = 0; r < m.rows && lead < m.cols; ++r) {
        int pivot = -1;
        while (lead < m.cols) {
            for (int rr = r; rr < m.rows; ++rr)
                if (a[rr][lead] != 0) { pivot = rr; break; }
            if (pivot >= 0) break;
            ++lead;
        }
        if (pivot < 0) break;
        std::swap(a[r], a[pivot]);
        for (int rr = 0; rr < m.rows; ++rr) {
            if (rr == r || a[rr][lead] == 0) continue;
            Rational f = a[rr][lead] / a[r][lead];
            for (int c = lead; c < m.cols; ++c) a[rr][c] -= f * a[r][c];
        }
        ++rank;
        ++lead;
    }
    return rank;
}

GradedDims homology_dims_serial(const GradedChainComplex& cx) {
    return homology_dims(cx, /*parallel=*/false);
}

} // namespace khk::reference
