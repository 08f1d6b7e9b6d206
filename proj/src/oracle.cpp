#include "khk/oracle.hpp"
#include "khk/errors.hpp"

#include <bit>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khk {

LaurentPolynomial LaurentPolynomial::monomial(int exponent, long long coeff) {
    LaurentPolynomial p;
    p.add_term(exponent, coeff);
    return p;
}

void LaurentPolynomial::add_term(int exponent, long long coeff) {
    if (coeff == 0) return;
    auto it = coef_.find(exponent);
    if (it == coef_.end()) {
        coef_.emplace(exponent, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) coef_.erase(it);
    }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
    for (auto [e, c] : o.coef_) add_term(e, c);
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial out;
    for (auto [ea, ca] : a.coef_)
        for (auto [eb, cb] : b.coef_) out.add_term(ea + eb, ca * cb);
    return out;
}

LaurentPolynomial LaurentPolynomial::inverted() const {
    LaurentPolynomial out;
    for (auto [e, c] : coef_) out.add_term(-e, c);
    return out;
}

std::string LaurentPolynomial::str() const {
    if (coef_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
        long long c = it->second;
        int e = it->first;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (e == 0) os << c;
        else {
            if (c != 1) os << c;
            if (e == 1) os << "q";
            else os << "q^" << e;
        }
    }
    return os.str();
}

LaurentPolynomial state_sum_jones(const LinkDiagram& d, int cap, bool parallel) {
    int n = d.crossing_count();
    if (n > cap)
        throw CapError("diagram has " + std::to_string(n) + " crossings, above the cap of " +
                       std::to_string(cap) + " (raise with --cap or KHK_CAP)");
    int npos = d.n_plus(), nneg = d.n_minus();
    const long long nstates = 1LL << n;

    LaurentPolynomial total;
#ifdef _OPENMP
    if (parallel && n > 4) {
#pragma omp parallel
        {
            LaurentPolynomial local;
#pragma omp for schedule(static) nowait
            for (long long s = 0; s < nstates; ++s) {
                Smoothing sm = resolve(d, static_cast<StateBits>(s));
                int w = std::popcount(static_cast<StateBits>(s));
                long long sign = (w - nneg) % 2 ? -1 : 1;
                int base = w + npos - 2 * nneg;
                // (q + q^-1)^c expanded as sum_k C(c,k) q^(c-2k)
                long long coeff = 1;
                for (int k = 0; k <= sm.circles; ++k) {
                    local.add_term(base + sm.circles - 2 * k, sign * coeff);
                    coeff = coeff * (sm.circles - k) / (k + 1);
                }
            }
#pragma omp critical(khk_jones_merge)
            total += local;
        }
        return total;
    }
#endif
    for (long long s = 0; s < nstates; ++s) {
        Smoothing sm = resolve(d, static_cast<StateBits>(s));
        int w = std::popcount(static_cast<StateBits>(s));
        long long sign = (w - nneg) % 2 ? -1 : 1;
        int base = w + npos - 2 * nneg;
        long long coeff = 1;
        for (int k = 0; k <= sm.circles; ++k) {
            total.add_term(base + sm.circles - 2 * k, sign * coeff);
            coeff = coeff * (sm.circles - k) / (k + 1);
        }
    }
    (void)parallel;
    return total;
}

LaurentPolynomial euler_characteristic(const GradedDims& dims) {
    LaurentPolynomial out;
    for (auto& [key, dim] : dims) {
        auto [i, j] = key;
        out.add_term(j, (i % 2 ? -1 : 1) * dim);
    }
    return out;
}

} // namespace khk
