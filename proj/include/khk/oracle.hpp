#pragma once

#include "khk/diagram.hpp"
#include "khk/cube.hpp"
#include "khk/homology.hpp"

#include <map>
#include <string>

namespace khk {

// One-variable Laurent polynomial in q with integer coefficients.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    static LaurentPolynomial monomial(int exponent, long long coeff);

    void add_term(int exponent, long long coeff);
    const std::map<int, long long>& coefficients() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o);
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        a += b;
        return a;
    }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    bool operator==(const LaurentPolynomial&) const = default;

    // q -> q^-1
    LaurentPolynomial inverted() const;

    std::string str() const; // exponents descending

private:
    std::map<int, long long> coef_; // nonzero only
};

// Kauffman-bracket state sum for the (unreduced) Jones polynomial:
//   sum_alpha (-1)^(|alpha|-n-) q^(|alpha|+n+-2n-) (q+q^-1)^c(alpha),
// evaluated by enumerating all 2^n states; uses only circle counting, no
// vector spaces and no differentials.
LaurentPolynomial state_sum_jones(const LinkDiagram& d, int cap = default_crossing_cap(),
                                  bool parallel = true);

// Graded Euler characteristic sum_{i,j} (-1)^i q^j dim(i,j).
LaurentPolynomial euler_characteristic(const GradedDims& dims);

} // namespace khk
