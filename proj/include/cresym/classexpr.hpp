#ifndef CRESYM_CLASSEXPR_HPP
#define CRESYM_CLASSEXPR_HPP

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

#include "cresym/subset.hpp"

namespace cresym {

/* Linear combinations over the tokens H, h, E{..}, e{..}, EN, eN.
 * Grammar: expr := term (('+'|'-') term)*, term := [int ['*']] atom.
 * Braced sets are center labels (subsets of {0..n}); EN/eN with
 * N <= n+1 means the point blowup E_{N-1}, with N > n+1 an extra point. */
struct ClassExpr {
    bool divisor_side = false;         // H/E tokens vs h/e tokens
    mpz_class coeff_h;                 // H or h coefficient
    std::map<Subset, mpz_class> coeff_center;
    std::map<int, mpz_class> coeff_extra;  // point index (> n+1) -> coefficient

    int max_point() const;  // largest Theorem-1.1 point index referenced
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

ClassExpr parse_class_expr(const std::string& text, int n);

std::string format_curve(const mpz_class& d, const std::vector<mpz_class>& a);

}  // namespace cresym

#endif
