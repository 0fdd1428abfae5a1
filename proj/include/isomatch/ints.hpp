#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isomatch {

// All weights, determinants and hash values are exact integers.
using Int = mpz_class;

inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Int ipow(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Number of bits in |x|; 0 for x == 0.
inline std::size_t bit_length(const Int& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

// Position of the least significant set bit of |x|.
inline unsigned long lowest_set_bit(const Int& x) {
    if (x == 0) throw std::invalid_argument("lowest_set_bit: zero has no set bit");
    Int a = abs(x);
    return mpz_scan1(a.get_mpz_t(), 0);
}

inline bool fits_ulong(const Int& x) { return x >= 0 && mpz_fits_ulong_p(x.get_mpz_t()); }

inline std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace isomatch
