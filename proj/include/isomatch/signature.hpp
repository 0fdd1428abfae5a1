#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace isomatch {

// 2g-bit crossing-parity vector b_1..b_2g, one bit per side pair.
// Stored so that the numeric value equals the binary string b_1 b_2 ... b_2g
// read as a number (b_1 most significant); class A_i then has value i.
struct Signature {
    int width = 0;  // 2g
    std::uint64_t bits = 0;

    static Signature zero(int width) { return Signature{width, 0}; }

    static Signature from_index(int width, std::uint64_t i) {
        if (width < 64 && (i >> width) != 0)
            throw std::invalid_argument("Signature: index does not fit in 2g bits");
        return Signature{width, i};
    }

    bool pair_bit(int pair) const {  // pair is 1-based
        check_pair(pair);
        return (bits >> (width - pair)) & 1u;
    }

    void flip_pair(int pair) {
        check_pair(pair);
        bits ^= (std::uint64_t{1} << (width - pair));
    }

    bool is_zero() const { return bits == 0; }

    Signature operator^(const Signature& o) const {
        if (width != o.width) throw std::invalid_argument("Signature: width mismatch");
        return Signature{width, bits ^ o.bits};
    }
    Signature& operator^=(const Signature& o) { return *this = *this ^ o; }

    bool operator==(const Signature& o) const = default;

    std::string str() const {
        std::string s(static_cast<std::size_t>(width), '0');
        for (int j = 1; j <= width; ++j)
            if (pair_bit(j)) s[static_cast<std::size_t>(j - 1)] = '1';
        return s;
    }

private:
    void check_pair(int pair) const {
        if (pair < 1 || pair > width) throw std::out_of_range("Signature: pair out of range");
    }
};

}  // namespace isomatch
