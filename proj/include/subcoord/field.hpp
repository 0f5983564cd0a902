#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace subcoord {

using Elem = std::uint8_t;

/// The prime field GF(p) for 2 <= p < 256.
class Field {
public:
    constexpr Field() = default;

    explicit Field(unsigned p) : p_(static_cast<std::uint16_t>(p)) {
        if (p < 2 || p > 255 || !is_prime(p))
            throw ContractViolation("field modulus must be a prime below 256, got " +
                                    std::to_string(p));
    }

    static constexpr bool is_prime(unsigned p) {
        if (p < 2) return false;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    constexpr unsigned p() const { return p_; }
    constexpr bool is_binary() const { return p_ == 2; }

    constexpr Elem add(Elem a, Elem b) const {
        unsigned s = unsigned(a) + b;
        return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    constexpr Elem neg(Elem a) const { return a == 0 ? 0 : static_cast<Elem>(p_ - a); }
    constexpr Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    constexpr Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((unsigned(a) * b) % p_);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw ContractViolation("inverse of zero in GF(" + std::to_string(p_) + ")");
        // Fermat: a^(p-2)
        unsigned result = 1, base = a, e = p_ - 2u;
        while (e) {
            if (e & 1u) result = (result * base) % p_;
            base = (base * base) % p_;
            e >>= 1u;
        }
        return static_cast<Elem>(result);
    }

    /// Reduces an arbitrary integer into [0, p).
    Elem reduce(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }

    friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

private:
    std::uint16_t p_ = 2;
};

}  // namespace subcoord
