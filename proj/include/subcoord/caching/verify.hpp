#pragma once

#include <optional>
#include <vector>

#include "scheme.hpp"

namespace subcoord::caching {

struct DecodeFailure {
    Demand demand;
    int user = 0;
    Vector witness;  ///< a basis vector of W_{d_j} outside Z_j + X_d
};

struct VerifyReport {
    bool valid = true;
    bool complete = false;
    std::size_t demands_checked = 0;
    std::vector<DecodeFailure> failures;
};

/// First basis vector of `need` outside `have`, if any.
inline std::optional<Vector> uncovered(const Subspace& have, const Subspace& need) {
    for (const Vector& v : need.basis_vectors())
        if (!have.contains(v)) return v;
    return std::nullopt;
}

/// True when every user j recovers W_{d_j} from Z_j + x.
inline bool decodes(const CachingScheme& s, const Demand& d, const Subspace& x) {
    for (int j = 1; j <= s.K(); ++j)
        if (uncovered(sum(s.cache(j), x), s.doc(d[static_cast<std::size_t>(j - 1)]))) return false;
    return true;
}

inline VerifyReport verify_scheme(const CachingScheme& s) {
    VerifyReport r;
    r.complete = s.complete();
    for (const auto& [d, x] : s.broadcasts()) {
        ++r.demands_checked;
        for (int j = 1; j <= s.K(); ++j) {
            if (auto w = uncovered(sum(s.cache(j), x), s.doc(d[static_cast<std::size_t>(j - 1)]))) {
                r.valid = false;
                r.failures.push_back({d, j, *w});
            }
        }
    }
    return r;
}

struct RateReport {
    Rational M, M_avg;
    std::optional<Rational> R, R_avg;   ///< over supplied demands; absent when none supplied
    std::optional<Rational> R_avg_distinct;  ///< over supplied demands with distinct entries
    bool complete = false;
};

inline RateReport memory_rate(const CachingScheme& s) {
    RateReport r;
    r.complete = s.complete();
    const long long F = s.F();
    long long zmax = 0, ztot = 0;
    for (const Subspace& z : s.caches()) {
        zmax = std::max<long long>(zmax, static_cast<long long>(z.dim()));
        ztot += static_cast<long long>(z.dim());
    }
    r.M = Rational(zmax, F);
    r.M_avg = Rational(ztot, F * s.K());
    long long xmax = 0, xtot = 0, dtot = 0, dcount = 0;
    for (const auto& [d, x] : s.broadcasts()) {
        const auto dim = static_cast<long long>(x.dim());
        xmax = std::max(xmax, dim);
        xtot += dim;
        if (distinct_entries(d)) {
            dtot += dim;
            ++dcount;
        }
    }
    const auto count = static_cast<long long>(s.broadcasts().size());
    if (count) {
        r.R = Rational(xmax, F);
        r.R_avg = Rational(xtot, F * count);
    }
    if (dcount) r.R_avg_distinct = Rational(dtot, F * dcount);
    return r;
}

}  // namespace subcoord::caching
