#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "miop/confluence.hpp"

namespace miop::test {

/// Random admissible h for a catalog case. Unbounded windows are cut at
/// lo + 5; cases without a window reuse their stored samples.
inline std::vector<Rational> random_in_range(const CatalogCase& cc, std::size_t count, std::mt19937& rng) {
    if (!cc.h_lo && !cc.h_hi) return cc.samples;
    const Rational lo = cc.h_lo ? *cc.h_lo : Rational(*cc.h_hi - 5);
    const Rational hi = cc.h_hi ? *cc.h_hi : Rational(*cc.h_lo + 5);
    std::uniform_int_distribution<int> den(2, 40);
    std::vector<Rational> out;
    for (int tries = 0; out.size() < count && tries < 1000; ++tries) {
        const int d = den(rng);
        const Rational span = (hi - lo) * d;
        std::uniform_int_distribution<long> k(1, floor_q(span).get_num().get_si());
        const Rational h = lo + frac(k(rng), d);
        if (h >= hi || std::find(out.begin(), out.end(), h) != out.end()) continue;
        if (range_check(cc, h).admissible) out.push_back(h);
    }
    return out;
}

}  // namespace miop::test
