// Sample discriminant curves for a seed set and fit g(h).
#include <iostream>

#include "miop/confluence.hpp"

using namespace miop;

int main(int argc, char** argv) {
    const auto seeds = parse_seeds(argc > 1 ? argv[1] : "I2,III1");
    std::vector<CurveSample> samples;
    for (int k = 6; k <= 12; ++k) {
        CurveSample s{frac(k, 2), {}};
        for (const auto& c : find_curve_candidates(seeds, s.h)) {
            s.gs.push_back(c.g);
            std::cout << "h=" << to_string(s.h) << "  g=" << to_string(c.g) << "  D=" << to_string(c.D) << "\n";
        }
        samples.push_back(std::move(s));
    }
    for (const auto& f : fit_curves(samples))
        std::cout << "fit g(h) = " << f.map.to_string() << " over " << f.matched_h.size() << " samples"
                  << (f.linear_fractional() ? "" : " (not linear-fractional)") << "\n";
}
