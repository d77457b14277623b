// Build the Ia family at h = 4, print its first modes, Heun data and Gram check.
#include <iostream>

#include "miop/verify.hpp"

using namespace miop;

int main() {
    const auto& cc = find_case("Ia");
    const Rational h(4);
    const ConfluentFamily fam = make_family(cc, h);
    std::cout << "g = " << to_string(cc.g_at(h)) << ", eta0 = " << to_string(fam.eta0) << ", w = " << to_string(fam.w) << "\n";
    for (long n = 0; n <= 3; ++n) {
        const HeunParams hp = to_heun(fam, n);
        std::cout << "P_" << n << " = " << to_string(family_mode(fam, n)) << "\n"
                  << "    E = " << to_string(eigen_energy(n, fam.base.params)) << ", q_r = " << to_string(hp.q_r)
                  << ", apparent: " << std::boolalpha << apparency_check(hp) << "\n";
    }
    for (long n : cc.extra_modes)
        for (const auto& p : polynomial_kernel(ode_for_P(fam, n), fam.l + 8)) std::cout << "extra n=" << n << ": " << to_string(p) << "\n";

    const OrthReport r = orthonormality_suite(fam, {-2, 0, 1, 2, 3}, product_norm_model(fam));
    std::cout << "Gram: max offdiag " << r.max_offdiag_rel << ", doubling change " << r.doubling_change << "\n";
}
