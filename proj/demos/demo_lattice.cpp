// Tour of the integer side: every multi-point subset fails, and the witness
// is an explicit exponential solution of the translate recurrence.
#include <pompeiu/pompeiu.hpp>

#include <cstdio>

using namespace pompeiu;

static void show(const IntSet& K, int window) {
    std::string s;
    for (auto n : K) s += (s.empty() ? "" : ",") + std::to_string(n);
    auto w = recurrence_witness(K, window);
    std::printf("K = {%s}: %s witness, residual %.3g\n", s.c_str(),
                w.exact ? "periodic" : "numerical", w.residual);
    if (w.exact) {
        std::printf("  period %d, block:", w.period);
        for (int n = 0; n < w.period; ++n)
            std::printf(" %s", serialize_scalar(w.exact_samples[w.window + n]).c_str());
        std::printf("\n");
    } else {
        for (const auto& [z, m] : w.roots)
            std::printf("  root %.6f%+.6fi (x%d), |z| = %.6f\n", z.real(), z.imag(), m,
                        std::abs(z));
    }
    auto E = energy_profile(w);
    std::printf("  energy E(N): N=25 %.4g, N=50 %.4g, N=100 %.4g\n",
                static_cast<double>(E[25]), static_cast<double>(E[50]),
                static_cast<double>(E[100]));
}

int main() {
    // A single point is the only Pompeiu subset of the integers.
    std::printf("{7} Pompeiu: %s\n", is_pompeiu_subset_Z({7}) ? "yes" : "no");
    std::printf("{0,1} Pompeiu: %s\n", is_pompeiu_subset_Z({0, 1}) ? "yes" : "no");

    // Cyclotomic factors of the subset polynomial give periodic witnesses;
    // otherwise a root off the unit circle gives a growing exponential.
    show({0, 1}, 100);
    show({0, 1, 2}, 100);
    show({0, 1, 3}, 100);
    show({0, 1, 3, 4}, 100);
    return 0;
}
