// Demo: audit the structural conditions behind the long-time law for every
// corpus member, plus one deliberately broken factorization.
//
// For each member this runs:
//   * check_loglim      - the gauged boundary limit of F must vanish;
//   * lipschitz_margin  - slope probe of F along the boundary line;
//   * check_dk          - residual decay of the transform minus its pole part.
// The last column shows eta at a moderately deep offset as a scale hint.

#include <cstdio>
#include <string>

#include "tauberkit/tauberkit.hpp"

namespace tk = tauberkit;

int main() {
    const auto all = tk::corpus::registry();
    std::printf("%-14s %-8s %-12s %-22s %-8s %s\n", "id", "j", "loglim", "lipschitz", "dk",
                "eta(2^-8, T=16)");
    for (const auto& e : all) {
        const auto loglim = tk::check_loglim(e.model);
        const auto lip = tk::lipschitz_margin(e.model, 0.5 * e.law.mu, 8.0);
        std::string lip_text = "K~" + std::to_string(lip.K).substr(0, 6);
        lip_text += lip.reclassify ? " reclassify" : (lip.stable ? " stable" : " open");
        std::string dk_text = "n/a";
        if (e.law.j >= 1.0)
            dk_text = tk::verdict_name(tk::check_dk(e.f, e.law).verdict);
        const double ev = tk::eta(e.f, e.law, 1.0 / 256.0, 16.0);
        std::printf("%-14s %-8.2f %-12s %-22s %-8s %.3e\n", e.id.c_str(), e.law.j,
                    tk::verdict_name(loglim.verdict).c_str(), lip_text.c_str(), dk_text.c_str(),
                    ev);
    }

    std::printf(
        "\nNote: dk scans the remainder after removing the leading term with the\n"
        "constant F(mu); a fail there means subordinate singular terms survive in\n"
        "that crude split (the model's own z-dependent F absorbs them instead).\n");

    // A factorization built to violate the boundary-limit condition: the
    // checker must come back red on it.
    const auto bad = tk::corpus::loglim_counterexample(1.0);
    const auto rep = tk::check_loglim(bad);
    std::printf("\n%s -> %s (terminal ratio %.3f)\n", bad.name.c_str(),
                tk::verdict_name(rep.verdict).c_str(), rep.ratio);
    return 0;
}
