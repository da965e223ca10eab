// Acceptance suite: one PASS/FAIL line per criterion, failing checks listed
// underneath. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fracreg/verify.hpp"

using namespace fracreg;

namespace {

struct Criterion {
    const char* title;
    std::function<void(CheckList&, const VerifyOptions&)> run;
};

void constructions(CheckList& out, const VerifyOptions& opt, std::initializer_list<ConstructionKind> kinds,
                   bool exponents_only) {
    for (ConstructionKind k : kinds) {
        const Construction c = make_construction(k);
        if (exponents_only) check_exponents(out, c, opt);
        else check_semilinear(out, c, opt);
    }
}

}  // namespace

int main() {
    using K = ConstructionKind;
    const std::vector<Criterion> criteria{
        {"closed-form Q integrals", check_q_integrals},
        {"cos eigenfunction, direct and spectral", check_eigenfunction},
        {"decomposition vs direct", check_decomposition},
        {"semilinear identity",
         [](CheckList& out, const VerifyOptions& opt) {
             constructions(out, opt, {K::Regime1, K::Regime2, K::Boundary, K::Regime1Periodic, K::Regime2Periodic},
                           false);
         }},
        {"sharp exponents of u and f at the origin",
         [](CheckList& out, const VerifyOptions& opt) {
             constructions(out, opt, {K::Regime1, K::Boundary, K::Regime2}, true);
         }},
        {"Lipschitz continuity of t -> H(t^(1/r))", check_lipschitz_H},
        {"inequality suites",
         [](CheckList& out, const VerifyOptions& opt) {
             check_power_inequalities(out, opt);
             check_local_example(out, opt);
             check_inverse_lipschitz(out, opt);
         }},
        {"symmetry and scaling", check_symmetry_scaling},
        {"profile validation with negative controls", check_profile},
    };

    const VerifyOptions opt;
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        CheckList out;
        bool ok = true;
        std::string error;
        try {
            criteria[i].run(out, opt);
            ok = out.all_pass() && !out.entries().empty();
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s (%zu checks, %.1f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].title,
                    out.entries().size(), secs);
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        for (const auto& e : out.entries()) {
            if (!e.pass) {
                std::printf("    failed: %s: measured %.6g, %s %.6g\n", e.name.c_str(), e.measured,
                            e.upper ? "limit" : "minimum", e.tolerance);
            }
        }
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    return failed;
}
