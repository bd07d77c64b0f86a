// Acceptance run: one PASS/FAIL line per criterion, followed by the checks behind it.
//
//   acceptance [--expect-fail N]...
//
// Exit status is 0 iff the set of failing criteria equals the expected set (empty by default).

#include "g2fm/g2core.hpp"
#include "g2fm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <future>
#include <iostream>
#include <set>

using namespace g2fm;
using namespace g2fm::checks;

namespace {

constexpr std::uint64_t kSeed = 20240601;

std::uint64_t seed(const std::string& key) { return check_seed(kSeed, key); }

struct Criterion {
    int number;
    std::string title;
    std::function<std::vector<CheckRecord>()> run;
};

std::vector<CheckRecord> cat(std::vector<std::vector<CheckRecord>> parts) {
    std::vector<CheckRecord> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<CheckRecord> pick(const std::vector<CheckRecord>& all, std::initializer_list<const char*> ids) {
    std::vector<CheckRecord> out;
    for (const char* id : ids) {
        auto it = std::find_if(all.begin(), all.end(), [&](const CheckRecord& r) { return r.id == id; });
        if (it == all.end()) {
            CheckRecord missing;
            missing.id = id;
            missing.detail = "check not produced";
            out.push_back(missing);
        } else {
            out.push_back(*it);
        }
    }
    return out;
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "structure constants: *Omega = Theta, Omega ^ Theta = 7 vol, *Theta_Z = Theta_Z, Theta_Z^2 = 14 vol (exact)",
         [] {
             return cat({pick(g2_structure(g2_omega()), {"g2.hodge-omega", "g2.omega-wedge-theta"}),
                         pick(spin7_structure(), {"spin7.hodge-theta-z", "spin7.theta-z-square"})});
         }},
        {2, "stabilizer dimensions 14 and 21 (exact)", [] { return stabilizer_dims(g2_omega()); }},
        {3, "decompositions 7+14, 1+7+27, 7+21, 1+7+27+35; projectors idempotent and orthogonal; Lambda^2_14 ^ Theta = 0",
         [] { return decompositions(); }},
        {4, "cross product: basis triples and norm identity on 1000 rational pairs (exact)",
         [] { return cross_product(g2_omega(), 1000, seed("cross.norm")); }},
        {5, "F(e^Theta_M) = e^Theta_W and F(*e^Theta_M) = *e^Theta_W (exact, all monomials)",
         [] { return fourier_identities({}); }},
        {6, "section transform theorem on 500 jets at 1e-9; t^3 - 3t family at 1e-12",
         [] {
             return std::vector<CheckRecord>{section_theorem(500, seed("sections.theorem"), 1e-9), section_sqrt3_family(1e-12)};
         }},
        {7, "coassociative section + ASD data gives a deformed DT connection, 100 inputs at 1e-9",
         [] { return std::vector<CheckRecord>{coassoc_sections(100, seed("sections.coassociative"), 1e-9)}; }},
        {8, "semi-flat coassociative + ASD condition is preserved by the transform, 200 cases (exact)",
         [] { return std::vector<CheckRecord>{semiflat_swap(200, seed("sections.semiflat-swap"))}; }},
        {9, "flat moduli forms match the dual calibration forms up to one positive scale per model",
         [] { return flat_moduli(); }},
        {10, "G_M / int phi ^ *phi constant on 100 Lambda^3_27 classes; C_M symmetric; Q vanishes on Lambda^4_27",
         [] {
             return std::vector<CheckRecord>{yukawa_ratio(100, seed("yukawa.ratio")), cubic_symmetry(50, seed("yukawa.cubic-symmetry")),
                                             quartic_vanishing_27(10, seed("yukawa.quartic-27")),
                                             quartic_symmetry(10, seed("yukawa.quartic-symmetry"))};
         }},
        {11, "CS_M - CS_W constant over 20 pairs at grid 64, relative spread <= 1e-6; second-order convergence",
         [] {
             return std::vector<CheckRecord>{cs_preservation(20, 64, seed("cs.preservation"), 1e-6),
                                             cs_convergence(seed("cs.convergence"))};
         }},
        {12, "flat-torus transform is an involution on 100 points; both symbol complexes exact on 100 covectors",
         [] {
             return cat({{flat_torus_involution(100, seed("fourier.flat-torus-involution"))}, symbol_complexes(100, seed("symbol"))});
         }},
        {13, "Theta_Z = Omega ^ dt - Theta; cy4 candidate; 3 tau + 2 chi = 0 for T4 and K3",
         [] {
             return cat({pick(reductions(), {"reduction.g2-circle", "reduction.cy4"}), {hitchin_lookup()}});
         }},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            expected.insert(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--expect-fail N]...\n";
            return 2;
        }
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::future<std::vector<CheckRecord>>> jobs;
    for (const auto& c : criteria()) jobs.push_back(std::async(std::launch::async, c.run));

    std::set<int> failed;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const auto& c = criteria()[k];
        auto records = jobs[k].get();
        bool pass = !records.empty() && std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
        if (!pass) failed.insert(c.number);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << "\n";
        for (const auto& r : records) {
            std::cout << "    " << (r.pass ? "ok   " : "FAIL ") << r.id;
            if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (criteria().size() - failed.size()) << "/" << criteria().size() << " criteria passed in " << secs << " s\n";

    if (failed == expected) {
        if (!expected.empty()) std::cout << "failing criteria match the expected set\n";
        return 0;
    }
    for (int n : failed)
        if (!expected.count(n)) std::cout << "unexpected failure: criterion " << n << "\n";
    for (int n : expected)
        if (!failed.count(n)) std::cout << "expected failure did not occur: criterion " << n << "\n";
    return 1;
}
