// Acceptance suite: one pass/fail line per criterion. Exit 0 iff every
// criterion run passes. --deep enables the order-729 computations.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "fuslim/repro.hpp"

using namespace fuslim;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, double ms) {
    std::printf("[%s] criterion %2d: %s (%.0f ms)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), ms);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <class Fn>
void run(int number, const std::string& name, Fn&& fn) {
    auto t0 = Clock::now();
    bool pass = false;
    std::string note;
    try {
        pass = fn();
    } catch (const std::exception& e) {
        note = e.what();
        pass = false;
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report(number, name + (note.empty() ? "" : " [" + note + "]"), pass, ms);
}

constexpr uint64_t kSeed = 20240711;

}  // namespace

int main(int argc, char** argv) {
    bool deep = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--deep")) deep = true;
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    auto want = [&](int k) { return only == 0 || only == k; };

    if (want(1)) {
        run(1, "Example 4.3 reproduction (p = 2)",
            [] { return repro_example43(2)["pass"].get<bool>(); });
        if (deep)
            run(1, "Example 4.3 reproduction (p = 3, deep)",
                [] { return repro_example43(3)["pass"].get<bool>(); });
    }
    if (want(2))
        run(2, "acyclicity of Mackey functors over the centric orbit categories",
            [] { return repro_acyclicity()["pass"].get<bool>(); });
    if (want(3))
        run(3, "Theorem B bound on seeded random functors", [] {
            for (const char* sys : {"d8", "s4d8", "x27"}) {
                Json j = repro_boundB(sys, kSeed);
                if (!j["pass"].get<bool>()) return false;
            }
            return true;
        });
    if (want(4))
        run(4, "simple-functor oracle equivalence (quotient vs trace formula)",
            [] { return criterion_oracle_equivalence()["pass"].get<bool>(); });
    if (want(5))
        run(5, "Corollary 3.5 vanishing suite",
            [] { return criterion_cor35()["pass"].get<bool>(); });
    if (want(6))
        run(6, "double-coset composition vs set-level oracle",
            [] { return criterion_lemma21(kSeed)["pass"].get<bool>(); });
    if (want(7))
        run(7, "coset-counting congruence",
            [] { return criterion_congruence()["pass"].get<bool>(); });
    if (want(8))
        run(8, "Mackeyfication adjunction and cokernel shift",
            [] { return criterion_mackeyfication(kSeed)["pass"].get<bool>(); });
    if (want(9))
        run(9, "B(3,r) structure and centric classification",
            [] { return repro_b3r(true)["pass"].get<bool>(); });
    if (want(10))
        run(10, "Theorem 6.3 at desk scale", [] {
            for (int c : {1, 2, 3}) {
                Json j = repro_thm63(c);
                if (!j["pass"].get<bool>()) return false;
            }
            return true;
        });

    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
