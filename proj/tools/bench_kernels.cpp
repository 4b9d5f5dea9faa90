// Times the OpenMP kernels against their serial reference on fixed workloads
// and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "permcert/detrep.hpp"
#include "permcert/family.hpp"
#include "permcert/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace permcert;

namespace {

RatMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    RatMatrix m(rows, cols);
    for (auto& e : m.data) e = Rat(static_cast<long>(eng() % 19) - 9);
    return m;
}

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const std::string& name, double serial, double parallel, bool same) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name.c_str(), serial,
                parallel, parallel > 0 ? serial / parallel : 0.0,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %11s %11s %9s\n", "workload", "serial", "parallel",
                "speedup");

    {
        const FamilySpec spec = FamilySpec::hoperm(7);
        const RatMatrix x = random_matrix(7, 14, 11);
        Rat a, b;
        const double ts = seconds([&] { a = eval_brute(spec, x, Exec::serial); });
        const double tp =
            seconds([&] { b = eval_brute(spec, x, Exec::parallel); });
        row("brute hoperm n=7", ts, tp, a == b);
    }
    {
        const FamilySpec spec = FamilySpec::mperm(std::vector<int>(9, 1));
        const RatMatrix x = random_matrix(9, 9, 12);
        Rat a, b;
        const double ts = seconds([&] { a = eval_brute(spec, x, Exec::serial); });
        const double tp =
            seconds([&] { b = eval_brute(spec, x, Exec::parallel); });
        row("brute mperm (1^9)", ts, tp, a == b);
    }
    {
        const FamilySpec spec = FamilySpec::hoperm(5);
        const RatMatrix x = zero_point(spec).point;
        RatMatrix a(1, 1), b(1, 1);
        const double ts =
            seconds([&] { a = hessian_at(spec, x, Exec::serial); });
        const double tp =
            seconds([&] { b = hessian_at(spec, x, Exec::parallel); });
        row("hessian hoperm n=5", ts, tp, a == b);
    }
    {
        const FamilySpec spec = FamilySpec::hoperm(3);
        const DetRep d = build_family_detrep(spec);
        const ReferenceEval ref = family_reference(spec);
        VerifyReport a, b;
        const double ts = seconds(
            [&] { a = verify_detrep(d, ref, 40, 777, Exec::serial); });
        const double tp = seconds(
            [&] { b = verify_detrep(d, ref, 40, 777, Exec::parallel); });
        row("verify hoperm n=3 x40", ts, tp,
            a.pass == b.pass && a.trial_ok == b.trial_ok);
    }
    return 0;
}
