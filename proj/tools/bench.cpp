// Benchmark of the audit kernels: OpenMP against the serial reference.
// Results must agree exactly; the table reports wall times and speedups.
#include "twaf/loop_model.hpp"
#include "twaf/rank_one.hpp"

#include <chrono>
#include <iostream>
#include <random>

using namespace twaf;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

// specialisation batch for the SL2 exchange identity
long exchange_batch(Exec exec, int n, uint64_t seed) {
    std::vector<std::pair<Rat, Rat>> args;
    std::mt19937_64 g(seed);
    while (int(args.size()) < n) {
        Rat r(int(g() % 19) - 9, 1 + int(g() % 5));
        Rat s(int(g() % 19) - 9, 1 + int(g() % 5));
        if (r * s != 1) args.emplace_back(r, s);
    }
    std::vector<char> ok(args.size(), 0);
    parallel_for(exec, n, [&](int64_t i) {
        Scalar r(1, args[size_t(i)].first), rp(1, args[size_t(i)].second);
        Sl2Exchange ex = sl2_exchange(r, rp);
        ExactMatrix lhs = sl2_x(r, +1) * sl2_x(rp, -1);
        ExactMatrix rhs = sl2_x(ex.neg_arg, -1) * sl2_coweight(ex.torus_arg) * sl2_x(ex.pos_arg, +1);
        ok[size_t(i)] = lhs == rhs;
    });
    long passed = 0;
    for (char c : ok) passed += c;
    return passed;
}

}  // namespace

int main(int argc, char** argv) {
    std::string type = argc > 1 ? argv[1] : "A2~2";
    int level = argc > 2 ? std::atoi(argv[2]) : 3;

    std::cout << "workers: " << worker_count(Exec::Parallel) << "\n";
    std::cout << "kernel                     serial      parallel    speedup   agree\n";

    {
        LoopAlgebra L(get_type(type), level);
        auto t0 = Clock::now();
        auto rs = L.jacobi_audit(Exec::Serial);
        auto t1 = Clock::now();
        auto rp = L.jacobi_audit(Exec::Parallel);
        auto t2 = Clock::now();
        double s = seconds(t0, t1), p = seconds(t1, t2);
        printf("jacobi %-19s %8.3fs   %8.3fs   %6.2fx   %s\n", type.c_str(), s, p, s / p,
               (rs.pass == rp.pass && rs.checked == rp.checked) ? "yes" : "NO");
    }
    {
        LoopAlgebra L(get_type(type), level);
        auto t0 = Clock::now();
        auto rs = L.divided_power_audit(4, Exec::Serial);
        auto t1 = Clock::now();
        auto rp = L.divided_power_audit(4, Exec::Parallel);
        auto t2 = Clock::now();
        double s = seconds(t0, t1), p = seconds(t1, t2);
        printf("divided powers %-11s %8.3fs   %8.3fs   %6.2fx   %s\n", type.c_str(), s, p, s / p,
               (rs.pass == rp.pass && rs.checked == rp.checked) ? "yes" : "NO");
    }
    {
        int n = 20000;
        auto t0 = Clock::now();
        long a = exchange_batch(Exec::Serial, n, 7);
        auto t1 = Clock::now();
        long b = exchange_batch(Exec::Parallel, n, 7);
        auto t2 = Clock::now();
        double s = seconds(t0, t1), p = seconds(t1, t2);
        printf("sl2 exchange x%-6d      %8.3fs   %8.3fs   %6.2fx   %s\n", n, s, p, s / p,
               (a == n && b == n) ? "yes" : "NO");
    }
    return 0;
}
