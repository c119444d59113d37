#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twaf/loop_model.hpp"
#include "twaf/parallel.hpp"

#include <atomic>
#include <numeric>

using namespace twaf;

TEST_CASE("parallel_for covers the index range exactly once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(Exec::Parallel, 1000, [&](int64_t i) { hits[size_t(i)]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    std::vector<int> serial_hits(1000, 0);
    parallel_for(Exec::Serial, 1000, [&](int64_t i) { serial_hits[size_t(i)]++; });
    CHECK(std::accumulate(serial_hits.begin(), serial_hits.end(), 0) == 1000);
}

TEST_CASE("audit kernels: parallel equals the serial reference") {
    LoopAlgebra L(get_type("A2~2"), 3);
    auto js = L.jacobi_audit(Exec::Serial);
    auto jp = L.jacobi_audit(Exec::Parallel);
    CHECK(js.pass == jp.pass);
    CHECK(js.checked == jp.checked);
    CHECK(js.witness == jp.witness);

    auto ds = L.divided_power_audit(3, Exec::Serial);
    auto dp = L.divided_power_audit(3, Exec::Parallel);
    CHECK(ds.pass == dp.pass);
    CHECK(ds.checked == dp.checked);

    LoopAlgebra L2(get_type("A3~2"), 2);
    auto j2s = L2.jacobi_audit(Exec::Serial);
    auto j2p = L2.jacobi_audit(Exec::Parallel);
    CHECK(j2s.pass == j2p.pass);
    CHECK(j2s.checked == j2p.checked);
}
