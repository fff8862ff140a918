#include "support/models.hpp"
#include "tuning/absorption.hpp"
#include "tuning/kernels.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace tuning;
using namespace tuning::testing;

namespace {

kernels::GridInputs inputs(const ChainSpec& spec, const AbsorptionAnalysis& a) {
    return {spec.d0 + a.r, spec.d1 + a.r, a.b};
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace

TEST_CASE("parallel tables are bit-identical to the serial reference") {
    Rng rng(1);
    for (int threads : {1, 3, 8}) {
        set_threads(threads);
        for (Eigen::Index n : {1, 2, 7, 40, 129}) {
            const auto spec = random_chain(n, rng);
            const auto a = analyze(spec);
            const auto par = kernels::cost_tables(inputs(spec, a));
            const auto ser = kernels::serial::cost_tables(inputs(spec, a));
            CHECK(par.a_table == ser.a_table);
            CHECK(par.b_table == ser.b_table);
            CHECK(par.c_table == ser.c_table);
        }
    }
}

TEST_CASE("parallel extremum matches serial including ties") {
    Rng rng(2);
    for (int threads : {1, 2, 5, 16}) {
        set_threads(threads);
        for (auto d : {Direction::Maximize, Direction::Minimize}) {
            Eigen::MatrixXd t(37, 23);
            for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = std::floor(uniform01(rng) * 5.0);
            const auto p = kernels::extremum(t, d);
            const auto s = kernels::serial::extremum(t, d);
            CHECK(p.m0 == s.m0);
            CHECK(p.m1 == s.m1);
            CHECK(p.value == s.value);

            const Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(9, 9, 1.5);
            const auto f = kernels::extremum(flat, d);
            CHECK(f.m0 == 0);
            CHECK(f.m1 == 0);
        }
    }
    CHECK_THROWS(kernels::extremum(Eigen::MatrixXd(0, 0), Direction::Maximize));
}

TEST_CASE("random search is independent of the thread count") {
    const auto spec = reference_chain();
    const auto a = analyze(spec);
    for (auto d : {Direction::Maximize, Direction::Minimize}) {
        const auto s = kernels::serial::random_search(spec, a, d, 3000, 5, 2.5);
        for (int threads : {1, 4, 7}) {
            set_threads(threads);
            const auto p = kernels::random_search(spec, a, d, 3000, 5, 2.5);
            CHECK(p.best == s.best);
            CHECK(p.beyond_threshold == s.beyond_threshold);
        }
    }
}

TEST_CASE("replications are independent of the thread count") {
    const auto spec = reference_chain();
    const auto st = uniform_strategy(2);
    const auto s = kernels::serial::replications(spec, st, 2000, 9, 6, {});
    for (int threads : {1, 3, 6}) {
        set_threads(threads);
        const auto p = kernels::replications(spec, st, 2000, 9, 6, {});
        REQUIRE(p.size() == s.size());
        for (size_t k = 0; k < s.size(); ++k) {
            CHECK(p[k].total == s[k].total);
            CHECK(p[k].m2 == s[k].m2);
            CHECK(p[k].boundary_counts == s[k].boundary_counts);
        }
    }
}

TEST_CASE("pooled moments equal the moments of the concatenated sample") {
    Rng rng(3);
    CycleMoments all, left, right;
    for (int k = 0; k < 1000; ++k) {
        const double x = uniform01(rng) * 10.0 - 3.0;
        const int s = k % 3 == 0 ? 0 : 1;
        all.add(x, s);
        (k < 400 ? left : right).add(x, s);
    }
    left.merge(right);
    CHECK(left.cycles == all.cycles);
    CHECK(left.boundary_counts == all.boundary_counts);
    CHECK(std::abs(left.mean - all.mean) <= 1e-12);
    CHECK(std::abs(left.m2 - all.m2) <= 1e-9 * all.m2);

    CycleMoments empty;
    empty.merge(all);
    CHECK(empty.m2 == all.m2);
}
