#include "cwb/operators.hpp"

#include <catch_amalgamated.hpp>

using namespace cwb;

namespace {

const Vec kTrace{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};

}  // namespace

TEST_CASE("cochain_norm")
{
    auto m2 = builtin::matrix(2);
    CHECK(Cochain(m2, 3).norm() == 0.0);
    CHECK(Cochain(m2, -1, kTrace).norm() == 1.0);
    Cochain psi(m2, 1);
    psi.at({1, 2}) = Scalar(3);
    CHECK(psi.norm() == 3.0);
}

TEST_CASE("cochain_norm is a norm")
{
    auto m2 = builtin::matrix(2);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Cochain a = random_cochain(m2, 2, s, 4), b = random_cochain(m2, 2, s + 100, 4);
        CHECK((a + b).norm() <= a.norm() + b.norm() + 1e-9);
        Scalar k = Scalar::parse("-3/2", "2");
        CHECK((k * a).norm() == Catch::Approx(k.modulus() * a.norm()).epsilon(1e-9));
        CHECK((k * a).sup_norm().argmax == a.sup_norm().argmax);
    }
}

TEST_CASE("degree -1 cochains must be traces")
{
    auto m2 = builtin::matrix(2);
    CHECK_NOTHROW(Cochain(m2, -1, kTrace));
    CHECK_THROWS_AS(Cochain(m2, -1, Vec{Scalar(1), Scalar(0), Scalar(0), Scalar(0)}), InputError);
    CHECK_THROWS(Cochain(m2, -2));
}

TEST_CASE("is_cyclic")
{
    auto m2 = builtin::matrix(2);
    CHECK(is_cyclic(random_cochain(m2, 0, 3, 5)));
    CHECK_FALSE(is_cyclic(trace_power(m2, kTrace, 1)));
    CHECK(is_cyclic(trace_power(m2, kTrace, 2)));
}

TEST_CASE("trace_power")
{
    auto m2 = builtin::matrix(2);
    Cochain t0 = trace_power(m2, kTrace, 0);
    CHECK(t0.degree() == 0);
    CHECK(t0.entries() == kTrace);
    Cochain t2 = trace_power(m2, kTrace, 2);
    CHECK(t2.at({1, 2, 0}) == Scalar(1));  // tau(e12 e21 e11) = tau(e11)
    CHECK(t2.at({1, 1, 0}).is_zero());
    Workbench w(m2);
    for (int n = 0; n <= 1; ++n)
        CHECK(w.delta_prime(2 * n).apply(trace_power(m2, kTrace, 2 * n)) == trace_power(m2, kTrace, 2 * n + 1));
}

TEST_CASE("trace powers never grow in norm")
{
    for (const char* name : {"matrix:2", "group:z2", "semilattice:chain2", "sum:matrix:2+scalar"}) {
        auto a = builtin::by_name(name);
        Cochain tau(a, -1, columns_of(traces(*a).basis).back());
        for (int n = 0; n <= 4; ++n) CHECK(trace_power(tau, n).norm() <= tau.norm() + 1e-12);
    }
}

TEST_CASE("random_cochain")
{
    auto m2 = builtin::matrix(2);
    CHECK(random_cochain(m2, 2, 42, 7) == random_cochain(m2, 2, 42, 7));
    CHECK_FALSE(random_cochain(m2, 2, 42, 7) == random_cochain(m2, 2, 43, 7));
    CHECK(random_cochain(m2, 3, 9, 0).is_zero());
    CHECK(random_cochain(m2, 3, 9, 2).norm() <= 2.0);
}

TEST_CASE("averaging lands in the cyclic cochains")
{
    auto m2 = builtin::matrix(2);
    Workbench w(m2);
    for (int n = 0; n <= 3; ++n) CHECK(is_cyclic(w.N(n).apply(random_cochain(m2, n, 11 + n, 3))));
}

TEST_CASE("node spaces")
{
    auto m2 = builtin::matrix(2);
    Workbench w(m2);
    CHECK(w.ambient({Complex::D, -1}) == 4);
    CHECK(w.ambient({Complex::F, -1}) == 0);
    CHECK(w.ambient({Complex::G, -2}) == 0);
    CHECK(w.space({Complex::D, -1}).dim() == 1);
    CHECK(w.space({Complex::E, 2}).dim() == 64);
    // cyclic 1-cochains: antisymmetric functions on pairs, 4*3/2 of them
    CHECK(w.space({Complex::G, 1}).dim() == 6);
    // cyclic 0-cochains: all of A*
    CHECK(w.space({Complex::G, 0}).dim() == 4);
    CHECK(rotate_index(encode_index(std::vector<std::size_t>{1, 2, 3}, 4), 4, 16) ==
          encode_index(std::vector<std::size_t>{3, 1, 2}, 4));
}
