#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "opchaos/weight_spec.hpp"

using namespace opchaos;

TEST_CASE("window products: closed forms") {
    WeightSpec rp(Domain::UnilateralN, RatioPower{2.0});
    CHECK(window_product(rp, 1, 3) == doctest::Approx(2.0).epsilon(1e-12));

    WeightSpec c2(Domain::UnilateralN, Constant{2.0});
    CHECK(window_product(c2, 7, 5) == doctest::Approx(32.0).epsilon(1e-12));

    WeightSpec tab(Domain::UnilateralN, Table{{1, 2, 3, 4}, 1, Frontier::Error});
    CHECK(window_product(tab, 2, 2) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("window products: telescoping and cocycle") {
    WeightSpec rp(Domain::UnilateralN, RatioPower{3.0});
    for (index_t i : {index_t{1}, index_t{17}, index_t{999}, index_t{1000000}}) {
        for (index_t n : {index_t{1}, index_t{5}, index_t{1000}}) {
            const double expect =
                std::pow(static_cast<double>(i + n) / static_cast<double>(i), 1.0 / 3.0);
            CHECK(window_product(rp, i, n) == doctest::Approx(expect).epsilon(1e-12));
        }
    }

    WeightSpec per(Domain::BilateralZ, Periodic{{0.5, 3.0, 1.25}});
    for (index_t i : {index_t{-7}, index_t{0}, index_t{4}}) {
        const double lhs = window_product(per, i, 9);
        const double rhs = window_product(per, i, 4) * window_product(per, i + 4, 5);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("backward window products") {
    WeightSpec c2(Domain::BilateralZ, Constant{2.0});
    CHECK(backward_window_product(c2, 0, 4) == doctest::Approx(16.0));

    WeightSpec any(Domain::UnilateralN, Constant{5.0});
    CHECK(backward_window_product(any, 3, 5) == 0.0); // no 5-fold preimage of atom 3

    WeightSpec rp(Domain::UnilateralN, RatioPower{1.0});
    CHECK(backward_window_product(rp, 10, 4) == doctest::Approx(10.0 / 6.0).epsilon(1e-12));

    // consistency with the forward product
    WeightSpec per(Domain::BilateralZ, Periodic{{2.0, 0.5, 1.5}});
    for (index_t i : {index_t{-3}, index_t{0}, index_t{11}}) {
        CHECK(backward_window_product(per, i + 6, 6) ==
              doctest::Approx(window_product(per, i, 6)).epsilon(1e-12));
    }
}

TEST_CASE("sup window product: exact paths") {
    WeightSpec rp(Domain::UnilateralN, RatioPower{1.0});
    auto r = sup_window_product(rp, 4);
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.witness == 1);
    CHECK(r.exact);

    WeightSpec ch(Domain::UnilateralN, Constant{0.5});
    auto rc = sup_window_product(ch, 3);
    CHECK(rc.value == doctest::Approx(0.125));
    CHECK(rc.exact);

    WeightSpec per(Domain::UnilateralN, Periodic{{2.0, 0.5}});
    auto rp2 = sup_window_product(per, 2);
    CHECK(rp2.value == doctest::Approx(1.0));
    CHECK(rp2.witness == 1);
    CHECK(rp2.exact);
}

TEST_CASE("sup window product: exact agrees with wide scan") {
    const IndexRange wide{1, 100000};
    for (int n : {1, 2, 5, 16}) {
        WeightSpec rp(Domain::UnilateralN, RatioPower{2.0});
        auto exact = sup_window_product(rp, n);
        auto scanned = sup_window_product(rp, n, wide);
        CHECK(exact.value == doctest::Approx(scanned.value).epsilon(1e-12));

        WeightSpec per(Domain::UnilateralN, Periodic{{1.5, 0.25, 2.0}});
        auto pe = sup_window_product(per, n);
        auto ps = sup_window_product(per, n, wide);
        CHECK(pe.value == doctest::Approx(ps.value).epsilon(1e-12));
        CHECK(pe.witness == ps.witness);
    }
}

TEST_CASE("sup window product: euler block family") {
    WeightSpec be(Domain::UnilateralN, BlockEuler{});
    // layout: e^{1/2}, e^{1/2}, e^{-1}, e^{1/3} x3, e^{-1}, ...
    CHECK(be.weight(1) == doctest::Approx(std::exp(0.5)));
    CHECK(be.weight(3) == doctest::Approx(std::exp(-1.0)));
    CHECK(be.weight(4) == doctest::Approx(std::exp(1.0 / 3.0)));
    CHECK(be.weight(7) == doctest::Approx(std::exp(-1.0)));

    auto r1 = sup_window_product(be, 1);
    CHECK(r1.value == doctest::Approx(std::exp(0.5)));
    for (int n : {2, 3, 4, 7}) {
        auto rn = sup_window_product(be, n);
        CHECK(rn.value == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
        auto sc = sup_window_product(be, n, IndexRange{1, 5000});
        CHECK(rn.value == doctest::Approx(sc.value).epsilon(1e-12));
        CHECK(rn.witness == sc.witness);
    }
}

TEST_CASE("sup window product: bilateral piecewise") {
    WeightSpec pw(Domain::BilateralZ,
                  PiecewiseBilateral{Constant{0.5}, Constant{2.0}});
    for (int n : {1, 3, 8}) {
        auto exact = sup_window_product(pw, n);
        auto scanned = sup_window_product(pw, n, IndexRange{-200, 200});
        CHECK(exact.value == doctest::Approx(scanned.value).epsilon(1e-12));
        CHECK(exact.value == doctest::Approx(std::pow(2.0, n)));
    }

    WeightSpec pw2(Domain::BilateralZ,
                   PiecewiseBilateral{Periodic{{3.0, 0.25}}, Periodic{{0.5, 0.5, 4.0}}});
    for (int n : {1, 2, 5, 9}) {
        auto exact = sup_window_product(pw2, n);
        auto scanned = sup_window_product(pw2, n, IndexRange{-300, 300});
        CHECK(exact.value == doctest::Approx(scanned.value).epsilon(1e-12));
    }
}

TEST_CASE("table frontier policies") {
    WeightSpec err(Domain::UnilateralN, Table{{1, 2, 3}, 1, Frontier::Error});
    CHECK_THROWS_AS(err.weight(4), IndexOutOfDomain);
    CHECK(err.max_index() == 3);

    WeightSpec zero(Domain::UnilateralN, Table{{1, 2, 3}, 1, Frontier::Zero});
    CHECK(zero.weight(4) == 0.0);
    CHECK(window_product(zero, 2, 4) == 0.0);

    WeightSpec hold(Domain::UnilateralN, Table{{1, 2, 3}, 1, Frontier::Hold});
    CHECK(hold.weight(9) == doctest::Approx(3.0));

    WeightSpec zt(Domain::UnilateralN, Table{{1, 0, 3}, 1, Frontier::Error});
    CHECK(zt.has_zero_weight());
    CHECK(window_product(zt, 1, 3) == 0.0);

    CHECK_THROWS_AS(sup_window_product(err, 2), ExactUnavailable);
    auto scanned = sup_window_product(err, 2, IndexRange{1, 3});
    CHECK(scanned.value == doctest::Approx(6.0));
    CHECK(scanned.witness == 2);
}

TEST_CASE("liminf of backward products") {
    WeightSpec half(Domain::BilateralZ, Constant{0.5});
    auto a = liminf_backward_products(half, 64);
    REQUIRE(a.exact_limit.has_value());
    CHECK(*a.exact_limit == 0.0);

    WeightSpec two(Domain::BilateralZ, Constant{2.0});
    auto b = liminf_backward_products(two, 64);
    REQUIRE(b.exact_limit.has_value());
    CHECK(std::isinf(*b.exact_limit));

    WeightSpec per(Domain::BilateralZ, Periodic{{2.0, 0.5}});
    auto c = liminf_backward_products(per, 64);
    REQUIRE(c.exact_limit.has_value());
    CHECK(*c.exact_limit == doctest::Approx(1.0));
    CHECK(c.running_min_tail == doctest::Approx(1.0));

    WeightSpec uni(Domain::UnilateralN, Constant{0.5});
    CHECK_THROWS_AS(liminf_backward_products(uni, 64), DomainMismatch);
}

TEST_CASE("liminf of backward Cesaro means") {
    // products cycle {2, 1}; their means tend to 3/2
    WeightSpec per(Domain::BilateralZ, Periodic{{2.0, 0.5}});
    auto c = liminf_backward_cesaro(per, 1000);
    REQUIRE(c.exact_limit.has_value());
    CHECK(*c.exact_limit == doctest::Approx(1.5));
    CHECK(c.running_min_tail == doctest::Approx(1.5).epsilon(1e-2));

    WeightSpec half(Domain::BilateralZ, Constant{0.5});
    auto a = liminf_backward_cesaro(half, 1000);
    REQUIRE(a.exact_limit.has_value());
    CHECK(*a.exact_limit == 0.0);
    CHECK(a.running_min_tail < 1e-2);
}

TEST_CASE("boundedness of window suprema, closed form") {
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, Constant{0.9})) == true);
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, Constant{1.1})) == false);
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, RatioPower{2.0})) == false);
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, Periodic{{2.0, 0.5}})) == true);
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, Periodic{{2.0, 0.6}})) == false);
    CHECK(window_sup_bounded_closed_form(
              WeightSpec(Domain::UnilateralN, BlockEuler{})) == true);
    CHECK(!window_sup_bounded_closed_form(
               WeightSpec(Domain::UnilateralN, Table{{1, 2}, 1, Frontier::Hold}))
               .has_value());
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(WeightSpec(Domain::BilateralZ, RatioPower{2.0}), DomainMismatch);
    CHECK_THROWS_AS(WeightSpec(Domain::BilateralZ, BlockEuler{}), DomainMismatch);
    CHECK_THROWS_AS(
        WeightSpec(Domain::UnilateralN, PiecewiseBilateral{Constant{1}, Constant{1}}),
        DomainMismatch);
    CHECK_THROWS_AS(WeightSpec(Domain::UnilateralN, Periodic{{}}), ConfigError);
    CHECK_THROWS_AS(WeightSpec(Domain::UnilateralN, RatioPower{-1.0}), ConfigError);

    WeightSpec uni(Domain::UnilateralN, Constant{2.0});
    CHECK_THROWS_AS(uni.weight(0), IndexOutOfDomain);
    CHECK(uni.min_index() == 1);
}
