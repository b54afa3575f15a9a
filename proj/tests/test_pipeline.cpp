#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lpnet/model_io.hpp"
#include "lpnet/pipeline.hpp"
#include "lpnet/test_functions.hpp"
#include "test_helpers.hpp"

using namespace lpnet;
using namespace testkit;

namespace
{

FitConfig small_config(int bound)
{
    FitConfig cfg;
    cfg.n1_plus = cfg.m1_plus = cfg.n1_minus = cfg.m1_minus = bound;
    return cfg;
}

double ring_error(const Model& m, const std::function<cplx(cplx)>& f, double radius)
{
    double worst = 0.0;
    for (int i = 0; i < 64; ++i)
    {
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * (i + 0.5) / 64.0);
        worst = std::max(worst, std::abs(eval_model(m, z) - f(z)));
    }
    return worst;
}

} // namespace

TEST_CASE("1/(z - 2) gives a plus-only model")
{
    const auto f = testfn::lookup("inv2");
    const Model m = fit(sample_contour(f, 0.99, 32), small_config(5));
    REQUIRE(m.plus.has_value());
    CHECK_FALSE(m.minus.has_value());
    CHECK(m.plus->neurons() == 1);
    REQUIRE(m.pole_report.size() == 1);
    CHECK(std::abs(m.pole_report[0].location - 2.0) < 1e-10);
    CHECK(std::abs(eval_model(m, 0.0) + 0.5) < 1e-10);
    CHECK(std::abs(eval_component(*m.plus, 0.0) + 0.5) < 1e-10);
    CHECK(ring_error(m, f, 1.0) < 1e-10);
}

TEST_CASE("1/(z - 0.5) gives a minus-only model")
{
    const auto f = testfn::lookup("inv05");
    const Model m = fit(sample_contour(f, 1.0, 32), small_config(5));
    CHECK_FALSE(m.plus.has_value());
    REQUIRE(m.minus.has_value());
    CHECK(m.minus->neurons() == 1);
    CHECK(std::abs(m.pole_report[0].location - 0.5) < 1e-10);
    CHECK(m.pole_report[0].component_sign == Sign::minus);
    CHECK(ring_error(m, f, 1.0) < 1e-10);
}

TEST_CASE("two poles on opposite sides of the contour")
{
    const auto f = testfn::lookup("two_poles");
    const Model m = fit(sample_contour(f, 1.0, 32), small_config(5));
    REQUIRE(m.plus.has_value());
    REQUIRE(m.minus.has_value());
    CHECK(m.pole_report.size() == 2);
    CHECK(ring_error(m, f, 1.5) < 1e-9);
    CHECK(ring_error(m, f, 0.25) < 1e-9);
    CHECK(ring_error(m, f, 1.0) < 1e-9);
}

TEST_CASE("analytic input is rejected")
{
    const auto f = [](cplx z) { return 1.0 + z * (2.0 - z); };
    CHECK_THROWS_WITH_AS(fit(sample_contour(f, 1.0, 32), small_config(5)),
                         doctest::Contains("function appears analytic"), NumericalError);
}

TEST_CASE("fit is deterministic")
{
    const ContourSamples s = sample_contour(testfn::lookup("two_poles"), 1.0, 32);
    FitConfig cfg = small_config(6);
    cfg.seed = 77;
    const Model a = fit(s, cfg);
    const Model b = fit(s, cfg);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("configuration checks")
{
    const ContourSamples s = sample_contour(testfn::lookup("inv2"), 1.0, 8);
    CHECK_THROWS_AS(fit(s, small_config(5)), ValidationError);
    FitConfig cfg = small_config(2);
    cfg.tol = 0.0;
    CHECK_THROWS_AS(fit(s, cfg), ValidationError);
    cfg = small_config(2);
    cfg.z0 = 0.5;
    CHECK_THROWS_AS(fit(s, cfg), ValidationError);
    cfg = small_config(2);
    cfg.n = 9;
    CHECK_THROWS_AS(fit(s, cfg), ValidationError);
    cfg = small_config(2);
    cfg.rect = Rect{1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(fit(s, cfg), ValidationError);
}

TEST_CASE("pole report covers every neuron")
{
    const auto f = [](cplx z) {
        return 1.0 / ((z - 2.0) * (z + cplx(0.0, 1.5))) + 1.0 / (z - cplx(0.3, 0.2));
    };
    const Model m = fit(sample_contour(f, 1.0, 64), small_config(8));
    REQUIRE(m.plus.has_value());
    REQUIRE(m.minus.has_value());
    CHECK(m.pole_report.size() ==
          static_cast<std::size_t>(m.plus->neurons() + m.minus->neurons()));
    std::vector<cplx> poles;
    for (const PoleEstimate& e : m.pole_report)
    {
        poles.push_back(e.location);
    }
    CHECK(multiset_distance(poles, {2.0, cplx(0.0, -1.5), cplx(0.3, 0.2)}) < 1e-9);
}

TEST_CASE("grid of a constant model is constant")
{
    Model m = fit(sample_contour(testfn::lookup("inv2"), 0.99, 32), small_config(5));
    m.plus->w2.setZero();
    m.plus->b2 = cplx(-3.0, 0.0);
    const auto grid = eval_grid(m, AxisRange{-1.0, 1.0, 5}, AxisRange{-1.0, 1.0, 4});
    CHECK(grid.size() == 20);
    for (const GridPoint& g : grid)
    {
        CHECK(g.value == cplx(3.0, 0.0));
    }
}

TEST_CASE("grid of 1/(z - 2) matches the closed form")
{
    const Model m = fit(sample_contour(testfn::lookup("inv2"), 0.99, 32), small_config(5));
    const auto grid = eval_grid(m, AxisRange{-3.0, 3.0, 50}, AxisRange{-3.0, 3.0, 50});
    double worst = 0.0;
    for (const GridPoint& g : grid)
    {
        const cplx z(g.re, g.im);
        if (std::abs(z - 2.0) > 0.1)
        {
            worst = std::max(worst, std::abs(g.value - 1.0 / (z - 2.0)));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("grid csv marks poles")
{
    const Model m = fit(sample_contour(testfn::lookup("inv2"), 0.99, 32), small_config(5));
    const cplx pole = m.pole_report[0].location;
    const auto grid = eval_grid(m, AxisRange{pole.real() - 1.0, pole.real() + 1.0, 3},
                                AxisRange{pole.imag() - 1.0, pole.imag() + 1.0, 3});
    std::ostringstream out;
    write_grid_csv(grid, out);
    const std::string text = out.str();
    CHECK(text.rfind("re,im,abs,arg\n", 0) == 0);
    CHECK(text.find("inf,inf") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);
    CHECK_THROWS_AS(eval_grid(m, AxisRange{0.0, 1.0, 1}, AxisRange{0.0, 1.0, 3}),
                    ValidationError);
}

TEST_CASE("complex literals")
{
    CHECK(parse_complex("-1.2+0i") == cplx(-1.2, 0.0));
    CHECK(parse_complex(" 1.43 - 0.2i ") == cplx(1.43, -0.2));
    CHECK(parse_complex("2") == cplx(2.0, 0.0));
    CHECK(parse_complex("3i") == cplx(0.0, 3.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20.0));
    CHECK_THROWS_AS(parse_complex("abc"), ValidationError);
    CHECK_THROWS_AS(parse_complex(""), ValidationError);
    CHECK_THROWS_AS(parse_complex("1+2"), ValidationError);
}

TEST_CASE("axis ranges")
{
    const AxisRange r = parse_range("-3:3:50");
    CHECK(r.lo == -3.0);
    CHECK(r.hi == 3.0);
    CHECK(r.count == 50);
    CHECK_THROWS_AS(parse_range("0:1"), ValidationError);
    CHECK_THROWS_AS(parse_range("0:1:1"), ValidationError);
    CHECK_THROWS_AS(parse_range("1:0:5"), ValidationError);
}

TEST_CASE("the 40-pole function has 35 distinct poles")
{
    const auto poles = testfn::exfun_poles();
    CHECK(poles.size() == 35);
    int total = 0;
    for (std::size_t i = 0; i < poles.size(); ++i)
    {
        total += poles[i].multiplicity;
        for (std::size_t j = i + 1; j < poles.size(); ++j)
        {
            CHECK(std::abs(poles[i].location - poles[j].location) > 1e-3);
        }
    }
    CHECK(total == 40);
    int inner = 0;
    for (const auto& p : poles)
    {
        inner += std::abs(p.location) < 0.95 ? p.multiplicity : 0;
    }
    CHECK(inner == 30);
}
