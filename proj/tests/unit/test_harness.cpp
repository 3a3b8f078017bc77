#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "osc/generators.hpp"
#include "osc/harness/experiments.hpp"
#include "osc/harness/parallel.hpp"
#include "osc/harness/stats.hpp"
#include "osc/harness/svg.hpp"
#include "osc/harness/table.hpp"

using namespace osc;
using namespace osc::harness;

namespace {

ExperimentConfig with(ExperimentParams params, std::uint64_t seed = 17, int jobs = 1) {
    ExperimentConfig c;
    c.master_seed = seed;
    c.jobs = jobs;
    c.params = std::move(params);
    return c;
}

ScalingConfig small_scaling() {
    ScalingConfig s;
    s.sizes = {8, 12, 16};
    s.runs = 20;
    s.bands = {Band{1e-9, 1.0}, Band{0.5, 1.0}};
    return s;
}

RewireSweepConfig small_rewire() {
    RewireSweepConfig r;
    r.sizes = {12};
    r.percents = {0, 50};
    r.graphs = 6;
    return r;
}

}  // namespace

TEST_CASE("summary statistics") {
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK(quantile({0, 10}, 0.25) == 2.5);
    CHECK(std::isnan(median({})));
    CHECK(mean({1, 2, 6}) == 3.0);
    const LineFit f = fit_line({0, 1, 2}, {1, 3, 5});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    const LineFit p = fit_power_law({1, 2, 4, 8}, {3, 12, 48, 192});
    CHECK(p.slope == doctest::Approx(2.0));
    CHECK(std::exp(p.intercept) == doctest::Approx(3.0));
    CHECK_THROWS_AS(fit_line({1, 1}, {1, 2}), std::invalid_argument);
    CHECK(overlaps(0, 1, 1, 2));
    CHECK_FALSE(overlaps(0, 1, 1.5, 2));
}

TEST_CASE("tables serialise deterministically") {
    Table t("demo", {"name", "count", "value"});
    CHECK(to_csv(t) == "name,count,value\n");
    t.add_row({std::string("a,b"), std::int64_t{3}, 0.1});
    t.add_row({std::string("c"), std::uint64_t{18446744073709551615ull}, std::nan("")}, true);
    CHECK(to_csv(t) == "name,count,value\n\"a,b\",3,0.1\nc,18446744073709551615,nan\n");
    CHECK(t.flagged_count() == 1);
    CHECK(t.number(0, "count") == 3.0);
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), std::invalid_argument);
    CHECK_THROWS_AS(t.column_index("missing"), std::out_of_range);
    const auto j = to_json(t);
    CHECK(j.size() == 2);
    CHECK(j[0]["value"] == 0.1);
    CHECK(j[1]["value"] == "nan");
    CHECK(format_cell(Cell{1.0 / 3.0}) == "0.3333333333333333");
    CHECK(parse_format("svg") == Format::svg);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("seed derivation") {
    CHECK(instance_seed(1, ExperimentId::scaling, 0, 0) == instance_seed(1, ExperimentId::scaling, 0, 0));
    CHECK(instance_seed(1, ExperimentId::scaling, 0, 0) != instance_seed(1, ExperimentId::rewire_sweep, 0, 0));
    CHECK(instance_seed(1, ExperimentId::scaling, 0, 0) != instance_seed(1, ExperimentId::scaling, 0, 1));
    CHECK(instance_seed(1, ExperimentId::scaling, 0, 0) != instance_seed(2, ExperimentId::scaling, 0, 0));
    IsingInstance a = gen_mobius_ladder(5);
    IsingInstance b = gen_mobius_ladder(5);
    b.meta().seed = 99;
    CHECK(content_key(a) == content_key(b));
    CHECK(content_key(a) != content_key(gen_mobius_ladder(6)));
    CHECK(parse_experiment("rewire-sweep") == ExperimentId::rewire_sweep);
    CHECK(to_string(ExperimentId::connectivity_sweep) == "connectivity-sweep");
}

TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hit(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 5) throw std::runtime_error("x");
                    }),
                    std::runtime_error);
}

TEST_CASE("configurations are validated") {
    ExperimentConfig c;
    c.params = small_scaling();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.master_seed = 1;
    CHECK_NOTHROW(c.validate());
    ScalingConfig bad = small_scaling();
    bad.sizes = {10};
    CHECK_THROWS_AS(with(bad).validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_experiment(ExperimentConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(parse_fraction_point("sk:gaussian"), std::invalid_argument);
    CHECK(parse_fraction_point("torus:unweighted:4x6").model == "torus");
    CHECK_FALSE(default_fraction_points().empty());
}

TEST_CASE("scaling on small ladders") {
    const ExperimentResult r = exp_scaling(with(small_scaling()));
    CHECK(r.table.size() == 6);
    CHECK(r.flagged() == 0);
    for (std::size_t i = 0; i < r.table.size(); ++i) {
        if (r.table.number(i, "band_lo") < 0.5) CHECK(r.table.number(i, "n_iter") >= 1.0);
        CHECK(r.table.number(i, "p_measured") >= r.table.number(i, "band_lo"));
    }
    REQUIRE_FALSE(r.extra.empty());
    CHECK(r.extra[0].name == "fit");
}

TEST_CASE("rewire sweep at zero percent is simple") {
    const ExperimentResult r = exp_rewire_sweep(with(small_rewire()));
    REQUIRE(r.table.size() == 2);
    CHECK(r.table.number(0, "percent") == 0.0);
    CHECK(r.table.number(0, "p_simple") == 1.0);
    CHECK(r.table.number(0, "unsolved_count") == 0.0);
    CHECK(r.table.number(1, "rewired_fraction_mean") > 0.4);
    CHECK(std::get<std::string>(r.table.at(0, "code_version")) == "osc-0.1.0");
}

TEST_CASE("connectivity sweep extremes") {
    ConnectivityConfig c;
    c.n = 12;
    c.ks = {2, 11};
    c.instances = 4;
    const ExperimentResult r = exp_connectivity_sweep(with(c));
    REQUIRE(r.table.size() == 2);
    // 2-regular circulants on 12 spins split into cycles of length 12 / gcd(d, 12); only d = 4
    // gives odd (triangle) cycles, which frustrate one edge in three
    const double f = r.table.number(0, "frustration_mean") * 3.0 * 4.0;
    CHECK(f == doctest::Approx(std::round(f)));
    CHECK(r.table.number(0, "frustration_mean") <= 1.0 / 3.0);
    CHECK(r.table.number(1, "p_simple") == 1.0);
    CHECK(r.table.number(1, "distinct") == 1.0);
}

TEST_CASE("simple fraction on tiny SK") {
    SimpleFractionConfig s;
    s.points = {parse_fraction_point("sk:bimodal:5")};
    s.instances = 40;
    const ExperimentResult r = exp_simple_fraction(with(s));
    REQUIRE(r.table.size() == 1);
    CHECK(r.table.number(0, "p_simple") == 1.0);
    CHECK(r.table.number(0, "instances") == 40.0);
}

TEST_CASE("experiments are reproducible across runs and job counts") {
    const ExperimentResult a = exp_rewire_sweep(with(small_rewire(), 5, 1));
    const ExperimentResult b = exp_rewire_sweep(with(small_rewire(), 5, 3));
    const ExperimentResult c = exp_rewire_sweep(with(small_rewire(), 5, 1));
    CHECK(to_csv(a.table) == to_csv(b.table));
    CHECK(to_csv(a.table) == to_csv(c.table));
    const ExperimentResult d = exp_rewire_sweep(with(small_rewire(), 6, 1));
    CHECK(to_csv(a.table) != to_csv(d.table));
    CHECK(to_csv(exp_scaling(with(small_scaling(), 3, 1)).table) ==
          to_csv(exp_scaling(with(small_scaling(), 3, 3)).table));
}

TEST_CASE("emit writes every table") {
    ExperimentConfig c = with(small_rewire());
    c.details = true;
    const ExperimentResult r = exp_rewire_sweep(c);
    CHECK_FALSE(r.detail.empty());
    const auto dir = std::filesystem::temp_directory_path() / "osc_unit_emit";
    std::filesystem::remove_all(dir);
    for (Format f : {Format::csv, Format::json, Format::svg}) {
        const auto written = emit(r, f, dir / ("rewire" + extension(f)));
        CHECK_FALSE(written.empty());
        for (const auto& p : written) CHECK(std::filesystem::file_size(p) > 0);
    }
    std::filesystem::remove_all(dir);

    PlotSpec plot;
    plot.log_x = true;
    plot.series.push_back(Series{"s", {1, 10, -1}, {1, 2, 3}});
    const std::string svg = render_svg(plot);
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("single-size scaling has no fit and fixed budgets add a table") {
    ScalingConfig s;
    s.sizes = {12};
    s.runs = 10;
    s.bands = {Band{1e-9, 1.0}};
    s.fixed_budgets = {5, 50};
    const ExperimentResult r = exp_scaling(with(s));
    CHECK(r.table.size() == 1);
    const auto fit = std::find_if(r.extra.begin(), r.extra.end(), [](const Table& t) { return t.name == "fit"; });
    CHECK((fit == r.extra.end() || fit->empty()));
    const auto fixed = std::find_if(r.extra.begin(), r.extra.end(), [](const Table& t) { return t.name == "fixed"; });
    REQUIRE(fixed != r.extra.end());
    CHECK(fixed->size() == 2);
}
