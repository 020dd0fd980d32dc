#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecd/baselines.hpp"
#include "ecd/benchmarks.hpp"

using namespace ecd;
using namespace ecd::baselines;
using bench::QuadraticBasin;
using bench::Zakharov;

namespace {

// Gradient is the constant vector c everywhere.
class LinearSlope final : public Objective {
public:
    explicit LinearSlope(ParamVector c) : c_(std::move(c)) {}
    Index dimension() const override { return c_.size(); }
    ObjectiveEvaluation evaluate(const ParamVector& theta, BatchToken) const override {
        return {c_.dot(theta), c_};
    }
    std::string name() const override { return "slope"; }

private:
    ParamVector c_;
};

class Flat final : public Objective {
public:
    explicit Flat(Index n) : n_(n) {}
    Index dimension() const override { return n_; }
    ObjectiveEvaluation evaluate(const ParamVector&, BatchToken) const override {
        return {3.0, ParamVector::Zero(n_)};
    }
    std::string name() const override { return "flat"; }

private:
    Index n_;
};

}  // namespace

TEST_CASE("momentum descent follows the velocity form exactly") {
    QuadraticBasin obj(2, 0.5, 0.0);  // gradient = theta
    GdmHyperParams hp;
    hp.alpha = 0.1;
    hp.beta = 0.5;

    ParamVector theta0(2);
    theta0 << 1.0, -2.0;
    GdmState st = gdm_init(theta0);
    CHECK(st.pi.norm() == 0.0);

    st = gdm_step(std::move(st), hp, obj);
    // pi1 = -grad(theta0) = -theta0; theta1 = theta0 + alpha * pi1
    CHECK(st.pi[0] == -1.0);
    CHECK(st.pi[1] == 2.0);
    CHECK(st.theta[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(st.theta[1] == doctest::Approx(-1.8).epsilon(1e-15));
    CHECK(st.last_f == doctest::Approx(0.5 * 5.0).epsilon(1e-15));
    CHECK(st.step == 1);

    st = gdm_step(std::move(st), hp, obj);
    // pi2 = 0.5 * pi1 - theta1
    CHECK(st.pi[0] == doctest::Approx(0.5 * -1.0 - 0.9).epsilon(1e-15));
    CHECK(st.pi[1] == doctest::Approx(0.5 * 2.0 + 1.8).epsilon(1e-15));
}

TEST_CASE("undamped momentum coasts on a flat objective") {
    Flat obj(1);
    GdmHyperParams hp;
    hp.alpha = 0.2;
    hp.beta = 1.0;

    GdmState st;
    st.theta = ParamVector::Zero(1);
    st.pi = ParamVector::Constant(1, 5.0);
    for (int k = 0; k < 3; ++k) st = gdm_step(std::move(st), hp, obj);
    CHECK(st.pi[0] == 5.0);
    CHECK(st.theta[0] == doctest::Approx(3.0).epsilon(1e-15));  // 3 * 0.2 * 5
}

TEST_CASE("gdm hyperparameter validation") {
    GdmHyperParams hp;
    CHECK_NOTHROW(hp.validate());
    hp.alpha = 0.0;
    CHECK_THROWS_AS(hp.validate(), DomainError);
    hp.alpha = 1e-3;
    hp.beta = -0.1;
    CHECK_THROWS_AS(hp.validate(), DomainError);
    hp.beta = 1.0;
    CHECK_NOTHROW(hp.validate());
    hp.beta = 1.1;
    CHECK_THROWS_AS(hp.validate(), DomainError);
}

TEST_CASE("adaptive step moves by about alpha against a constant slope") {
    ParamVector c(2);
    c << 2.0, -0.5;
    LinearSlope obj(c);
    AdamHyperParams hp;
    hp.alpha = 0.1;

    AdamState st = adam_init(ParamVector::Zero(2));
    st = adam_step(std::move(st), hp, obj);
    // Bias-corrected first step: theta -= alpha * g / (|g| + eps).
    CHECK(st.theta[0] == doctest::Approx(-0.1 * 2.0 / (2.0 + 1e-8)).epsilon(1e-12));
    CHECK(st.theta[1] == doctest::Approx(0.1 * 0.5 / (0.5 + 1e-8)).epsilon(1e-12));
    CHECK(st.step == 1);

    for (int k = 0; k < 9; ++k) st = adam_step(std::move(st), hp, obj);
    // Constant gradient: every step has unit normalized magnitude.
    CHECK(st.theta[0] == doctest::Approx(-10 * 0.1).epsilon(1e-6));
    CHECK(st.theta[1] == doctest::Approx(10 * 0.1).epsilon(1e-6));
}

TEST_CASE("decoupled weight decay shrinks parameters multiplicatively") {
    Flat obj(2);
    AdamHyperParams hp;
    hp.alpha = 0.1;
    hp.weight_decay = 0.5;
    hp.decoupled_wd = true;

    AdamState st = adam_init(ParamVector::Constant(2, 4.0));
    st = adam_step(std::move(st), hp, obj);
    // Zero gradient: moments stay zero, only the decay factor acts.
    CHECK(st.theta[0] == doctest::Approx(4.0 * (1.0 - 0.1 * 0.5)).epsilon(1e-15));
    CHECK(st.m.norm() == 0.0);
    CHECK(st.v.norm() == 0.0);
}

TEST_CASE("coupled weight decay acts through the gradient") {
    Flat obj(1);
    AdamHyperParams hp;
    hp.alpha = 0.1;
    hp.weight_decay = 2.0;
    hp.decoupled_wd = false;

    AdamState st = adam_init(ParamVector::Ones(1));
    st = adam_step(std::move(st), hp, obj);
    // Effective gradient 2*1: first step is -alpha * 2 / (2 + eps).
    CHECK(st.theta[0] == doctest::Approx(1.0 - 0.1 * 2.0 / (2.0 + 1e-8)).epsilon(1e-12));
    CHECK(st.m[0] != 0.0);
}

TEST_CASE("zero weight decay makes the two decay modes identical") {
    Zakharov obj(3);
    ParamVector theta0(3);
    theta0 << 0.5, -0.3, 0.2;

    AdamHyperParams coupled;
    coupled.alpha = 0.05;
    AdamHyperParams decoupled = coupled;
    decoupled.decoupled_wd = true;

    AdamState a = adam_init(theta0);
    AdamState b = adam_init(theta0);
    for (int k = 0; k < 100; ++k) {
        a = adam_step(std::move(a), coupled, obj);
        b = adam_step(std::move(b), decoupled, obj);
    }
    CHECK((a.theta - b.theta).norm() == 0.0);
    CHECK((a.m - b.m).norm() == 0.0);
    CHECK((a.v - b.v).norm() == 0.0);
}

TEST_CASE("adam hyperparameter validation") {
    AdamHyperParams hp;
    CHECK_NOTHROW(hp.validate());
    hp.beta1 = 1.0;
    CHECK_THROWS_AS(hp.validate(), DomainError);
    hp = AdamHyperParams{};
    hp.beta2 = 1.0;
    CHECK_THROWS_AS(hp.validate(), DomainError);
    hp = AdamHyperParams{};
    hp.eps = 0.0;
    CHECK_THROWS_AS(hp.validate(), DomainError);
    hp = AdamHyperParams{};
    hp.weight_decay = -0.1;
    CHECK_THROWS_AS(hp.validate(), DomainError);
}

TEST_CASE("baseline run loops record compatible trajectories") {
    QuadraticBasin obj(2, 1.0, 0.0);
    ParamVector theta0(2);
    theta0 << 2.0, 1.0;

    SUBCASE("momentum descent reports its velocity norm") {
        GdmHyperParams hp;
        hp.alpha = 0.05;
        hp.beta = 0.9;
        GdmState st = gdm_init(theta0);
        std::vector<TrajectoryRecord> rows;
        const auto result =
            run_gdm(st, hp, obj, 40, 10,
                    [&](const TrajectoryRecord& rec, const ParamVector&) { rows.push_back(rec); });
        CHECK(result.steps == 40);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].step == 10);
        CHECK(rows[0].f < obj.evaluate(theta0).value);
        CHECK(std::isnan(rows[0].energy));
        CHECK(rows[0].pi_norm > 0.0);
        CHECK(result.best_f <= result.final_f);
    }
    SUBCASE("adaptive method reports no momentum norm") {
        AdamHyperParams hp;
        hp.alpha = 0.1;
        AdamState st = adam_init(theta0);
        std::vector<TrajectoryRecord> rows;
        const auto result =
            run_adam(st, hp, obj, 25, 10,
                     [&](const TrajectoryRecord& rec, const ParamVector&) { rows.push_back(rec); });
        CHECK(result.steps == 25);
        REQUIRE(rows.size() == 3);  // steps 10, 20, 25
        CHECK(rows.back().step == 25);
        CHECK(std::isnan(rows.back().energy));
        CHECK(std::isnan(rows.back().pi_norm));
        CHECK(result.final_f < obj.evaluate(theta0).value);
    }
}

TEST_CASE("baseline loops convert non-finite values into numerical errors") {
    Zakharov obj(1);
    ParamVector huge = ParamVector::Constant(1, 1e80);  // S^4 overflows to inf

    GdmHyperParams ghp;
    ghp.alpha = 1e-3;
    GdmState gst = gdm_init(huge);
    CHECK_THROWS_AS(run_gdm(gst, ghp, obj, 10), NumericalError);

    AdamHyperParams ahp;
    AdamState ast = adam_init(huge);
    CHECK_THROWS_AS(run_adam(ast, ahp, obj, 10), NumericalError);
}

TEST_CASE("minibatch descent converges on the synthetic classification set") {
    bench::SyntheticClassification data(4, 64, 16, 3);
    GdmHyperParams hp;
    hp.alpha = 0.05;
    hp.beta = 0.9;
    GdmState st = gdm_init(ParamVector::Zero(5));
    const auto result = run_gdm(st, hp, data, 400, 0, {}, true);
    CHECK(result.final_f < std::log(2.0));  // better than the zero classifier
}
