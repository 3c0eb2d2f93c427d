#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sparsegreedy/css.hpp"
#include "sparsegreedy/instances.hpp"
#include "sparsegreedy/linalg.hpp"
#include "test_oracles.hpp"

using sg::CssMethod;
using sg::Matrix;

namespace {

// Independent reconstruction-error oracle via an explicit pseudo-inverse:
// ||D - D_S (D_S^+ D)||_F^2.
double recon_error_pinv(const Matrix& D, const std::vector<int>& selected) {
  if (selected.empty()) return D.squaredNorm();
  Matrix Ds(D.rows(), static_cast<Eigen::Index>(selected.size()));
  for (std::size_t i = 0; i < selected.size(); ++i) Ds.col(i) = D.col(selected[i]);
  const Matrix coef = Ds.completeOrthogonalDecomposition().solve(D);
  return (D - Ds * coef).squaredNorm();
}

}  // namespace

TEST_CASE("recon_error: trivial cases") {
  const auto inst = sg::gen_css_instance(20, 12, 4, 0.3, 5);
  CHECK(sg::recon_error(inst.D, {}) == doctest::Approx(inst.D.squaredNorm()));
  std::vector<int> all(12);
  for (int j = 0; j < 12; ++j) all[j] = j;
  CHECK(sg::recon_error(inst.D, all) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("recon_error matches the pseudo-inverse oracle") {
  const auto inst = sg::gen_css_instance(15, 10, 3, 0.4, 9);
  for (const auto& sel :
       {std::vector<int>{0}, std::vector<int>{2, 7}, std::vector<int>{1, 4, 8, 9}})
    CHECK(sg::recon_error(inst.D, sel) ==
          doctest::Approx(recon_error_pinv(inst.D, sel)).epsilon(1e-8));
}

TEST_CASE("greedy css: errors_by_step is consistent and monotone") {
  const auto inst = sg::gen_css_instance(30, 20, 5, 0.2, 11);
  const auto trace = sg::run_css(CssMethod::greedy, inst.D, 6);
  REQUIRE(trace.selected.size() == 6);
  double prev = inst.D.squaredNorm();
  for (std::size_t i = 0; i < trace.selected.size(); ++i) {
    CHECK(trace.errors_by_step[i] < prev + 1e-12);
    const std::vector<int> prefix(trace.selected.begin(),
                                  trace.selected.begin() + i + 1);
    // downdated running error agrees with a from-scratch projection
    CHECK(trace.errors_by_step[i] ==
          doctest::Approx(sg::recon_error(inst.D, prefix)).epsilon(1e-7));
    prev = trace.errors_by_step[i];
  }
  CHECK(trace.oracle_calls == 20 + 19 + 18 + 17 + 16 + 15);
}

TEST_CASE("greedy css recovers an exactly planted span") {
  const auto inst = sg::gen_css_instance(25, 15, 4, 0.0, 21);
  const auto trace = sg::run_css(CssMethod::greedy, inst.D, 4);
  CHECK(trace.errors_by_step.back() ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(sg::recon_error(inst.D, trace.selected) < 1e-8 * inst.D.squaredNorm());
}

TEST_CASE("greedy css picks the dominant column on a hand example") {
  // Column 2 removes 9 units of energy; columns 0/1 together only hold 5.
  Matrix D(3, 3);
  D << 1, 2, 0,
       0, 0, 3,
       0, 0, 0;
  const auto trace = sg::run_css(CssMethod::greedy, D, 1);
  CHECK(trace.selected == std::vector<int>{2});
  CHECK(trace.errors_by_step[0] == doctest::Approx(5.0));
}

TEST_CASE("css errors never beat the rank-k floor") {
  const auto inst = sg::gen_css_instance(30, 25, 6, 0.5, 33);
  for (int k : {2, 4, 6}) {
    const double floor = sg::best_rank_k_error(inst.D, k);
    for (auto method : {CssMethod::greedy, CssMethod::psg, CssMethod::random}) {
      const auto trace = sg::run_css(method, inst.D, k, 0.1, 77);
      CHECK(trace.errors_by_step.back() >= floor - 1e-8);
    }
  }
}

TEST_CASE("psg css: fewer oracle calls than greedy, deterministic per seed") {
  const auto inst = sg::gen_css_instance(40, 120, 8, 0.3, 2);
  const auto greedy = sg::run_css(CssMethod::greedy, inst.D, 8);
  const auto a = sg::run_css(CssMethod::psg, inst.D, 8, 0.1, 4);
  const auto b = sg::run_css(CssMethod::psg, inst.D, 8, 0.1, 4);
  CHECK(a.selected == b.selected);
  CHECK(a.oracle_calls == b.oracle_calls);
  CHECK(a.oracle_calls < greedy.oracle_calls);
  CHECK(a.errors_by_step.back() <=
        inst.D.squaredNorm());  // sanity: error is a valid residual
}

TEST_CASE("random css: zero oracle calls, k distinct picks") {
  const auto inst = sg::gen_css_instance(20, 15, 5, 0.6, 14);
  const auto trace = sg::run_css(CssMethod::random, inst.D, 5, 0.1, 8);
  CHECK(trace.oracle_calls == 0);
  std::vector<int> sorted = trace.selected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::unique(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(trace.selected.size() == 5);
}

TEST_CASE("run_css input validation") {
  const auto inst = sg::gen_css_instance(10, 8, 3, 0.2, 1);
  CHECK_THROWS(sg::run_css(CssMethod::greedy, inst.D, 0));
  CHECK_THROWS(sg::run_css(CssMethod::greedy, inst.D, 9));
}
