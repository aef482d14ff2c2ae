#include "lcc/gap_instance.hpp"

#include <numeric>

#include "lcc/error.hpp"
#include "lcc/lp_relaxation.hpp"
#include "lcc/oracle.hpp"
#include "json.hpp"

namespace lcc {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw ValidationError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }

std::pair<ConsistentProblem, GapAnalysis> gap_instance(std::size_t k, std::size_t m, double distance) {
  if (k < 2) throw ValidationError("gap instance needs k >= 2");
  if (m < 1) throw ValidationError("gap instance needs M >= 1");
  if (!(distance > 0.0)) throw ValidationError("gap instance needs D > 0");
  const std::size_t old = k * m;
  const std::size_t n = old + 2;
  const double theta = 1000.0 * (distance + static_cast<double>(old));
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < old && j < old) {
        t[i][j] = i / m == j / m ? 0.0 : 1.0;
      } else if (i >= old && j >= old) {
        t[i][j] = distance;
      } else {
        t[i][j] = theta;
      }
    }
  Metric metric = Metric::explicit_table(metric_closure(std::move(t)));
  std::vector<Index> p1(old);
  std::iota(p1.begin(), p1.end(), Index{0});
  Clustering prior;
  for (std::size_t c = 0; c < k; ++c) prior.centers.push_back(c * m);
  prior.assign.assign(n, kUnassigned);
  for (Index p = 0; p < old; ++p) prior.assign[p] = (p / m) * m;
  ConsistentProblem problem(std::move(metric), std::move(p1), std::move(prior), 2 * m - 1, k);

  GapAnalysis a;
  a.k = k;
  a.m = m;
  a.distance = distance;
  a.theta = theta;
  const auto ki = static_cast<std::int64_t>(k);
  const auto mi = static_cast<std::int64_t>(m);
  a.witness_y = Rational(ki - 2, ki) + Rational(1, mi * ki);
  Rational switching;
  for (std::size_t c = 0; c < k; ++c) switching = switching + (Rational(1) - a.witness_y) * Rational(mi);
  a.witness_switching = switching;
  a.lp_upper_bound = distance / static_cast<double>(m) + static_cast<double>(old);
  a.integral_lower_bound = distance;
  return {std::move(problem), a};
}

GapDemo run_gap_demo(std::size_t k, std::size_t m, double distance) {
  auto [problem, analysis] = gap_instance(k, m, distance);
  GapDemo demo;
  demo.analysis = analysis;
  demo.lp_value = solve_lp(problem).objective;
  demo.integral_opt = brute_force(problem, Objective::kMedian).opt_value;
  demo.ratio = demo.integral_opt / demo.lp_value;
  return demo;
}

std::string gap_demo_to_json(const GapDemo& demo, int indent) {
  const GapAnalysis& a = demo.analysis;
  nlohmann::ordered_json j;
  j["k"] = a.k;
  j["M"] = a.m;
  j["D"] = a.distance;
  j["theta"] = a.theta;
  j["budget"] = 2 * a.m - 1;
  j["witness_y"] = a.witness_y.str();
  j["witness_switching"] = a.witness_switching.str();
  j["lp_upper_bound"] = a.lp_upper_bound;
  j["integral_lower_bound"] = a.integral_lower_bound;
  j["lp_value"] = demo.lp_value;
  j["integral_opt"] = demo.integral_opt;
  j["ratio"] = demo.ratio;
  return j.dump(indent);
}

}  // namespace lcc
