#include <cmath>

#include "doctest.h"
#include "ergm/descriptives.hpp"
#include "ergm/errors.hpp"
#include "ergm/sampler.hpp"
#include "support.hpp"

using namespace ergm;

namespace {

double mean_density(const SampleSet& s) {
  double d = 0;
  for (const auto& g : s.graphs) d += density(g);
  return d / static_cast<double>(s.graphs.size());
}

}  // namespace

TEST_CASE("zero coefficients give fair coins") {
  const double theta[] = {0.0};
  SamplerControl c;
  c.sample_count = 200;
  c.seed = 9;
  const auto s = sample_ergm(NodeTable::anonymous(12), ModelSpec({TermSpec::edges()}), theta, c);
  CHECK(s.graphs.size() == 200);
  CHECK(std::abs(mean_density(s) - 0.5) < 0.01);
  CHECK(s.mean_density == doctest::Approx(mean_density(s)));
}

TEST_CASE("edges-only density follows the logistic closed form") {
  const double theta[] = {-2.197};
  SamplerControl c;
  c.sample_count = 2000;
  c.seed = 10;
  const auto s = sample_ergm(NodeTable::anonymous(30), ModelSpec({TermSpec::edges()}), theta, c);
  const double want = 1.0 / (1.0 + std::exp(2.197));
  CHECK(std::abs(mean_density(s) - want) < 0.01);
  // retained statistics are the statistics of the retained graphs
  for (std::size_t k = 0; k < 5; ++k) CHECK(s.statistics[k][0] == s.graphs[k].edge_count());
}

TEST_CASE("dyad-independent specs reproduce per-dyad tie probabilities") {
  const std::size_t n = 8;
  std::mt19937_64 rng(11);
  const auto attrs = testsupport::random_attributes(n, rng);
  const ModelSpec spec({TermSpec::edges(), TermSpec::nodematch("color")});
  const double theta[] = {-1.0, 1.2};
  SamplerControl c;
  c.sample_count = 3000;
  c.seed = 12;
  const auto s = sample_ergm(attrs, spec, theta, c);
  const auto& color = attrs.attribute("color");
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      const double eta = theta[0] + theta[1] * (color.codes[i] == color.codes[j]);
      const double p = 1.0 / (1.0 + std::exp(-eta));
      double freq = 0;
      for (const auto& g : s.graphs) freq += g.has_edge(i, j);
      freq /= static_cast<double>(s.graphs.size());
      const double se = std::sqrt(p * (1 - p) / static_cast<double>(s.graphs.size()));
      CHECK_MESSAGE(std::abs(freq - p) < 4 * se, i << "->" << j);
    }
}

TEST_CASE("reciprocity rises with the mutual coefficient") {
  const auto attrs = NodeTable::anonymous(60);
  const ModelSpec spec({TermSpec::edges(), TermSpec::mutual()});
  SamplerControl c;
  c.sample_count = 20;
  c.seed = 13;
  const double strong[] = {-3.0, 1.5}, none[] = {-3.0, 0.0};
  const auto a = sample_ergm(attrs, spec, strong, c);
  const auto b = sample_ergm(attrs, spec, none, c);
  double ra = 0, rb = 0;
  for (const auto& g : a.graphs) ra += edgewise_reciprocity(g);
  for (const auto& g : b.graphs) rb += edgewise_reciprocity(g);
  CHECK(ra / 20 > 2 * (rb / 20));
  CHECK(ra / 20 > mean_density(a));
}

TEST_CASE("sampler determinism and controls") {
  const auto attrs = NodeTable::anonymous(15);
  const ModelSpec spec({TermSpec::edges(), TermSpec::mutual(), TermSpec::gwesp(0.5)});
  const double theta[] = {-2.0, 1.0, 0.2};
  SamplerControl c;
  c.sample_count = 5;
  c.seed = 77;
  c.burn_in = 500;
  c.thin = 50;
  const auto a = sample_ergm(attrs, spec, theta, c);
  const auto b = sample_ergm(attrs, spec, theta, c);
  CHECK(a.graphs == b.graphs);
  CHECK(a.statistics == b.statistics);
  CHECK(a.proposals == 500 + 4 * 50);  // thinning only between retained graphs
  c.seed = 78;
  CHECK(sample_ergm(attrs, spec, theta, c).graphs != a.graphs);

  const double short_theta[] = {-2.0};
  CHECK_THROWS_AS(sample_ergm(attrs, spec, short_theta, c), DimensionError);
  c.sample_count = 0;
  CHECK_THROWS_AS(sample_ergm(attrs, spec, theta, c), ConfigError);
}

TEST_CASE("near-complete draws raise a degeneracy warning") {
  const double theta[] = {12.0};
  SamplerControl c;
  c.sample_count = 3;
  const auto s = sample_ergm(NodeTable::anonymous(10), ModelSpec({TermSpec::edges()}), theta, c);
  CHECK_FALSE(s.warnings.empty());
}
