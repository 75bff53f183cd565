#include <doctest.h>

#include <bit>
#include <random>

#include "tfm/oracle/oracle.hpp"

using namespace tfm;

namespace {

Instance random_instance(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng)) es.push_back({u, v});
  std::uniform_int_distribution<int> kd(1, n - 1);
  return Instance(Graph(n, es), kd(rng));
}

// Straight transcription of the question, no masks.
int brute_max(const Instance& inst) {
  int best = 0;
  for (Subset S = 0; S < (Subset{1} << inst.n()); ++S)
    if (violations(inst, S).violated_edges == 0) best = std::max(best, std::popcount(S));
  return best;
}

}  // namespace

TEST_CASE("oracle examples") {
  SUBCASE("path on four vertices") {
    const auto v = independent_set_exists(Instance(Graph(4, {{1, 2}, {2, 3}, {3, 4}}), 2));
    CHECK(v.exists);
    CHECK(v.max_independent_size == 2);
    CHECK(v.witness == Subset{0b0101});
  }
  SUBCASE("triangle") {
    const auto v = independent_set_exists(Instance(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), 2));
    CHECK_FALSE(v.exists);
    CHECK(v.max_independent_size == 1);
    CHECK_FALSE(v.witness.has_value());
  }
  SUBCASE("two isolated vertices") {
    const auto v = independent_set_exists(Instance(Graph(2, {}), 1));
    CHECK(v.exists);
    CHECK(v.max_independent_size == 2);
    CHECK(v.witness == Subset{0b11});
  }
  SUBCASE("over budget") {
    CHECK_THROWS_AS(independent_set_exists(Instance(Graph(kOracleMaxVertices + 1, {}), 1)),
                    OracleBudgetError);
  }
}

TEST_CASE("violation examples") {
  const Instance p4(Graph(4, {{1, 2}, {2, 3}, {3, 4}}), 2);
  CHECK(violations(p4, 0b0111) == ViolationCount{2, false});
  CHECK(violations(p4, 0) == ViolationCount{0, true});
  const Instance k3(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), 2);
  CHECK(violations(k3, 0b111) == ViolationCount{3, false});
}

TEST_CASE("adjacency masks are symmetric") {
  const auto adj = adjacency_masks(Graph(4, {{1, 2}, {2, 4}}));
  CHECK(adj == std::vector<Subset>{0b0010, 0b1001, 0b0000, 0b0010});
}

TEST_CASE("oracle agrees with the violation scan") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto inst = random_instance(rng, n, 0.1 + 0.1 * static_cast<double>(rng() % 8));
    const auto v = independent_set_exists(inst);
    bool any = false;
    for (Subset S = 0; S < (Subset{1} << n); ++S) any = any || violations(inst, S) == ViolationCount{};
    CHECK(v.exists == any);
    CHECK(v.max_independent_size == brute_max(inst));
    CHECK(v.exists == (v.max_independent_size >= inst.k));
    if (v.witness) {
      CHECK(violations(inst, *v.witness).violated_edges == 0);
      CHECK(std::popcount(*v.witness) == v.max_independent_size);
    }
  }
}

TEST_CASE("adding an edge never grows the maximum, dropping a vertex shrinks it by at most one") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto inst = random_instance(rng, n, 0.3);
    const int base = independent_set_exists(inst).max_independent_size;

    std::vector<Edge> missing;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (std::find(inst.graph.edges().begin(), inst.graph.edges().end(), Edge{u, v}) ==
            inst.graph.edges().end())
          missing.push_back({u, v});
    if (!missing.empty()) {
      auto es = inst.graph.edges();
      es.push_back(missing[rng() % missing.size()]);
      CHECK(independent_set_exists(Instance(Graph(n, es), 1)).max_independent_size <= base);
    }

    const int drop = 1 + static_cast<int>(rng() % n);
    std::vector<Edge> kept;
    for (auto e : inst.graph.edges()) {
      if (e.u == drop || e.v == drop) continue;
      kept.push_back({e.u > drop ? e.u - 1 : e.u, e.v > drop ? e.v - 1 : e.v});
    }
    const int smaller = independent_set_exists(Instance(Graph(n - 1, kept), 1)).max_independent_size;
    CHECK(smaller <= base);
    CHECK(smaller >= base - 1);
  }
}

TEST_CASE("every available kernel matches the scalar scan") {
  const auto kernels = available_kernels();
  REQUIRE(!kernels.empty());
  CHECK(kernels.front() == KernelKind::Scalar);
  CHECK(std::find(kernels.begin(), kernels.end(), active_kernel()) != kernels.end());
  std::mt19937_64 rng(99);
  for (int t = 0; t < 120; ++t) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const auto inst = random_instance(rng, n, 0.05 * static_cast<double>(1 + rng() % 12));
    const auto adj = adjacency_masks(inst.graph);
    const Subset full = Subset{1} << n;
    // Odd-sized and offset ranges exercise the vector tails.
    const Subset begin = static_cast<Subset>(rng() % (full / 2 + 1));
    const Subset end = begin + static_cast<Subset>(rng() % (full - begin + 1));
    for (auto [b, e] : {std::pair{Subset{0}, full}, std::pair{begin, end}}) {
      const auto ref = scan_scalar(adj, b, e);
      for (auto k : kernels) {
        const auto got = scan_with(k, adj, b, e);
        CHECK_MESSAGE(got.best_size == ref.best_size, to_string(k));
        CHECK_MESSAGE(got.best == ref.best, to_string(k));
      }
    }
  }
}

TEST_CASE("empty scan range reports nothing") {
  const auto adj = adjacency_masks(Graph(3, {}));
  for (auto k : available_kernels()) CHECK(scan_with(k, adj, 4, 4).best_size == -1);
}
