#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>

#include "tightpack/uniformity.hpp"

namespace tightpack {

void AuxiliaryGraph::validate() const {
  if (t < 1 || t > 7) throw std::invalid_argument("AuxiliaryGraph " + name + ": need 1 <= t <= 7");
  if (edges.size() > 6) throw std::invalid_argument("AuxiliaryGraph " + name + ": more than 6 edges");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= t || j >= t || i == j) {
      throw std::invalid_argument("AuxiliaryGraph " + name + ": bad edge");
    }
    if (!seen.insert(std::minmax(i, j)).second) {
      throw std::invalid_argument("AuxiliaryGraph " + name + ": repeated edge");
    }
  }
}

const std::vector<AuxiliaryGraph>& gamma_catalog() {
  static const std::vector<AuxiliaryGraph> catalog = {
      {"gamma1", 2, {{0, 1}}},
      {"gamma2", 4, {{0, 1}, {2, 3}}},
      {"gamma3", 3, {{0, 1}, {1, 2}}},
      {"gamma4", 4, {{0, 1}, {1, 2}, {2, 3}}},
      {"gamma5", 7, {{0, 1}, {1, 3}, {3, 4}, {2, 1}, {1, 5}, {5, 6}}},
  };
  return catalog;
}

namespace {

// Edges of K_7 numbered 0..20; a graph on <= 7 vertices is a 21-bit mask.
struct PairTable {
  std::array<std::array<int, 7>, 7> id{};
  std::array<std::pair<int, int>, 21> pair{};
  PairTable() {
    int k = 0;
    for (int i = 0; i < 7; ++i) {
      for (int j = i + 1; j < 7; ++j) {
        id[i][j] = id[j][i] = k;
        pair[k++] = {i, j};
      }
    }
  }
};

const PairTable& pairs() {
  static const PairTable table;
  return table;
}

std::uint32_t canonical_mask(std::uint32_t mask, int t) {
  const PairTable& tab = pairs();
  std::array<int, 7> perm{};
  std::iota(perm.begin(), perm.begin() + t, 0);
  std::uint32_t best = UINT32_MAX;
  do {
    std::uint32_t image = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      auto [i, j] = tab.pair[std::countr_zero(m)];
      image |= std::uint32_t{1} << tab.id[perm[i]][perm[j]];
    }
    best = std::min(best, image);
  } while (std::next_permutation(perm.begin(), perm.begin() + t));
  return best;
}

}  // namespace

const std::vector<AuxiliaryGraph>& full_auxiliary_catalog() {
  static const std::vector<AuxiliaryGraph> catalog = [] {
    std::vector<AuxiliaryGraph> out;
    const PairTable& tab = pairs();
    for (int t = 1; t <= 7; ++t) {
      std::set<std::uint32_t> layer = {0};
      for (int s = 0; s <= 6; ++s) {
        for (std::uint32_t mask : layer) {
          AuxiliaryGraph g{"t" + std::to_string(t) + "_s" + std::to_string(s) + "_" + std::to_string(mask), t, {}};
          for (std::uint32_t m = mask; m != 0; m &= m - 1) g.edges.push_back(tab.pair[std::countr_zero(m)]);
          out.push_back(std::move(g));
        }
        if (s == 6) break;
        std::set<std::uint32_t> next;
        for (std::uint32_t mask : layer) {
          for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) {
              const std::uint32_t bit = std::uint32_t{1} << tab.id[i][j];
              if (!(mask & bit)) next.insert(canonical_mask(mask | bit, t));
            }
          }
        }
        layer = std::move(next);
      }
    }
    return out;
  }();
  return catalog;
}

}  // namespace tightpack
