#include "szilard/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "szilard/errors.hpp"

namespace szilard {
namespace {

double overlap_delta(int a, int b) {
  if (a != b) return 0.0;
  return a == 0 ? 1.0 : 0.5;
}

struct ModePair {
  int i;
  int j;
};

// Pairs (i <= j) that can have a nonzero integral with (k, l): one of
// |i-j|, i+j must equal one of |k-l|, k+l.
void coupled_pairs(int k, int l, int n_modes, long pair_budget, std::vector<ModePair>& out) {
  out.clear();
  const int targets[2] = {std::abs(k - l), k + l};
  for (int t : targets) {
    for (int i = 1; i + t <= n_modes; ++i) {
      const int j = i + t;
      if (long(i) * i + long(j) * j > pair_budget) break;
      out.push_back({i, j});
    }
    for (int i = 1; 2 * i <= t; ++i) {
      const int j = t - i;
      if (j > n_modes) continue;
      if (long(i) * i + long(j) * j > pair_budget) continue;
      out.push_back({i, j});
    }
  }
  std::sort(out.begin(), out.end(),
            [](ModePair a, ModePair b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](ModePair a, ModePair b) { return a.i == b.i && a.j == b.j; }),
            out.end());
}

}  // namespace

double delta_matrix_element(int i, int j, int k, int l, double length) {
  if (i < 1 || j < 1 || k < 1 || l < 1) throw InvalidParameter("mode indices start at 1");
  if ((i + j + k + l) % 2 != 0) return 0.0;
  const int dij = std::abs(i - j);
  const int dkl = std::abs(k - l);
  const double v = overlap_delta(dij, dkl) - overlap_delta(dij, k + l) -
                   overlap_delta(i + j, dkl) + overlap_delta(i + j, k + l);
  return v / length;
}

std::vector<double> noninteracting_energies(const FockBasis& basis, const ModeBasis& modes) {
  std::vector<double> e(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) e[a] = basis[a].energy(modes);
  return e;
}

CsrMatrix assemble_interaction(const FockBasis& basis, const ModeBasis& modes) {
  std::vector<CsrMatrix::Triplet> triplets;
  long budget = 0;
  for (const auto& s : basis.states()) budget = std::max(budget, s.quantum_sum());

  std::vector<ModePair> pairs;
  std::vector<int> rest;
  std::vector<int> next;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const FockState& s = basis[a];
    const auto m = s.modes();
    const int n = s.particles();
    // distinct unordered pairs of occupied modes (k <= l)
    for (int x = 0; x < n; ++x) {
      if (x > 0 && m[x] == m[x - 1]) continue;
      for (int y = x + 1; y < n; ++y) {
        if (y > x + 1 && m[y] == m[y - 1]) continue;
        const int k = m[x];
        const int l = m[y];
        const int nk = s.occupation(k);
        double annihilate;
        double c_kl;
        if (k == l) {
          annihilate = std::sqrt(double(nk) * (nk - 1));
          c_kl = 1.0;
        } else {
          annihilate = std::sqrt(double(nk) * s.occupation(l));
          c_kl = 2.0;
        }
        rest.clear();
        bool removed_k = false, removed_l = false;
        for (int p = 0; p < n; ++p) {
          if (!removed_k && m[p] == k) {
            removed_k = true;
            continue;
          }
          if (!removed_l && m[p] == l) {
            removed_l = true;
            continue;
          }
          rest.push_back(m[p]);
        }
        long rest_sum = 0;
        for (int r : rest) rest_sum += long(r) * r;
        const FockState rest_state = FockState::from_modes(rest);

        coupled_pairs(k, l, modes.n_modes, budget - rest_sum, pairs);
        for (const auto [i, j] : pairs) {
          const double integral = delta_matrix_element(i, j, k, l, modes.length);
          if (integral == 0.0) continue;
          next = rest;
          next.push_back(i);
          next.push_back(j);
          const auto b = basis.find(FockState::from_modes(next));
          if (b < 0) continue;
          double create;
          double c_ij;
          if (i == j) {
            const int ni = rest_state.occupation(i);
            create = std::sqrt(double(ni + 1) * (ni + 2));
            c_ij = 1.0;
          } else {
            create = std::sqrt(double(rest_state.occupation(i) + 1) *
                               (rest_state.occupation(j) + 1));
            c_ij = 2.0;
          }
          const double value = 0.5 * c_ij * c_kl * integral * annihilate * create;
          triplets.push_back({std::int32_t(b), std::int32_t(a), value});
        }
      }
    }
  }
  return CsrMatrix(basis.size(), std::move(triplets));
}

CsrMatrix assemble_hamiltonian(const FockBasis& basis, double g, const ModeBasis& modes) {
  const auto diag = noninteracting_energies(basis, modes);
  std::vector<CsrMatrix::Triplet> triplets;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    triplets.push_back({std::int32_t(a), std::int32_t(a), diag[a]});
  }
  if (g != 0.0) {
    const CsrMatrix v = assemble_interaction(basis, modes);
    const auto view = v.view();
    for (std::size_t r = 0; r < v.dim(); ++r) {
      for (auto p = view.row_ptr[r]; p < view.row_ptr[r + 1]; ++p) {
        triplets.push_back({std::int32_t(r), view.cols[p], g * view.values[p]});
      }
    }
  }
  return CsrMatrix(basis.size(), std::move(triplets));
}

}  // namespace szilard
