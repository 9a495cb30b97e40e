#pragma once

#include <utility>
#include <vector>

namespace ctl {

template <class Fn>
bool for_each_subspace(const Field& F, int m, Fn&& fn) {
  const int p = F.p();
  for (int r = 0; r <= m; ++r) {
    // pivot rows, strictly increasing
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    while (true) {
      std::vector<bool> is_pivot(m, false);
      for (int x : piv) is_pivot[x] = true;
      std::vector<std::pair<int, int>> free_slots;  // (row, column)
      for (int c = 0; c < r; ++c)
        for (int row = piv[c] + 1; row < m; ++row)
          if (!is_pivot[row]) free_slots.emplace_back(row, c);

      std::vector<int> digits(free_slots.size(), 0);
      while (true) {
        Matrix basis(m, r);
        for (int c = 0; c < r; ++c) basis(piv[c], c) = 1;
        for (size_t k = 0; k < free_slots.size(); ++k)
          basis(free_slots[k].first, free_slots[k].second) = digits[k];
        if (!fn(static_cast<const Matrix&>(basis))) return false;

        size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
        if (k == digits.size()) break;
      }

      int i = r - 1;
      while (i >= 0 && piv[i] == m - r + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace ctl
