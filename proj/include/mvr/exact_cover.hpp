#ifndef MVR_EXACT_COVER_HPP
#define MVR_EXACT_COVER_HPP

// Exact cover by backtracking (Knuth's Algorithm X on plain arrays) with an
// extra pairwise compatibility predicate on the chosen rows.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace mvr {

class ExactCover {
 public:
  /// rows[r] lists the columns row r covers.
  ExactCover(std::size_t columns, std::vector<std::vector<std::size_t>> rows)
      : columns_(columns), rows_(std::move(rows)), by_column_(columns) {
    for (auto& r : rows_) std::sort(r.begin(), r.end());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c : rows_[r]) by_column_[c].push_back(r);
  }

  /// Rows that may appear together in a solution. Defaults to always.
  void set_compatible(std::function<bool(std::size_t, std::size_t)> f) { compatible_ = std::move(f); }
  /// Stop after this many solutions (0 = no limit).
  void set_limit(std::size_t limit) { limit_ = limit; }

  /// All solutions as sorted row lists, in the order found. Rows are tried
  /// in increasing index order on the column with fewest live rows.
  std::vector<std::vector<std::size_t>> solve() {
    solutions_.clear();
    covered_.assign(columns_, 0);
    blocked_.assign(rows_.size(), 0);
    chosen_.clear();
    search();
    return solutions_;
  }

 private:
  void search() {
    if (limit_ && solutions_.size() >= limit_) return;
    std::size_t best = columns_, best_count = 0;
    for (std::size_t c = 0; c < columns_; ++c) {
      if (covered_[c]) continue;
      std::size_t live = 0;
      for (std::size_t r : by_column_[c]) live += blocked_[r] == 0;
      if (best == columns_ || live < best_count) {
        best = c;
        best_count = live;
      }
      if (live == 0) break;
    }
    if (best == columns_) {
      auto s = chosen_;
      std::sort(s.begin(), s.end());
      solutions_.push_back(std::move(s));
      return;
    }
    if (best_count == 0) return;
    for (std::size_t r : by_column_[best]) {
      if (blocked_[r]) continue;
      bool ok = true;
      if (compatible_)
        for (std::size_t o : chosen_)
          if (!compatible_(o, r)) {
            ok = false;
            break;
          }
      if (!ok) continue;
      // cover r's columns and block every row touching them
      std::vector<std::size_t> newly;
      for (std::size_t c : rows_[r]) {
        covered_[c] = 1;
        for (std::size_t o : by_column_[c])
          if (!blocked_[o]) {
            blocked_[o] = 1;
            newly.push_back(o);
          }
      }
      chosen_.push_back(r);
      search();
      chosen_.pop_back();
      for (std::size_t o : newly) blocked_[o] = 0;
      for (std::size_t c : rows_[r]) covered_[c] = 0;
      if (limit_ && solutions_.size() >= limit_) return;
    }
  }

  std::size_t columns_;
  std::vector<std::vector<std::size_t>> rows_;
  std::vector<std::vector<std::size_t>> by_column_;
  std::function<bool(std::size_t, std::size_t)> compatible_;
  std::size_t limit_ = 0;
  std::vector<char> covered_, blocked_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::size_t>> solutions_;
};

}  // namespace mvr

#endif  // MVR_EXACT_COVER_HPP
