#include "exotic/coset_enum.hpp"

#include <array>
#include <chrono>
#include <deque>

namespace exotic {

CosetTable::CosetTable(std::size_t generators, std::vector<std::int32_t> entries,
                       std::vector<bool> live)
    : columns_(2 * generators), entries_(std::move(entries)), live_(std::move(live)) {}

std::size_t CosetTable::live_count() const {
  std::size_t n = 0;
  for (bool b : live_) n += b ? 1 : 0;
  return n;
}

bool CosetTable::complete() const {
  for (std::size_t c = 0; c < size(); ++c) {
    if (!live_[c]) continue;
    for (std::size_t x = 0; x < columns_; ++x)
      if (entry(c, x) < 0) return false;
  }
  return true;
}

bool CosetTable::is_partial_permutation() const {
  for (std::size_t c = 0; c < size(); ++c) {
    if (!live_[c]) continue;
    for (std::size_t x = 0; x < columns_; ++x) {
      const std::int32_t d = entry(c, x);
      if (d < 0) continue;
      if (static_cast<std::size_t>(d) >= size() || !live_[d]) return false;
      if (entry(d, x ^ 1U) != static_cast<std::int32_t>(c)) return false;
    }
  }
  return true;
}

std::optional<std::size_t> CosetTable::trace(std::size_t coset, const Word& w) const {
  std::size_t c = coset;
  for (auto letter : w.letters()) {
    if (letter >= columns_) return std::nullopt;
    const std::int32_t d = entry(c, letter);
    if (d < 0) return std::nullopt;
    c = static_cast<std::size_t>(d);
  }
  return c;
}

namespace {

using Coset = std::int32_t;
constexpr Coset kUndef = -1;

class Enumerator {
 public:
  Enumerator(const Presentation& p, const EnumerationOptions& opt)
      : cols_(2 * p.rank()), limit_(opt.limit == 0 ? 1 : opt.limit), opt_(opt) {
    for (const auto& r : p.relators()) {
      auto letters = r.cyclically_reduced().letters();
      if (!letters.empty()) rels_.push_back(std::move(letters));
    }
    if (opt.strategy == Strategy::felsch) {
      by_first_.resize(cols_);
      for (const auto& r : rels_) {
        std::vector<std::uint32_t> inv(r.rbegin(), r.rend());
        for (auto& x : inv) x ^= 1U;
        for (const auto* w : std::array<const std::vector<std::uint32_t>*, 2>{&r, &inv})
          for (std::size_t s = 0; s < w->size(); ++s) {
            std::vector<std::uint32_t> rot(w->begin() + static_cast<std::ptrdiff_t>(s), w->end());
            rot.insert(rot.end(), w->begin(), w->begin() + static_cast<std::ptrdiff_t>(s));
            auto& bucket = by_first_[rot.front()];
            bool dup = false;
            for (const auto& existing : bucket) dup = dup || existing == rot;
            if (!dup) bucket.push_back(std::move(rot));
          }
      }
    }
    new_coset();
  }

  Enumeration run() {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = opt_.strategy == Strategy::hlt ? run_hlt() : run_felsch();
    if (ok) compact();
    Enumeration e;
    e.outcome.stats = stats_;
    e.outcome.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok) {
      e.outcome.result = EnumerationOutcome::Result::completed;
      e.outcome.index = static_cast<std::size_t>(live_);
    } else {
      e.outcome.result = EnumerationOutcome::Result::limit_exceeded;
      e.outcome.cosets_used = size();
    }
    std::vector<bool> live(size());
    for (std::size_t c = 0; c < size(); ++c) live[c] = parent_[c] == static_cast<Coset>(c);
    e.table = CosetTable(cols_ / 2, table_, std::move(live));
    return e;
  }

 private:
  [[nodiscard]] std::size_t size() const { return parent_.size(); }
  Coset& at(Coset c, std::uint32_t x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  [[nodiscard]] bool alive(Coset c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  Coset new_coset() {
    const auto c = static_cast<Coset>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, kUndef);
    ++live_;
    if (static_cast<std::uint64_t>(live_) > stats_.max_live) stats_.max_live = live_;
    return c;
  }

  /// Defines c^x as a fresh coset; false when the table is full.
  bool define(Coset c, std::uint32_t x) {
    if (size() >= limit_) return false;
    const Coset d = new_coset();
    at(c, x) = d;
    at(d, x ^ 1U) = c;
    ++stats_.definitions;
    if (felsch()) deductions_.emplace_back(c, x);
    return true;
  }

  Coset rep(Coset c) {
    Coset root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      const Coset next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  void merge(Coset a, Coset b) {
    const Coset ra = rep(a);
    const Coset rb = rep(b);
    if (ra == rb) return;
    const Coset lo = std::min(ra, rb);
    const Coset hi = std::max(ra, rb);
    parent_[hi] = lo;
    queue_.push_back(hi);
    --live_;
    ++stats_.coincidences;
  }

  void coincidence(Coset a, Coset b) {
    merge(a, b);
    while (!queue_.empty()) {
      const Coset g = queue_.front();
      queue_.pop_front();
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const Coset d = at(g, x);
        if (d == kUndef) continue;
        at(g, x) = kUndef;
        if (at(d, x ^ 1U) == g) at(d, x ^ 1U) = kUndef;
        const Coset mu = rep(g);
        const Coset nu = rep(d);
        if (at(mu, x) != kUndef) {
          merge(nu, at(mu, x));
        } else if (at(nu, x ^ 1U) != kUndef) {
          merge(mu, at(nu, x ^ 1U));
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1U) = mu;
          if (felsch()) deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  enum class Scan { done, no_space };

  /// Traces w^{-1}-closure of `w` at `c`; fills gaps when `fill` is set.
  Scan scan(Coset c, const std::vector<std::uint32_t>& w, bool fill) {
    Coset f = c;
    Coset b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // exclusive upper end
    for (;;) {
      while (i < j && at(f, w[i]) != kUndef) f = at(f, w[i++]);
      if (i == j) {
        if (f != c) coincidence(f, c);
        return Scan::done;
      }
      while (j > i && at(b, w[j - 1] ^ 1U) != kUndef) b = at(b, w[--j] ^ 1U);
      if (j == i) {
        coincidence(f, b);
        return Scan::done;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1U) = f;
        if (felsch()) deductions_.emplace_back(f, w[i]);
        return Scan::done;
      }
      if (!fill) return Scan::done;
      if (!define(f, w[i])) return Scan::no_space;
    }
  }

  /// Drops dead slots and renumbers; returns the new id of the first live
  /// coset at or after `cursor`.
  std::size_t compact(std::size_t cursor = 0) {
    std::vector<Coset> map(size(), kUndef);
    Coset next = 0;
    std::size_t new_cursor = 0;
    bool cursor_set = false;
    for (std::size_t c = 0; c < size(); ++c) {
      if (!cursor_set && c >= cursor) {
        new_cursor = static_cast<std::size_t>(next);
        cursor_set = true;
      }
      if (parent_[c] == static_cast<Coset>(c)) map[c] = next++;
    }
    if (!cursor_set) new_cursor = static_cast<std::size_t>(next);
    std::vector<Coset> table(static_cast<std::size_t>(next) * cols_, kUndef);
    for (std::size_t c = 0; c < size(); ++c) {
      if (map[c] == kUndef) continue;
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const Coset d = table_[c * cols_ + x];
        table[static_cast<std::size_t>(map[c]) * cols_ + x] = d == kUndef ? kUndef : map[d];
      }
    }
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    for (Coset c = 0; c < next; ++c) parent_[c] = c;
    deductions_.clear();
    return new_cursor;
  }

  /// Scans every live coset under every relator without defining.
  void lookahead() {
    ++stats_.lookaheads;
    for (std::size_t c = 0; c < size(); ++c)
      for (const auto& w : rels_) {
        if (!alive(static_cast<Coset>(c))) break;
        scan(static_cast<Coset>(c), w, false);
      }
  }

  bool run_hlt() {
    // Coincidences can clear entries of rows already passed; sweep again
    // until no gaps remain.
    while (!table_complete())
      if (!hlt_sweep()) return false;
    return true;
  }

  bool hlt_sweep() {
    std::size_t a = 0;
    while (a < size()) {
      const auto c = static_cast<Coset>(a);
      if (!alive(c)) {
        ++a;
        continue;
      }
      bool stalled = false;
      for (const auto& w : rels_) {
        if (scan(c, w, true) == Scan::no_space) {
          stalled = true;
          break;
        }
        if (!alive(c)) break;
      }
      if (!stalled && alive(c)) {
        for (std::uint32_t x = 0; x < cols_ && !stalled; ++x)
          if (at(c, x) == kUndef && !define(c, x)) stalled = true;
      }
      if (stalled) {
        if (opt_.lookahead) lookahead();
        const std::size_t before = size();
        a = compact(a);
        if (size() == before) return false;
        continue;
      }
      ++a;
    }
    return true;
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& w : by_first_[x]) {
        scan(c, w, false);
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      const Coset d = at(c, x);
      if (d == kUndef) continue;
      for (const auto& w : by_first_[x ^ 1U]) {
        scan(d, w, false);
        if (!alive(d)) break;
      }
    }
  }

  bool run_felsch() {
    // Scan every relator at coset 0 once; later scans are deduction-driven.
    for (const auto& w : rels_) scan(0, w, false);
    process_deductions();
    std::size_t a = 0;
    for (;;) {
      while (a < size()) {
        const auto c = static_cast<Coset>(a);
        std::uint32_t x = 0;
        if (alive(c))
          while (x < cols_ && at(c, x) != kUndef) ++x;
        if (!alive(c) || x == cols_) {
          ++a;
          continue;
        }
        if (!define(c, x)) {
          const std::size_t before = size();
          a = compact(a);
          if (size() == before) return false;
          continue;
        }
        process_deductions();
      }
      if (table_complete()) return true;
      a = 0;
    }
  }

  bool table_complete() {
    for (std::size_t c = 0; c < size(); ++c) {
      if (!alive(static_cast<Coset>(c))) continue;
      for (std::uint32_t x = 0; x < cols_; ++x)
        if (table_[c * cols_ + x] == kUndef) return false;
    }
    return true;
  }

  [[nodiscard]] bool felsch() const { return opt_.strategy == Strategy::felsch; }

  std::uint32_t cols_;
  std::size_t limit_;
  EnumerationOptions opt_;
  std::vector<std::vector<std::uint32_t>> rels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> by_first_;
  std::vector<Coset> table_;
  std::vector<Coset> parent_;
  std::deque<Coset> queue_;
  std::vector<std::pair<Coset, std::uint32_t>> deductions_;
  Coset live_ = 0;
  EnumerationStats stats_;
};

}  // namespace

Enumeration enumerate_table(const Presentation& p, const EnumerationOptions& options) {
  return Enumerator(p, options).run();
}

EnumerationOutcome enumerate(const Presentation& p, const EnumerationOptions& options) {
  return enumerate_table(p, options).outcome;
}

}  // namespace exotic
