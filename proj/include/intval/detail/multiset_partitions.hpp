#pragma once

// Enumerate the partitions of a multiset, given as a multiplicity vector, into
// nonempty sub-multisets. Each partition is produced exactly once: every part
// contains the smallest index still remaining, and parts sharing that smallest
// index appear in non-increasing lexicographic order.

#include <cstddef>
#include <functional>
#include <vector>

namespace intval::detail {

using Counts = std::vector<std::size_t>;

class MultisetPartitions {
 public:
  /// accept_part(part) prunes parts that can never be used; visit(parts) sees
  /// each complete partition in generation order.
  MultisetPartitions(std::function<bool(const Counts&)> accept_part,
                     std::function<void(const std::vector<Counts>&)> visit)
      : accept_(std::move(accept_part)), visit_(std::move(visit)) {}

  void run(const Counts& multiset) {
    parts_.clear();
    recurse(multiset, nullptr);
  }

 private:
  static std::size_t first_nonzero(const Counts& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) return i;
    return c.size();
  }

  void recurse(const Counts& remaining, const Counts* previous) {
    const std::size_t lead = first_nonzero(remaining);
    if (lead == remaining.size()) {
      visit_(parts_);
      return;
    }
    const Counts* bound = (previous && first_nonzero(*previous) == lead) ? previous : nullptr;
    Counts part(remaining.size(), 0);
    // Enumerate parts in decreasing lexicographic order (index 0 most
    // significant) with part[lead] >= 1 and part[i] = 0 for i < lead.
    enumerate(remaining, lead, lead, part, bound, true);
  }

  // Fill positions from `pos` onward. `tight` tracks equality with `bound` so
  // far.
  void enumerate(const Counts& remaining, std::size_t lead, std::size_t pos, Counts& part, const Counts* bound,
                 bool tight) {
    if (pos == remaining.size()) {
      if (part[lead] == 0) return;
      if (!accept_(part)) return;
      Counts rest = remaining;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= part[i];
      const Counts chosen = part;
      parts_.push_back(chosen);
      recurse(rest, &chosen);
      parts_.pop_back();
      return;
    }
    std::size_t hi = remaining[pos];
    if (bound && tight && (*bound)[pos] < hi) hi = (*bound)[pos];
    const std::size_t lo = pos == lead ? 1 : 0;
    for (std::size_t v = hi + 1; v-- > lo;) {
      part[pos] = v;
      enumerate(remaining, lead, pos + 1, part, bound, tight && bound && v == (*bound)[pos]);
    }
    part[pos] = 0;
  }

  std::function<bool(const Counts&)> accept_;
  std::function<void(const std::vector<Counts>&)> visit_;
  std::vector<Counts> parts_;
};

}  // namespace intval::detail
