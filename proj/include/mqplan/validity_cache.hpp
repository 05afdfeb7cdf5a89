#pragma once

// Per-edge validity knowledge, split by collision part. The rs part is a
// plain tri-state; the os and ro parts are keyed by the canonical
// parametrization strings, so knowledge gathered under one parametrization is
// consulted again only when the same key is active. Transitions are monotone:
// unknown may become valid or invalid, and never changes afterwards.

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace mqplan {

enum class PartValidity : std::uint8_t { kUnknown, kValid, kInvalid };

struct EdgeRecord {
  PartValidity rs{PartValidity::kUnknown};
  std::unordered_map<std::string, PartValidity> os;  // keyed by key_moved
  std::unordered_map<std::string, PartValidity> ro;  // keyed by key_full
  // sparse-probe memos: the midpoint is known free for the part, so a later
  // effort-ordered search can skip re-probing; never implies full validity
  bool rs_probed{false};
  std::unordered_set<std::string> os_probed;
  std::unordered_set<std::string> ro_probed;
};

class ValidityCache {
 public:
  /// Endpoints are unordered; records are stored under (min, max).
  [[nodiscard]] PartValidity rs_state(int a, int b) const;
  [[nodiscard]] PartValidity os_state(int a, int b, const std::string& key_moved) const;
  [[nodiscard]] PartValidity ro_state(int a, int b, const std::string& key_full) const;

  /// Monotone setters; throw std::logic_error on valid<->invalid flips.
  void set_rs(int a, int b, PartValidity v);
  void set_os(int a, int b, const std::string& key_moved, PartValidity v);
  void set_ro(int a, int b, const std::string& key_full, PartValidity v);

  /// True while no part of the edge is known invalid under the given keys.
  [[nodiscard]] bool usable(int a, int b, const std::string& key_full,
                            const std::string& key_moved) const {
    return rs_state(a, b) != PartValidity::kInvalid &&
           os_state(a, b, key_moved) != PartValidity::kInvalid &&
           ro_state(a, b, key_full) != PartValidity::kInvalid;
  }

  /// Sparse-probe memos; a set memo means the midpoint check came back clean.
  [[nodiscard]] bool rs_probed(int a, int b) const;
  [[nodiscard]] bool os_probed(int a, int b, const std::string& key_moved) const;
  [[nodiscard]] bool ro_probed(int a, int b, const std::string& key_full) const;
  void set_rs_probed(int a, int b);
  void set_os_probed(int a, int b, const std::string& key_moved);
  void set_ro_probed(int a, int b, const std::string& key_full);

  [[nodiscard]] std::size_t edge_count() const noexcept { return records_.size(); }

  /// Drops all parametrization-dependent knowledge, keeps the rs tri-states.
  void static_only_reset();

  void clear() { records_.clear(); }

  /// Test hook: observes the key used by every os/ro lookup.
  std::function<void(const std::string&)> lookup_audit;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<int, int>& k) const noexcept {
      return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.first) << 32) ^
                                        static_cast<std::uint32_t>(k.second));
    }
  };

  [[nodiscard]] static std::pair<int, int> ordered(int a, int b) noexcept {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }

  static void merge(PartValidity& slot, PartValidity v);

  std::unordered_map<std::pair<int, int>, EdgeRecord, KeyHash> records_;
};

}  // namespace mqplan
