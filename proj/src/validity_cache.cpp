#include "mqplan/validity_cache.hpp"

#include <stdexcept>

namespace mqplan {

PartValidity ValidityCache::rs_state(int a, int b) const {
  const auto it = records_.find(ordered(a, b));
  return it == records_.end() ? PartValidity::kUnknown : it->second.rs;
}

PartValidity ValidityCache::os_state(int a, int b, const std::string& key_moved) const {
  if (lookup_audit) lookup_audit(key_moved);
  const auto it = records_.find(ordered(a, b));
  if (it == records_.end()) return PartValidity::kUnknown;
  const auto slot = it->second.os.find(key_moved);
  return slot == it->second.os.end() ? PartValidity::kUnknown : slot->second;
}

PartValidity ValidityCache::ro_state(int a, int b, const std::string& key_full) const {
  if (lookup_audit) lookup_audit(key_full);
  const auto it = records_.find(ordered(a, b));
  if (it == records_.end()) return PartValidity::kUnknown;
  const auto slot = it->second.ro.find(key_full);
  return slot == it->second.ro.end() ? PartValidity::kUnknown : slot->second;
}

void ValidityCache::merge(PartValidity& slot, PartValidity v) {
  if (v == PartValidity::kUnknown) throw std::logic_error("cannot reset validity to unknown");
  if (slot != PartValidity::kUnknown && slot != v)
    throw std::logic_error("validity transition valid<->invalid is not allowed");
  slot = v;
}

void ValidityCache::set_rs(int a, int b, PartValidity v) { merge(records_[ordered(a, b)].rs, v); }

void ValidityCache::set_os(int a, int b, const std::string& key_moved, PartValidity v) {
  merge(records_[ordered(a, b)].os[key_moved], v);
}

void ValidityCache::set_ro(int a, int b, const std::string& key_full, PartValidity v) {
  merge(records_[ordered(a, b)].ro[key_full], v);
}

bool ValidityCache::rs_probed(int a, int b) const {
  const auto it = records_.find(ordered(a, b));
  return it != records_.end() && it->second.rs_probed;
}

bool ValidityCache::os_probed(int a, int b, const std::string& key_moved) const {
  const auto it = records_.find(ordered(a, b));
  return it != records_.end() && it->second.os_probed.count(key_moved) > 0;
}

bool ValidityCache::ro_probed(int a, int b, const std::string& key_full) const {
  const auto it = records_.find(ordered(a, b));
  return it != records_.end() && it->second.ro_probed.count(key_full) > 0;
}

void ValidityCache::set_rs_probed(int a, int b) { records_[ordered(a, b)].rs_probed = true; }

void ValidityCache::set_os_probed(int a, int b, const std::string& key_moved) {
  records_[ordered(a, b)].os_probed.insert(key_moved);
}

void ValidityCache::set_ro_probed(int a, int b, const std::string& key_full) {
  records_[ordered(a, b)].ro_probed.insert(key_full);
}

void ValidityCache::static_only_reset() {
  for (auto& [key, rec] : records_) {
    rec.os.clear();
    rec.ro.clear();
    rec.os_probed.clear();
    rec.ro_probed.clear();
  }
}

}  // namespace mqplan
