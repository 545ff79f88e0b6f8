#include "khw/ring.hpp"

#include <algorithm>

namespace khw {

const char *ring_name(Ring r) {
  switch (r) {
    case Ring::F2: return "F2";
    case Ring::F2H: return "F2[H]";
    case Ring::F2W: return "F2[W]";
    case Ring::F2HW: return "F2[H,W]";
    case Ring::F2HlocW: return "F2[H,H^-1,W]";
  }
  return "?";
}

std::vector<Mono> RingElement::terms() const {
  std::vector<Mono> out;
  out.reserve(keys_.size());
  for (uint64_t k : keys_) out.push_back(key_mono(k));
  return out;
}

void RingElement::normalize() {
  std::sort(keys_.begin(), keys_.end());
  // xor semantics: pairs cancel
  std::vector<uint64_t> out;
  out.reserve(keys_.size());
  for (size_t i = 0; i < keys_.size();) {
    size_t j = i;
    while (j < keys_.size() && keys_[j] == keys_[i]) ++j;
    if ((j - i) % 2) out.push_back(keys_[i]);
    i = j;
  }
  keys_ = std::move(out);
}

void RingElement::add_monomial(int h, int w) {
  uint64_t k = mono_key(Mono{h, w});
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it != keys_.end() && *it == k)
    keys_.erase(it);
  else
    keys_.insert(it, k);
}

RingElement &RingElement::operator+=(const RingElement &o) {
  if (o.keys_.empty()) return *this;
  std::vector<uint64_t> merged;
  merged.reserve(keys_.size() + o.keys_.size());
  size_t i = 0, j = 0;
  while (i < keys_.size() && j < o.keys_.size()) {
    if (keys_[i] < o.keys_[j]) merged.push_back(keys_[i++]);
    else if (o.keys_[j] < keys_[i]) merged.push_back(o.keys_[j++]);
    else { ++i; ++j; }  // cancel
  }
  while (i < keys_.size()) merged.push_back(keys_[i++]);
  while (j < o.keys_.size()) merged.push_back(o.keys_[j++]);
  keys_ = std::move(merged);
  return *this;
}

RingElement operator*(const RingElement &a, const RingElement &b) {
  RingElement out;
  out.keys_.reserve(a.keys_.size() * b.keys_.size());
  for (uint64_t ka : a.keys_) {
    Mono ma = key_mono(ka);
    for (uint64_t kb : b.keys_) {
      Mono mb = key_mono(kb);
      out.keys_.push_back(mono_key(Mono{ma.h + mb.h, ma.w + mb.w}));
    }
  }
  out.normalize();
  return out;
}

bool RingElement::is_unit(Ring ring) const {
  if (keys_.size() != 1) return false;
  Mono m = key_mono(keys_[0]);
  if (m.w != 0) return false;
  if (ring == Ring::F2HlocW) return true;  // any H^a
  return m.h == 0;
}

RingElement RingElement::unit_inverse(Ring ring) const {
  assert(is_unit(ring));
  Mono m = key_mono(keys_[0]);
  return monomial(-m.h, 0);
}

RingElement RingElement::with_h0() const {
  RingElement out;
  for (uint64_t k : keys_) {
    Mono m = key_mono(k);
    if (m.h == 0) out.keys_.push_back(k);
  }
  return out;
}

RingElement RingElement::with_h1() const {
  RingElement out;
  for (uint64_t k : keys_) {
    Mono m = key_mono(k);
    out.keys_.push_back(mono_key(Mono{0, m.w}));
  }
  out.normalize();
  return out;
}

RingElement RingElement::with_w0() const {
  RingElement out;
  for (uint64_t k : keys_) {
    Mono m = key_mono(k);
    if (m.w == 0) out.keys_.push_back(k);
  }
  return out;
}

RingElement RingElement::with_w1() const {
  RingElement out;
  for (uint64_t k : keys_) {
    Mono m = key_mono(k);
    out.keys_.push_back(mono_key(Mono{m.h, 0}));
  }
  out.normalize();
  return out;
}

std::string RingElement::str() const {
  if (keys_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < keys_.size(); ++i) {
    if (i) s += " + ";
    Mono m = key_mono(keys_[i]);
    if (m.h == 0 && m.w == 0) { s += "1"; continue; }
    bool first = true;
    if (m.h != 0) {
      s += "H";
      if (m.h != 1) s += "^" + std::to_string(m.h);
      first = false;
    }
    if (m.w != 0) {
      if (!first) s += " ";
      s += "W";
      if (m.w != 1) s += "^" + std::to_string(m.w);
    }
  }
  return s;
}

}  // namespace khw
