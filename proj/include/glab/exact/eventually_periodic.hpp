#pragma once

#include "glab/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace glab {

/// An infinite sequence prefix . period^omega held in canonical form:
/// the period is primitive and the prefix is as short as possible, so two
/// sequences are equal iff their representations are equal.
template <class T>
class EventuallyPeriodic {
 public:
  EventuallyPeriodic() = default;

  EventuallyPeriodic(std::vector<T> prefix, std::vector<T> period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw PreconditionError("eventually periodic sequence needs a non-empty period");
    canonicalize();
  }

  static EventuallyPeriodic constant(T value) { return EventuallyPeriodic({}, {std::move(value)}); }

  const std::vector<T>& prefix() const { return prefix_; }
  const std::vector<T>& period() const { return period_; }

  const T& at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }
  const T& front() const { return at(0); }

  /// First n terms.
  std::vector<T> take(std::size_t n) const {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }

  /// The sequence with its first n terms removed.
  EventuallyPeriodic drop(std::size_t n) const {
    EventuallyPeriodic out = *this;
    const std::size_t from_prefix = std::min(n, out.prefix_.size());
    out.prefix_.erase(out.prefix_.begin(), out.prefix_.begin() + static_cast<std::ptrdiff_t>(from_prefix));
    const std::size_t rest = (n - from_prefix) % out.period_.size();
    std::rotate(out.period_.begin(), out.period_.begin() + static_cast<std::ptrdiff_t>(rest), out.period_.end());
    return out;
  }
  EventuallyPeriodic tail() const { return drop(1); }

  EventuallyPeriodic cons(T head) const {
    std::vector<T> p;
    p.reserve(prefix_.size() + 1);
    p.push_back(std::move(head));
    p.insert(p.end(), prefix_.begin(), prefix_.end());
    return EventuallyPeriodic(std::move(p), period_);
  }

  /// Index from which the sequence is purely periodic.
  std::size_t preperiod() const { return prefix_.size(); }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<U> p, q;
    for (const auto& v : prefix_) p.push_back(f(v));
    for (const auto& v : period_) q.push_back(f(v));
    return EventuallyPeriodic<U>(std::move(p), std::move(q));
  }

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;
  friend auto operator<=>(const EventuallyPeriodic& a, const EventuallyPeriodic& b) {
    if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
    return a.period_ <=> b.period_;
  }

 private:
  void canonicalize() {
    const std::size_t n = period_.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0) continue;
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i) ok = period_[i] == period_[i - p];
      if (ok) {
        period_.resize(p);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
      prefix_.pop_back();
    }
  }

  std::vector<T> prefix_;
  std::vector<T> period_;
};

/// Length of the longest common prefix of two eventually periodic sequences,
/// or npos when they are equal.
template <class T>
std::size_t common_prefix_length(const EventuallyPeriodic<T>& a, const EventuallyPeriodic<T>& b) {
  if (a == b) return static_cast<std::size_t>(-1);
  const std::size_t horizon = std::max(a.preperiod(), b.preperiod()) +
                              std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < horizon; ++i)
    if (!(a.at(i) == b.at(i))) return i;
  return horizon;  // unreachable for canonical inputs
}

}  // namespace glab
