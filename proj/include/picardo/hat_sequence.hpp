#ifndef PICARDO_HAT_SEQUENCE_HPP
#define PICARDO_HAT_SEQUENCE_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "picardo/errors.hpp"
#include "picardo/metric.hpp"

namespace picardo {

/// An eventually-constant infinite tuple (x_1, ..., x_m, t, t, ...).
///
/// Entry i (1-based) is prefix[i-1] for i <= m and the tail afterwards. The
/// stored form is canonical: trailing prefix entries that equal the tail
/// exactly are dropped, so two sequences are equal iff their members are.
template <class P = Point>
class HatSequence {
public:
  HatSequence(std::vector<P> prefix, P tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (const P& p : prefix_)
      if (!same_domain(p, tail_))
        throw MismatchedDomain("hat sequence entries live on different domains");
    canonicalize();
  }

  /// The constant sequence (u, u, ...).
  explicit HatSequence(P tail) : tail_(std::move(tail)) {}

  const std::vector<P>& prefix() const noexcept { return prefix_; }
  const P& tail() const noexcept { return tail_; }

  /// First index from which every entry equals the tail.
  std::size_t stabilization_index() const noexcept { return prefix_.size() + 1; }

  /// Entry i, 1-based.
  const P& at(std::size_t i) const {
    if (i == 0) throw InvalidArgument("hat sequences are indexed from 1");
    return i <= prefix_.size() ? prefix_[i - 1] : tail_;
  }

  friend bool operator==(const HatSequence& a, const HatSequence& b) {
    if (a.prefix_.size() != b.prefix_.size() || !same_value(a.tail_, b.tail_)) return false;
    for (std::size_t i = 0; i < a.prefix_.size(); ++i)
      if (!same_value(a.prefix_[i], b.prefix_[i])) return false;
    return true;
  }

private:
  void canonicalize() {
    while (!prefix_.empty() && same_value(prefix_.back(), tail_)) prefix_.pop_back();
  }

  std::vector<P> prefix_;
  P tail_;
};

template <class P>
HatSequence<P> hat(std::vector<P> prefix, P tail) {
  return HatSequence<P>(std::move(prefix), std::move(tail));
}

/// Builds (x_1, ..., x_{k-1}, x_k, x_k, ...) from k points.
template <class P>
HatSequence<P> hat_from(std::span<const P> points) {
  if (points.empty()) throw InvalidArgument("hat_from needs at least one point");
  return HatSequence<P>(std::vector<P>(points.begin(), points.end() - 1), points.back());
}

template <class P>
const P& element_at(const HatSequence<P>& seq, std::size_t i) {
  return seq.at(i);
}

/// The sequence hatted at index l: entries 1..l-1 of `seq`, then entry l
/// repeated.
template <class P>
HatSequence<P> rehat(const HatSequence<P>& seq, std::size_t l) {
  if (l == 0) throw InvalidArgument("rehat index must be positive");
  if (l >= seq.stabilization_index()) return seq;
  const auto& pre = seq.prefix();
  return HatSequence<P>(std::vector<P>(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(l - 1)),
                        pre[l - 1]);
}

template <class P>
std::string describe(const HatSequence<P>& seq) {
  std::string s = "(";
  for (const P& p : seq.prefix()) s += describe(p) + ", ";
  return s + describe(seq.tail()) + ", ...)";
}

} // namespace picardo

#endif // PICARDO_HAT_SEQUENCE_HPP
