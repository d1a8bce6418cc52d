#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>

#include <boost/container/small_vector.hpp>

namespace ncc {

/// Message payload: a short record of 64-bit fields. The nominal wire
/// size is the sum of the minimal widths of the field values, which the
/// engine checks against the per-message bit budget. Fields are typed
/// by position; senders and receivers of a given message tag agree on
/// the layout.
class Payload {
 public:
  using Fields = boost::container::small_vector<std::uint64_t, 6>;

  Payload() = default;
  Payload(std::initializer_list<std::uint64_t> fields) : fields_(fields) {}

  static Payload of(std::initializer_list<std::uint64_t> fields) { return Payload(fields); }

  void push(std::uint64_t v) { fields_.push_back(v); }

  std::uint64_t operator[](std::size_t i) const { return fields_[i]; }
  std::size_t size() const { return fields_.size(); }
  const Fields& fields() const { return fields_; }

  /// Nominal encoded size: each field costs the bits of its value
  /// (at least one). A length header is not charged; payload layouts
  /// are fixed per message tag.
  std::uint32_t bit_size() const {
    std::uint32_t bits = 0;
    for (std::uint64_t f : fields_) {
      bits += f == 0 ? 1u : static_cast<std::uint32_t>(std::bit_width(f));
    }
    return bits;
  }

  friend bool operator==(const Payload& a, const Payload& b) { return a.fields_ == b.fields_; }
  friend bool operator<(const Payload& a, const Payload& b) {
    return std::lexicographical_compare(a.fields_.begin(), a.fields_.end(), b.fields_.begin(),
                                        b.fields_.end());
  }

 private:
  Fields fields_;
};

}  // namespace ncc
