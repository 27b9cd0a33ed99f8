#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <string_view>
#include <vector>

namespace layerkey {

/// Overwrites `size` bytes at `data` with zeros. The write cannot be elided
/// by the optimizer (backed by sodium_memzero).
void secure_erase(void* data, std::size_t size) noexcept;

template <class T>
void secure_erase(std::span<T> values) noexcept {
  secure_erase(values.data(), values.size_bytes());
}

/// Allocator that wipes every buffer before returning it to the heap. A
/// container using it erases its storage on destruction and on every
/// reallocation, including during stack unwinding.
template <class T>
struct ZeroingAllocator {
  using value_type = T;

  ZeroingAllocator() noexcept = default;
  template <class U>
  ZeroingAllocator(const ZeroingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_array_new_length();
    return static_cast<T*>(::operator new(n * sizeof(T)));
  }

  void deallocate(T* p, std::size_t n) noexcept {
    secure_erase(p, n * sizeof(T));
    ::operator delete(p);
  }

  template <class U>
  bool operator==(const ZeroingAllocator<U>&) const noexcept {
    return true;
  }
};

template <class T>
using SecureVector = std::vector<T, ZeroingAllocator<T>>;

using SecureBytes = SecureVector<std::uint8_t>;

/// Growable text buffer for secret material. No small-string optimisation,
/// so every byte ever written lives in allocator-owned storage.
class SecureString {
 public:
  SecureString() = default;
  explicit SecureString(std::string_view text) { append(text); }

  SecureString(SecureString&&) noexcept = default;
  SecureString& operator=(SecureString&&) noexcept = default;
  SecureString(const SecureString&) = delete;
  SecureString& operator=(const SecureString&) = delete;

  void append(std::string_view text) { chars_.insert(chars_.end(), text.begin(), text.end()); }
  void push_back(char c) { chars_.push_back(c); }
  void reserve(std::size_t n) { chars_.reserve(n); }
  void clear() noexcept {
    secure_erase(std::span<char>(chars_));
    chars_.clear();
  }

  [[nodiscard]] std::string_view view() const noexcept { return {chars_.data(), chars_.size()}; }
  [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept {
    return {reinterpret_cast<const std::uint8_t*>(chars_.data()), chars_.size()};
  }
  [[nodiscard]] std::size_t size() const noexcept { return chars_.size(); }
  [[nodiscard]] bool empty() const noexcept { return chars_.empty(); }

  friend bool operator==(const SecureString& a, const SecureString& b) noexcept {
    return a.view() == b.view();
  }

 private:
  SecureVector<char> chars_;
};

/// Fixed-size secret held inline; wiped on destruction and when moved from.
template <std::size_t N>
class SecretArray {
 public:
  SecretArray() noexcept { bytes_.fill(0); }
  explicit SecretArray(std::span<const std::uint8_t, N> src) noexcept {
    for (std::size_t i = 0; i < N; ++i) bytes_[i] = src[i];
  }
  ~SecretArray() { wipe(); }

  SecretArray(SecretArray&& other) noexcept : bytes_(other.bytes_) { other.wipe(); }
  SecretArray& operator=(SecretArray&& other) noexcept {
    if (this != &other) {
      bytes_ = other.bytes_;
      other.wipe();
    }
    return *this;
  }
  SecretArray(const SecretArray&) = delete;
  SecretArray& operator=(const SecretArray&) = delete;

  [[nodiscard]] std::span<const std::uint8_t, N> bytes() const noexcept { return bytes_; }
  [[nodiscard]] std::span<std::uint8_t, N> mutable_bytes() noexcept { return bytes_; }
  static constexpr std::size_t size() noexcept { return N; }

  void wipe() noexcept { secure_erase(bytes_.data(), N); }

  friend bool operator==(const SecretArray& a, const SecretArray& b) noexcept {
    return a.bytes_ == b.bytes_;
  }

 private:
  std::array<std::uint8_t, N> bytes_;
};

}  // namespace layerkey
